#include "simon/green.hpp"

#include <stdexcept>

#include "simon/errors.hpp"

namespace simon::green {

using stephen::reads_from_root;

Classification is_right_unit(const Approximation& sg1, const Word& w) {
  Classification c;
  c.cls = GreenClass::R1;
  c.cert = reads_from_root(sg1, w);
  return c;
}

Classification is_left_unit(const Approximation& sg1, const Word& w) {
  Classification c;
  c.cls = GreenClass::L1;
  c.cert = reads_from_root(sg1, words::invert(w));
  return c;
}

Classification is_unit(const Approximation& sg1, const Word& w) {
  Classification c;
  c.cls = GreenClass::H1;
  auto r = reads_from_root(sg1, w);
  auto l = reads_from_root(sg1, words::invert(w));
  c.cert.rounds = sg1.rounds;
  if (r.yes() && l.yes()) {
    c.cert.verdict = Verdict::Yes;
    c.cert.vertex = r.vertex;
  }
  return c;
}

Classification in_D1(const Approximation& sg1, const Word& w) {
  Classification c;
  c.cls = GreenClass::D1;
  c.cert.rounds = sg1.rounds;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    Word v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    if (sg1.graph.read(sg1.graph.root(), words::invert(u)) &&
        sg1.graph.read(sg1.graph.root(), v)) {
      c.cert.verdict = Verdict::Yes;
      c.split = i;
      break;
    }
  }
  // Cross-check against the path-through-root criterion; the two must
  // certify together on the same approximation.
  bool through = reads_through_root(sg1, w);
  if (through != c.yes()) {
    throw std::logic_error("in_D1: split search and through-root scan disagree");
  }
  return c;
}

bool reads_through_root(const Approximation& sg1, const Word& w) {
  const auto& g = sg1.graph;
  for (std::uint32_t s = 0; s < g.vertex_count(); ++s) {
    std::optional<std::uint32_t> cur = s;
    bool through = (s == g.root());
    bool ok = true;
    for (const auto& letter : w) {
      cur = g.step(*cur, letter);
      if (!cur) {
        ok = false;
        break;
      }
      if (*cur == g.root()) through = true;
    }
    if (ok && through) return true;
  }
  return false;
}

namespace {

Approximation sg1_of(const Presentation& p, int rounds, const Limits& limits) {
  return stephen::approximate(p, {}, rounds, limits);
}

}  // namespace

Classification is_right_unit(const Presentation& p, const Word& w, int rounds,
                             const Limits& limits) {
  return is_right_unit(sg1_of(p, rounds, limits), w);
}
Classification is_left_unit(const Presentation& p, const Word& w, int rounds,
                            const Limits& limits) {
  return is_left_unit(sg1_of(p, rounds, limits), w);
}
Classification is_unit(const Presentation& p, const Word& w, int rounds,
                       const Limits& limits) {
  return is_unit(sg1_of(p, rounds, limits), w);
}
Classification in_D1(const Presentation& p, const Word& w, int rounds,
                     const Limits& limits) {
  return in_D1(sg1_of(p, rounds, limits), w);
}

DichotomyReport generator_dichotomy(const Presentation& p, std::uint32_t gen,
                                    int rounds, const Limits& limits) {
  if (gen >= p.alphabet.size()) {
    throw InvalidArgument("generator_dichotomy: unknown generator");
  }
  auto sg1 = sg1_of(p, rounds, limits);
  Word w{{gen, false}};
  DichotomyReport rep;
  rep.right = is_right_unit(sg1, w);
  rep.left = is_left_unit(sg1, w);
  rep.d1 = in_D1(sg1, w);
  rep.consistent = !rep.d1.yes() || rep.right.yes() || rep.left.yes();
  return rep;
}

}  // namespace simon::green
