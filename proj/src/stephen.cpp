#include "simon/stephen.hpp"

#include <string>
#include <utility>
#include <vector>

#include "simon/errors.hpp"

namespace simon::stephen {

namespace {

// One expansion round. Attachment sites and skip checks are decided on the
// round-start graph, so the result does not depend on attachment order.
void expand_round(InverseWordGraph& g, const Presentation& p, std::size_t vertex_cap) {
  const std::uint32_t start_count = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<std::pair<std::uint32_t, const Word*>> pending;
  for (std::uint32_t v = 0; v < start_count; ++v) {
    for (const auto& r : p.relators) {
      if (!g.cycle_closed(v, r)) pending.emplace_back(v, &r);
    }
  }
  for (auto [v, r] : pending) {
    if (g.vertex_count() + r->size() > vertex_cap) {
      throw ResourceError("expansion exceeded vertex cap of " +
                          std::to_string(vertex_cap));
    }
    std::uint32_t cur = v;
    for (std::size_t i = 0; i < r->size(); ++i) {
      const auto s = (*r)[i];
      std::uint32_t next = (i + 1 == r->size()) ? v : g.add_vertex();
      if (!s.inv) {
        g.add_edge(cur, s.gen, next);
      } else {
        g.add_edge(next, s.gen, cur);
      }
      cur = next;
    }
  }
  std::uint32_t root = g.root();
  auto terminal = g.terminal();
  auto map = g.fold();
  g.set_root(map[root]);
  if (terminal) g.set_terminal(map[*terminal]);
}

void check_word(const Presentation& p, const Word& w) {
  for (const auto& s : w) {
    if (s.gen >= p.alphabet.size()) {
      throw InvalidArgument("word uses a letter outside the presentation alphabet");
    }
  }
}

}  // namespace

Approximation approximate(const Presentation& p, const Word& w, int rounds,
                          const Limits& limits) {
  if (rounds < 0) throw InvalidArgument("rounds must be nonnegative");
  check_word(p, w);
  Approximation a;
  a.pres = p;
  a.word = w;
  a.graph = InverseWordGraph::munn_tree(w, limits.vertex_cap);
  a.rounds = 0;
  for (int i = 0; i < rounds; ++i) {
    expand_round(a.graph, p, limits.vertex_cap);
    ++a.rounds;
  }
  return a;
}

Approximation refine(Approximation a, int extra, const Limits& limits) {
  if (extra < 0) throw InvalidArgument("extra rounds must be nonnegative");
  for (int i = 0; i < extra; ++i) {
    expand_round(a.graph, a.pres, limits.vertex_cap);
    ++a.rounds;
  }
  return a;
}

Certificate reads_from_root(const Approximation& a, const Word& w) {
  Certificate c;
  c.rounds = a.rounds;
  auto end = a.graph.read(a.graph.root(), w);
  if (end) {
    c.verdict = Verdict::Yes;
    c.vertex = *end;
  }
  return c;
}

Certificate equals_in_monoid(const Presentation& p, const Word& u, const Word& v,
                             int rounds, const Limits& limits) {
  check_word(p, u);
  check_word(p, v);
  Certificate c;
  c.rounds = rounds;
  auto au = approximate(p, u, rounds, limits);
  auto end_v = au.graph.read(au.graph.root(), v);
  if (!end_v || *end_v != *au.graph.terminal()) return c;
  auto av = approximate(p, v, rounds, limits);
  auto end_u = av.graph.read(av.graph.root(), u);
  if (!end_u || *end_u != *av.graph.terminal()) return c;
  c.verdict = Verdict::Yes;
  return c;
}

Certificate is_idempotent(const Presentation& p, const Word& w, int rounds,
                          const Limits& limits) {
  Certificate c;
  c.rounds = rounds;
  auto a = approximate(p, w, rounds, limits);
  if (a.graph.terminal() && *a.graph.terminal() == a.graph.root()) {
    c.verdict = Verdict::Yes;
    c.vertex = a.graph.root();
  }
  return c;
}

}  // namespace simon::stephen
