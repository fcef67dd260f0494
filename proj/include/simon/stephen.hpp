#ifndef SIMON_STEPHEN_HPP
#define SIMON_STEPHEN_HPP

#include <cstdint>
#include <optional>

#include "simon/igraph.hpp"
#include "simon/words.hpp"

namespace simon::stephen {

using igraph::InverseWordGraph;
using words::Presentation;
using words::Word;

enum class Verdict { Yes, Unknown };

// A semidecision answer. Yes verdicts are persistent under larger budgets;
// Unknown carries no semantic claim.
struct Certificate {
  Verdict verdict = Verdict::Unknown;
  int rounds = 0;
  std::optional<std::uint32_t> vertex;  // endpoint witness where applicable

  bool yes() const { return verdict == Verdict::Yes; }
};

struct Limits {
  std::size_t vertex_cap = InverseWordGraph::kDefaultCap;
};

// A finite snapshot of the Schutzenberger graph of `word`: root is the
// vertex of w w', terminal the vertex of w. The graph is folded after
// every expansion round, and after round k every relator closes at every
// vertex that existed when round k started.
struct Approximation {
  Presentation pres;
  Word word;
  InverseWordGraph graph;
  int rounds = 0;
};

// Runs Stephen's procedure for `rounds` full rounds starting from the Munn
// tree of w. Each round attaches, at every vertex present at round start,
// one cycle per relator that does not already close there, then folds.
Approximation approximate(const Presentation& p, const Word& w, int rounds,
                          const Limits& limits = {});

// Continues an approximation for `extra` further rounds; equivalent to
// approximate(p, w, a.rounds + extra) up to isomorphism respecting root
// and terminal.
Approximation refine(Approximation a, int extra, const Limits& limits = {});

// Yes iff u reads root->terminal in the approximation of the graph of v
// and vice versa.
Certificate equals_in_monoid(const Presentation& p, const Word& u, const Word& v,
                             int rounds, const Limits& limits = {});

// Yes iff root and terminal coincide in the approximation of the graph of
// w, i.e. w = w w' is certified.
Certificate is_idempotent(const Presentation& p, const Word& w, int rounds,
                          const Limits& limits = {});

// Yes(endpoint) iff w is readable from the root of a.graph.
Certificate reads_from_root(const Approximation& a, const Word& w);

}  // namespace simon::stephen

#endif
