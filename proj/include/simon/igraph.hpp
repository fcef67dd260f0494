#ifndef SIMON_IGRAPH_HPP
#define SIMON_IGRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simon/words.hpp"

namespace simon::igraph {

using words::Alphabet;
using words::SignedLetter;
using words::Word;

struct LabeledEdge {
  std::uint32_t src;
  std::uint32_t gen;
  std::uint32_t dst;

  friend bool operator==(const LabeledEdge& a, const LabeledEdge& b) {
    return a.src == b.src && a.gen == b.gen && a.dst == b.dst;
  }
  friend bool operator<(const LabeledEdge& a, const LabeledEdge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.dst < b.dst;
  }
};

// Rooted edge-labeled graph over positive generator letters. An edge
// (u, a, v) is traversable forward as a and backward as a'. While edges
// are being added the graph may violate (co)determinism; fold() restores
// both and compacts vertex ids. Query operations require a folded graph.
class InverseWordGraph {
 public:
  InverseWordGraph() = default;

  static InverseWordGraph single_vertex();
  static InverseWordGraph munn_tree(const Word& w, std::size_t vertex_cap = kDefaultCap);

  std::uint32_t add_vertex();
  void add_edge(std::uint32_t u, std::uint32_t gen, std::uint32_t v);

  // Merges vertices until deterministic and codeterministic, then
  // renumbers classes densely by their earliest-created member.
  // Returns the map from pre-fold ids to new ids.
  std::vector<std::uint32_t> fold();
  bool folded() const { return folded_; }

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const;

  std::uint32_t root() const { return root_; }
  void set_root(std::uint32_t v) { root_ = v; }
  const std::optional<std::uint32_t>& terminal() const { return terminal_; }
  void set_terminal(std::optional<std::uint32_t> v) { terminal_ = v; }

  // Unique successor reading the positive letter `gen` (determinism),
  // resp. predecessor reading its inverse (codeterminism).
  std::optional<std::uint32_t> forward(std::uint32_t v, std::uint32_t gen) const;
  std::optional<std::uint32_t> backward(std::uint32_t v, std::uint32_t gen) const;
  std::optional<std::uint32_t> step(std::uint32_t v, SignedLetter s) const;
  std::optional<std::uint32_t> read(std::uint32_t from, const Word& w) const;

  // True when r reads from v back to v.
  bool cycle_closed(std::uint32_t v, const Word& r) const;

  // Sorted (gen, neighbor) lists; valid once folded.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& out(std::uint32_t v) const {
    return out_[v];
  }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& in(std::uint32_t v) const {
    return in_[v];
  }

  std::vector<LabeledEdge> edges() const;  // sorted
  bool connected_from(std::uint32_t start) const;

  static constexpr std::size_t kDefaultCap = 4u * 1000 * 1000;

 private:
  void ensure_folded(const char* op) const;

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> in_;
  std::uint32_t root_ = 0;
  std::optional<std::uint32_t> terminal_;
  bool folded_ = true;  // empty/fresh graphs are trivially folded
};

// Vertex map of a label- and incidence-preserving graph morphism.
struct GraphMorphism {
  std::vector<std::uint32_t> map;  // domain vertex -> codomain vertex
  bool root_preserving = false;
};

struct MorphismFailure {
  std::uint32_t src_vertex = 0;
  std::uint32_t gen = 0;
  bool out = true;        // direction of the unmappable edge
  bool inconsistent = false;  // image exists but clashes with earlier choice
};

struct MorphismResult {
  std::optional<GraphMorphism> morphism;
  MorphismFailure failure;  // meaningful when !morphism
};

// The unique morphism src -> dst extending anchor_src -> anchor_dst, if it
// exists. src must be connected. Both graphs must be folded.
MorphismResult find_morphism(const InverseWordGraph& src, const InverseWordGraph& dst,
                             std::uint32_t anchor_src, std::uint32_t anchor_dst);

// All label-preserving automorphisms of a finite folded connected graph
// (the root is not required to be fixed). Every non-identity element is
// checked to be fixed-point-free.
std::vector<GraphMorphism> automorphisms(const InverseWordGraph& g);

// Breadth-first canonical encoding from base. Encodings of two folded
// graphs over the same alphabet are equal iff the graphs are isomorphic
// by an isomorphism taking base to base (and terminal to terminal when
// set). `label_rank` optionally reorders generator ids (name order).
std::string canonical_form(const InverseWordGraph& g, std::uint32_t base,
                           const std::vector<std::uint32_t>* label_rank = nullptr);

// Induced subgraph on the vertices at undirected distance <= radius from
// `centers`, with vertices renumbered in ascending base-id order.
struct Ball {
  InverseWordGraph graph;
  std::vector<std::uint32_t> to_base;                       // ball id -> base id
  std::unordered_map<std::uint32_t, std::uint32_t> to_ball;  // base id -> ball id
};
Ball ball(const InverseWordGraph& g, const std::vector<std::uint32_t>& centers,
          std::size_t radius);

// Serialization. Vertices are renumbered canonically (breadth-first from
// the root in label-name order) so byte output is stable across
// isomorphic inputs.
std::string export_dot(const InverseWordGraph& g, const Alphabet& a);
std::string export_json(const InverseWordGraph& g, const Alphabet& a);
InverseWordGraph import_json(const Alphabet& a, const std::string& text);

// Label ranks in alphabet-name order, for canonical_form.
std::vector<std::uint32_t> name_order_ranks(const Alphabet& a);

}  // namespace simon::igraph

#endif
