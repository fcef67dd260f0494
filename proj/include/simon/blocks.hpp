#ifndef SIMON_BLOCKS_HPP
#define SIMON_BLOCKS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "simon/igraph.hpp"
#include "simon/stephen.hpp"

namespace simon::blocks {

using igraph::InverseWordGraph;
using igraph::LabeledEdge;
using stephen::Approximation;
using stephen::Limits;
using words::Presentation;
using words::Word;

// The tracked image of one identity-graph copy glued at a Munn tree
// vertex. Only injective copies are preblocks proper; non-injective
// tracking is kept and surfaced as a law violation.
struct Preblock {
  std::uint32_t root = 0;           // image of the copy's root in the base graph
  Word prefix;                      // prefix of w reaching the root
  std::vector<std::uint32_t> vertices;  // sorted tracked vertex image
  std::vector<LabeledEdge> edges;       // sorted tracked edge image
  bool injective = true;

  bool contains_vertex(std::uint32_t v) const;
  bool contains_edge(const LabeledEdge& e) const;
};

struct BlockCover {
  Approximation base;  // the folded gluing of identity copies onto the Munn tree
  std::vector<Preblock> preblocks;     // one per Munn tree vertex, prefix order
  std::vector<std::size_t> blocks;     // indices of maximal injective preblocks
  std::vector<LabeledEdge> uncovered;  // base edges in no preblock image
  int rounds = 0;
};

// Glues an identity-graph approximation at every Munn tree vertex of w,
// folds once, and tracks each copy's image. Maximality among preblocks is
// decided by root subsumption: a preblock whose root lies in another
// preblock's image is contained in it at the infinite level.
BlockCover lambda_cover(const Presentation& p, const Word& w, int rounds,
                        const Limits& limits = {});

struct CoverLawReport {
  std::vector<std::uint32_t> uncovered_vertices;   // not in any preblock image
  std::vector<std::size_t> noninjective_copies;    // copies that fail injectivity
  std::vector<LabeledEdge> noncut_uncovered;       // uncovered edges that are not bridges
  std::vector<LabeledEdge> offpath_uncovered;      // uncovered edges off the w-path
  bool roots_are_prefix_images = true;

  bool ok() const {
    return uncovered_vertices.empty() && noninjective_copies.empty() &&
           noncut_uncovered.empty() && offpath_uncovered.empty() &&
           roots_are_prefix_images;
  }
};

CoverLawReport verify_cover_laws(const BlockCover& c);

struct BlockAction {
  igraph::Ball ball;                      // matched truncation the action is computed on
  bool truncation_connected = true;
  std::vector<igraph::GraphMorphism> automorphisms;  // over ball vertex ids
  // block permutation per automorphism; empty when some block root has no
  // block image (budget too small)
  std::vector<std::vector<std::size_t>> permutations;
  bool all_blocks_permuted = true;
  std::size_t stabilizer_order = 0;  // stabilizer of blocks[0]
  std::size_t stabilizer_index = 0;
  bool restriction_ok = true;  // stabilizer elements restrict to block 0

  std::size_t order() const { return automorphisms.size(); }
};

// Automorphisms of the matched truncation (ball of radius = rounds around
// root and terminal) and the induced action on blocks.
BlockAction block_action(const BlockCover& c);

struct DisjointnessReport {
  bool pairwise_disjoint = true;
  // (block index, block index, number of shared vertices)
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> overlaps;
  std::size_t uncovered_count = 0;
  std::optional<std::size_t> automorphism_order;
  std::optional<unsigned long long> order_bound;  // factorial of uncovered count
  bool bound_ok = true;
};

DisjointnessReport disjointness_report(const BlockCover& c);

// Bridges of the base graph (edges whose removal disconnects it).
std::vector<LabeledEdge> cut_edges(const InverseWordGraph& g);

// Edges traversed by reading w from the root.
std::vector<LabeledEdge> word_path_edges(const InverseWordGraph& g, const Word& w);

}  // namespace simon::blocks

#endif
