#ifndef SIMON_SYNTH_HPP
#define SIMON_SYNTH_HPP

#include <memory>
#include <string>
#include <vector>

#include "simon/blocks.hpp"
#include "simon/gimage.hpp"
#include "simon/green.hpp"
#include "simon/stephen.hpp"

namespace simon::synth {

using gimage::FiniteGroupTable;
using gimage::GroupHom;
using igraph::InverseWordGraph;
using stephen::Limits;
using words::Presentation;
using words::Word;

// A presentation over x/y/delta letters realizing the given finite group
// as a maximal subgroup while keeping the group of units trivial, plus the
// validated morphism onto its maximal group image (a free product of a
// free group with the given group).
struct SynthOutput {
  FiniteGroupTable group;
  Presentation pres;
  std::vector<std::uint32_t> gen_elems;  // nonidentity group elements, name order
  std::vector<std::vector<std::uint32_t>> relations;  // identity words of length 2/3
  std::vector<std::uint32_t> x_letter;                // per gen_elems position
  std::vector<std::uint32_t> y_letter;
  std::vector<std::vector<std::uint32_t>> delta_letter;  // [relation][k-1]
  Word witness;
  std::shared_ptr<gimage::GroupOracle> oracle;
  GroupHom hom;
};

// Builds the presentation, witness word and validated hom. Requires group
// order >= 2.
SynthOutput synthesize(const FiniteGroupTable& g);

Word witness_word(const FiniteGroupTable& g);

// The model graph: group-indexed core (v, u, t vertices) with an identity
// graph approximation attached at every u and t vertex. Construction is
// asserted to be deterministic already (folding must not merge anything).
InverseWordGraph omega_graph(const SynthOutput& s, int rounds, const Limits& limits = {});

struct SynthReport {
  int rounds = 0;
  // structural properties of the identity graph approximation
  bool root_characterized = false;  // root unique with only x-out / y-in edges
  bool no_x_in_y_out = false;       // no vertex with an x-edge in and a y-edge out
  bool trivial_units = false;       // trivial automorphism group
  // model comparison on matched-radius balls around the roots
  bool morphism_to_model = false;
  bool morphism_from_model = false;
  std::size_t model_aut_order = 0;  // should equal the group order
  bool roi_injective = false;

  bool all_passed(std::size_t group_order) const {
    return root_characterized && no_x_in_y_out && trivial_units && morphism_to_model &&
           morphism_from_model && model_aut_order == group_order && roi_injective;
  }
};

SynthReport verify_synthesis(const FiniteGroupTable& g, int rounds,
                             const Limits& limits = {});
SynthReport verify_synthesis(const SynthOutput& s, int rounds,
                             const Limits& limits = {});

struct SubgroupWordReport {
  Word word;
  bool units_certified = false;
  bool v_one_sided_unknown = false;  // both one-sided verdicts Unknown for v
  std::string caveat;
  std::size_t automorphism_order = 0;
  std::size_t block_count = 0;
  std::size_t attached_blocks = 0;  // blocks not containing the root
  std::size_t uncovered_edges = 0;
};

// The product of u v v' u' over the given unit words. Every unit must be
// certified at the budget; the non-unit hypothesis on v is recorded as an
// unverified caveat.
SubgroupWordReport finite_subgroup_word(const Presentation& p,
                                        const std::vector<Word>& units,
                                        std::uint32_t v_gen, int rounds,
                                        const Limits& limits = {});

}  // namespace simon::synth

#endif
