#include "doctest.h"
#include "simon/blocks.hpp"

using namespace simon;
using namespace simon::blocks;
using simon::words::parse_presentation;
using simon::words::parse_word;

namespace {

const char* kXpqy = "gens: x p q y ; rels: x p y, x p' y";
const char* kXpy = "gens: x p y ; rels: x p y, x p' y";
const char* kNoCover = "gens: a b c ; rels: a b' a' a b a' c' a b c";

}  // namespace

TEST_CASE("lambda cover of the four-block example") {
  auto p = parse_presentation(kXpqy);
  auto w = parse_word(p.alphabet, "q q' x y q q'");
  for (int rounds = 2; rounds <= 3; ++rounds) {
    auto cover = lambda_cover(p, w, rounds);
    CHECK(cover.blocks.size() == 4);
    REQUIRE(cover.uncovered.size() == 2);
    for (const auto& e : cover.uncovered) {
      CHECK(p.alphabet.name(e.gen) == "q");
    }
    // uncovered edges are cut edges on the base word path
    auto bridges = cut_edges(cover.base.graph);
    auto on_path = word_path_edges(cover.base.graph, w);
    for (const auto& e : cover.uncovered) {
      CHECK(std::binary_search(bridges.begin(), bridges.end(), e));
      CHECK(std::binary_search(on_path.begin(), on_path.end(), e));
    }
    auto laws = verify_cover_laws(cover);
    CHECK(laws.ok());
    // block count stays within the prefix bound
    CHECK(cover.blocks.size() <= w.size() + 1);
  }
}

TEST_CASE("empty word gives a single block covering everything") {
  auto p = parse_presentation(kXpy);
  auto cover = lambda_cover(p, {}, 2);
  CHECK(cover.blocks.size() == 1);
  CHECK(cover.uncovered.empty());
  CHECK(verify_cover_laws(cover).ok());
  auto act = block_action(cover);
  CHECK(act.order() == 1);
  CHECK(act.stabilizer_index == 1);
  auto dis = disjointness_report(cover);
  CHECK(dis.pairwise_disjoint);
}

TEST_CASE("xy cover has blocks rooted at prefix vertices and no uncovered edges") {
  auto p = parse_presentation(kXpy);
  auto w = parse_word(p.alphabet, "x y");
  auto cover = lambda_cover(p, w, 2);
  CHECK(cover.uncovered.empty());
  CHECK(cover.blocks.size() == 2);
  for (auto b : cover.blocks) {
    auto end = cover.base.graph.read(cover.base.graph.root(), cover.preblocks[b].prefix);
    REQUIRE(end);
    CHECK(*end == cover.preblocks[b].root);
  }
  CHECK(verify_cover_laws(cover).ok());
}

TEST_CASE("block action of the xy example has order 2") {
  auto p = parse_presentation(kXpy);
  auto w = parse_word(p.alphabet, "x y");
  for (int rounds = 2; rounds <= 4; ++rounds) {
    auto cover = lambda_cover(p, w, rounds);
    auto act = block_action(cover);
    CHECK(act.truncation_connected);
    CHECK(act.order() == 2);
    CHECK(act.all_blocks_permuted);
    CHECK(act.stabilizer_order == 1);
    CHECK(act.stabilizer_index == 2);
    CHECK(act.restriction_ok);
  }
}

TEST_CASE("block action of the four-block example") {
  auto p = parse_presentation(kXpqy);
  auto w = parse_word(p.alphabet, "q q' x y q q'");
  for (int rounds = 2; rounds <= 3; ++rounds) {
    auto cover = lambda_cover(p, w, rounds);
    auto act = block_action(cover);
    CHECK(act.order() == 2);
    CHECK(act.all_blocks_permuted);
    CHECK(act.stabilizer_order == 1);
    CHECK(act.stabilizer_index == 2);
    // the nontrivial automorphism swaps the two q-edge pairs
    bool found_swap = false;
    for (const auto& perm : act.permutations) {
      if (perm.size() == 4 && perm[0] != 0) {
        found_swap = true;
        CHECK(perm[0] == 2);
        CHECK(perm[1] == 3);
        CHECK(perm[2] == 0);
        CHECK(perm[3] == 1);
      }
    }
    CHECK(found_swap);
  }
}

TEST_CASE("disjointness report of the four-block example") {
  auto p = parse_presentation(kXpqy);
  auto w = parse_word(p.alphabet, "q q' x y q q'");
  auto cover = lambda_cover(p, w, 2);
  auto dis = disjointness_report(cover);
  CHECK(dis.uncovered_count == 2);
  REQUIRE(dis.order_bound);
  CHECK(*dis.order_bound == 2);
  REQUIRE(dis.automorphism_order);
  CHECK(*dis.automorphism_order == 2);
  CHECK(dis.bound_ok);
  // The paper's block images genuinely overlap around the xy section: the
  // two central blocks share the vertex x (= y' read from the far root).
  CHECK(!dis.pairwise_disjoint);
  REQUIRE(!dis.overlaps.empty());
}

TEST_CASE("coverage violation for the non-injective example") {
  auto p = parse_presentation(kNoCover);
  auto w = parse_word(p.alphabet, "a c");
  for (int rounds = 2; rounds <= 3; ++rounds) {
    auto cover = lambda_cover(p, w, rounds);
    auto laws = verify_cover_laws(cover);
    CHECK(!laws.ok());
    CHECK(!laws.uncovered_vertices.empty());
    // the base word start fails to be covered
    bool root_uncovered = false;
    for (auto v : laws.uncovered_vertices) {
      if (v == cover.base.graph.root()) root_uncovered = true;
    }
    CHECK(root_uncovered);
    CHECK(!laws.noninjective_copies.empty());
  }
}

TEST_CASE("cut edges of a path and a cycle") {
  igraph::InverseWordGraph path;
  for (int i = 0; i < 3; ++i) path.add_vertex();
  path.add_edge(0, 0, 1);
  path.add_edge(1, 1, 2);
  path.fold();
  path.set_root(0);
  CHECK(cut_edges(path).size() == 2);

  igraph::InverseWordGraph cyc;
  for (int i = 0; i < 3; ++i) cyc.add_vertex();
  cyc.add_edge(0, 0, 1);
  cyc.add_edge(1, 0, 2);
  cyc.add_edge(2, 0, 0);
  cyc.fold();
  cyc.set_root(0);
  CHECK(cut_edges(cyc).empty());
}
