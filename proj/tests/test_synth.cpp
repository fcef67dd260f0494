#include <set>

#include "doctest.h"
#include "simon/synth.hpp"

using namespace simon;
using namespace simon::synth;
using gimage::FiniteGroupTable;
using simon::words::format_word;
using simon::words::parse_presentation;
using simon::words::parse_word;

namespace {

FiniteGroupTable z2() {
  FiniteGroupTable t;
  t.names = {"e", "g"};
  t.table = {{0, 1}, {1, 0}};
  t.identity = 0;
  return t;
}

FiniteGroupTable z3() {
  FiniteGroupTable t;
  t.names = {"e", "a", "b"};
  t.table = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  t.identity = 0;
  return t;
}

// symmetric group on three points, elements as permutation one-line forms
FiniteGroupTable s3() {
  std::vector<std::vector<int>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  FiniteGroupTable t;
  t.names = {"e", "r", "rr", "s", "rs", "sr"};
  t.identity = 0;
  t.table.assign(6, std::vector<std::uint32_t>(6, 0));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      std::vector<int> c(3);  // apply j then i
      for (int x = 0; x < 3; ++x) {
        c[static_cast<std::size_t>(x)] =
            perms[i][static_cast<std::size_t>(perms[j][static_cast<std::size_t>(x)])];
      }
      for (std::uint32_t k = 0; k < 6; ++k) {
        if (perms[k] == c) t.table[i][j] = k;
      }
    }
  }
  return t;
}

}  // namespace

TEST_CASE("synthesize Z2") {
  auto s = synthesize(z2());
  // one relation gg, letters x_g y_g d_0_1 d_0_2
  CHECK(s.pres.alphabet.size() == 4);
  REQUIRE(s.pres.relators.size() == 2);
  CHECK(format_word(s.pres.alphabet, s.pres.relators[0]) == "x_g d_0_1 d_0_2' y_g");
  CHECK(format_word(s.pres.alphabet, s.pres.relators[1]) == "x_g d_0_2 d_0_1' y_g");
  // witness: factors g, gg, ggg, gggg; total letter count 2*(2+4+6+8)
  CHECK(s.witness.size() == 40);
  CHECK(!gimage::validate_hom(s.pres, s.hom));
}

TEST_CASE("synthesize Z3 relation inventory") {
  auto s = synthesize(z3());
  CHECK(s.relations.size() == 4);
  // identity words over {a,b}: ab, ba, aaa, bbb
  std::size_t total = 0;
  for (const auto& r : s.relations) total += r.size();
  CHECK(total == 10);
  CHECK(s.pres.relators.size() == 10);
  // every relator has shape X Delta Delta^{-1} Y
  for (const auto& rel : s.pres.relators) {
    REQUIRE(rel.size() == 4);
    CHECK(s.pres.alphabet.name(rel[0].gen).rfind("x_", 0) == 0);
    CHECK(!rel[0].inv);
    CHECK(s.pres.alphabet.name(rel[1].gen).rfind("d_", 0) == 0);
    CHECK(!rel[1].inv);
    CHECK(s.pres.alphabet.name(rel[2].gen).rfind("d_", 0) == 0);
    CHECK(rel[2].inv);
    CHECK(s.pres.alphabet.name(rel[3].gen).rfind("y_", 0) == 0);
    CHECK(!rel[3].inv);
  }
  // witness factor count: 2 + 4 + 8 + 16 nonempty words of length <= 4
  std::size_t expected_letters = 0;
  for (std::size_t len = 1; len <= 4; ++len) {
    std::size_t words_of_len = 1;
    for (std::size_t i = 0; i < len; ++i) words_of_len *= 2;
    expected_letters += words_of_len * 4 * len;
  }
  CHECK(s.witness.size() == expected_letters);
  CHECK(!gimage::validate_hom(s.pres, s.hom));
}

TEST_CASE("synthesize rejects the trivial group") {
  FiniteGroupTable t;
  t.names = {"e"};
  t.table = {{0}};
  t.identity = 0;
  CHECK_THROWS_AS(synthesize(t), InvalidArgument);
}

TEST_CASE("omega graph core counts for Z2") {
  auto s = synthesize(z2());
  auto omega = omega_graph(s, 0);
  // rounds 0 copies are single vertices: 2 v + 2 u + 2 t
  CHECK(omega.vertex_count() == 6);
  auto auts = igraph::automorphisms(omega);
  CHECK(auts.size() == 2);
}

TEST_CASE("omega automorphism group matches the group order") {
  auto sz2 = synthesize(z2());
  for (int rounds = 0; rounds <= 2; ++rounds) {
    CHECK(igraph::automorphisms(omega_graph(sz2, rounds)).size() == 2);
  }
  auto sz3 = synthesize(z3());
  CHECK(igraph::automorphisms(omega_graph(sz3, 1)).size() == 3);
}

TEST_CASE("omega closes every relator at every core vertex") {
  auto s = synthesize(z2());
  auto omega = omega_graph(s, 1);
  // core vertices come first in construction order and survive folding
  // untouched; relators must close at the v vertices as well
  for (std::uint32_t v = 0; v < 6; ++v) {
    for (const auto& r : s.pres.relators) {
      CHECK(omega.cycle_closed(v, r));
    }
  }
}

TEST_CASE("verify_synthesis Z2 and Z3") {
  for (auto* table : {&z2, &z3}) {
    auto t = (*table)();
    auto rep = verify_synthesis(t, 2);
    CHECK(rep.root_characterized);
    CHECK(rep.no_x_in_y_out);
    CHECK(rep.trivial_units);
    CHECK(rep.morphism_to_model);
    CHECK(rep.morphism_from_model);
    CHECK(rep.model_aut_order == t.order());
    CHECK(rep.roi_injective);
    CHECK(rep.all_passed(t.order()));
  }
}

TEST_CASE("verify_synthesis catches a corrupted relator") {
  auto s = synthesize(z2());
  // corrupt: swap the x letter of the first relator to the y letter
  s.pres.relators[0][0] = {s.y_letter[0], false};
  auto rep = verify_synthesis(s, 2);
  CHECK(!(rep.morphism_to_model && rep.morphism_from_model));
}

TEST_CASE("s3 table is a valid group") {
  auto t = s3();
  t.validate();
  CHECK(t.order() == 6);
}

TEST_CASE("finite subgroup word construction") {
  auto p = parse_presentation("gens: a v ; rels: a a");
  std::vector<words::Word> units{parse_word(p.alphabet, ""), parse_word(p.alphabet, "a")};
  auto rep = finite_subgroup_word(p, units, *p.alphabet.find("v"), 2);
  CHECK(format_word(p.alphabet, rep.word) == "v v' a v v' a'");
  CHECK(rep.units_certified);
  CHECK(rep.v_one_sided_unknown);
  CHECK(rep.automorphism_order == 2);
  CHECK(rep.block_count == 3);
  CHECK(rep.attached_blocks == 2);
  CHECK(rep.uncovered_edges == 2);

  // single trivial unit
  std::vector<words::Word> triv{parse_word(p.alphabet, "")};
  auto rep1 = finite_subgroup_word(p, triv, *p.alphabet.find("v"), 2);
  CHECK(format_word(p.alphabet, rep1.word) == "v v'");
  CHECK(rep1.automorphism_order == 1);

  // a non-unit in the units list is rejected
  std::vector<words::Word> bad{parse_word(p.alphabet, "v")};
  CHECK_THROWS_AS(finite_subgroup_word(p, bad, *p.alphabet.find("v"), 2), InvalidArgument);

  // construction still emits the word when the units are fine
  auto q = parse_presentation("gens: x y ; rels: x y x'");
  std::vector<words::Word> tunits{parse_word(q.alphabet, "")};
  auto repq = finite_subgroup_word(q, tunits, *q.alphabet.find("y"), 2);
  CHECK(format_word(q.alphabet, repq.word) == "y y'");
  CHECK(!repq.caveat.empty());
}
