#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "doctest.h"
#include "simon/cache.hpp"
#include "simon/igraph.hpp"

using namespace simon;
using namespace simon::cache;
using simon::igraph::canonical_form;
using simon::words::parse_presentation;
using simon::words::parse_word;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("simon-cache-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("cache put/get round trip") {
  TempDir tmp;
  Store store(tmp.path.string());
  auto p = parse_presentation("gens: x y ; rels: x y x'");
  auto w = parse_word(p.alphabet, "");
  auto a = stephen::approximate(p, w, 3);
  store.put(a);
  auto back = store.get_best(p, w, 3);
  REQUIRE(back);
  CHECK(back->rounds == 3);
  CHECK(canonical_form(back->graph, back->graph.root()) ==
        canonical_form(a.graph, a.graph.root()));
}

TEST_CASE("get_best returns the largest stored prefix") {
  TempDir tmp;
  Store store(tmp.path.string());
  auto p = parse_presentation("gens: x y ; rels: x y x'");
  auto w = parse_word(p.alphabet, "");
  store.put(stephen::approximate(p, w, 1));
  store.put(stephen::approximate(p, w, 2));
  store.put(stephen::approximate(p, w, 5));
  auto best = store.get_best(p, w, 4);
  REQUIRE(best);
  CHECK(best->rounds == 2);
  CHECK(!store.get_best(p, parse_word(p.alphabet, "x"), 4));
}

TEST_CASE("cached_approximate warm result matches cold") {
  TempDir tmp;
  std::optional<Store> store(Store(tmp.path.string()));
  auto p = parse_presentation("gens: a b c d ; rels: a c b, a d b, c c', d d'");
  auto w = parse_word(p.alphabet, "a c");
  auto cold = cached_approximate(store, p, w, 3);
  auto warm = cached_approximate(store, p, w, 3);
  CHECK(canonical_form(cold.graph, cold.graph.root()) ==
        canonical_form(warm.graph, warm.graph.root()));
  // refinement path: request more rounds than stored
  auto more = cached_approximate(store, p, w, 4);
  auto fresh = stephen::approximate(p, w, 4);
  CHECK(canonical_form(more.graph, more.graph.root()) ==
        canonical_form(fresh.graph, fresh.graph.root()));
  // byte-stable canonical exports
  CHECK(igraph::export_json(more.graph, p.alphabet) ==
        igraph::export_json(fresh.graph, p.alphabet));
}

TEST_CASE("presentation edits invalidate the key") {
  TempDir tmp;
  Store store(tmp.path.string());
  auto p = parse_presentation("gens: x y ; rels: x y x'");
  store.put(stephen::approximate(p, {}, 2));
  auto q = parse_presentation("gens: x y ; rels: x y y x'");
  CHECK(!store.get_best(q, {}, 2));
}

TEST_CASE("corrupt entries are evicted") {
  TempDir tmp;
  Store store(tmp.path.string());
  auto p = parse_presentation("gens: x y ; rels: x y x'");
  store.put(stephen::approximate(p, {}, 2));
  // clobber the stored file
  for (const auto& entry : std::filesystem::directory_iterator(tmp.path)) {
    std::ofstream out(entry.path());
    out << "{broken";
  }
  CHECK(!store.get_best(p, {}, 2));
  // evicted: directory now empty
  CHECK(std::filesystem::directory_iterator(tmp.path) ==
        std::filesystem::directory_iterator());
}
