#ifndef SIMON_CACHE_HPP
#define SIMON_CACHE_HPP

#include <optional>
#include <string>

#include "simon/stephen.hpp"

namespace simon::cache {

using stephen::Approximation;
using stephen::Limits;
using words::Presentation;
using words::Word;

// Content-addressed approximation store: one JSON file per
// (presentation hash, word, rounds). Corrupt entries are evicted with a
// warning on stderr.
class Store {
 public:
  explicit Store(std::string dir) : dir_(std::move(dir)) {}

  void put(const Approximation& a) const;

  // Largest stored budget <= rounds for this presentation and word.
  std::optional<Approximation> get_best(const Presentation& p, const Word& w,
                                        int rounds) const;

  const std::string& dir() const { return dir_; }

 private:
  std::string key_prefix(const Presentation& p, const Word& w) const;
  std::string dir_;
};

// approximate() through an optional cache: loads the largest usable
// prefix, refines the remainder, and stores the result.
Approximation cached_approximate(const std::optional<Store>& store, const Presentation& p,
                                 const Word& w, int rounds, const Limits& limits = {});

}  // namespace simon::cache

#endif
