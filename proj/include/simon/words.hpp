#ifndef SIMON_WORDS_HPP
#define SIMON_WORDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simon/errors.hpp"

namespace simon::words {

// A signed occurrence of a generator. `gen` indexes the owning alphabet;
// `inv` marks exponent -1 (written with a trailing apostrophe).
struct SignedLetter {
  std::uint32_t gen = 0;
  bool inv = false;

  friend bool operator==(const SignedLetter& a, const SignedLetter& b) {
    return a.gen == b.gen && a.inv == b.inv;
  }
  friend bool operator!=(const SignedLetter& a, const SignedLetter& b) {
    return !(a == b);
  }
};

using Word = std::vector<SignedLetter>;

// Generator names in declaration order. Names are nonempty, contain no
// whitespace and no apostrophe.
class Alphabet {
 public:
  Alphabet() = default;

  // Throws InvalidArgument on an invalid or duplicate name.
  std::uint32_t add(const std::string& name);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t gen) const { return names_.at(gen); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::uint32_t> find(const std::string& name) const;

  // Generator ids sorted by name; this is the label order used for
  // canonical forms and breadth-first traversals.
  const std::vector<std::uint32_t>& sorted() const { return sorted_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint32_t> sorted_;
};

SignedLetter inverse(SignedLetter s);

Word invert(const Word& w);
Word free_reduce(const Word& w);
Word concat(const Word& a, const Word& b);

// A special inverse presentation: every relation reads <word> = 1.
// Relators are kept exactly as written and must be nonempty.
struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;
};

// Text format:  gens: <tok>+ ; rels: <word> (, <word>)*
// where a word is a whitespace-separated sequence of tokens, each
// optionally primed, and each relator may carry an optional "=1" suffix.
Presentation parse_presentation(const std::string& text);
std::string format_presentation(const Presentation& p);

// Parses a single word over the given alphabet ("x y x'" -> 3 letters).
// Throws ParseError on bad syntax or undeclared generators.
Word parse_word(const Alphabet& a, const std::string& text);
std::string format_word(const Alphabet& a, const Word& w);

// All strict nonempty prefixes of every relator, deduplicated as literal
// words, in first-occurrence order.
std::vector<Word> proper_prefixes(const Presentation& p);

// Stable 64-bit content hash of the formatted presentation (FNV-1a),
// rendered as hex. Used for cache keys.
std::string presentation_hash(const Presentation& p);

}  // namespace simon::words

#endif
