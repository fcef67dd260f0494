#ifndef SIMON_GREEN_HPP
#define SIMON_GREEN_HPP

#include <optional>

#include "simon/stephen.hpp"

namespace simon::green {

using stephen::Approximation;
using stephen::Certificate;
using stephen::Limits;
using stephen::Verdict;
using words::Presentation;
using words::Word;

enum class GreenClass { R1, L1, H1, D1 };

struct Classification {
  GreenClass cls = GreenClass::R1;
  Certificate cert;
  // For a D1 verdict: the split w = u v with u a left unit and v a right
  // unit (index of the first letter of v).
  std::optional<std::size_t> split;

  bool yes() const { return cert.yes(); }
};

// All checks read off one approximation of the graph of the identity; the
// overloads taking an Approximation reuse a prebuilt one.
Classification is_right_unit(const Approximation& sg1, const Word& w);
Classification is_left_unit(const Approximation& sg1, const Word& w);
Classification is_unit(const Approximation& sg1, const Word& w);
Classification in_D1(const Approximation& sg1, const Word& w);

Classification is_right_unit(const Presentation& p, const Word& w, int rounds,
                             const Limits& limits = {});
Classification is_left_unit(const Presentation& p, const Word& w, int rounds,
                            const Limits& limits = {});
Classification is_unit(const Presentation& p, const Word& w, int rounds,
                       const Limits& limits = {});
Classification in_D1(const Presentation& p, const Word& w, int rounds,
                     const Limits& limits = {});

struct DichotomyReport {
  Classification right;
  Classification left;
  Classification d1;
  // A single generator lies in the D-class of 1 iff it is a one-sided
  // unit; a certified D1 verdict without a one-sided Yes would be an
  // inconsistency.
  bool consistent = true;
};

DichotomyReport generator_dichotomy(const Presentation& p, std::uint32_t gen,
                                    int rounds, const Limits& limits = {});

// Condition check used for cross-validation of in_D1: does w label a path
// in the approximation passing through the root? Scans all start vertices.
bool reads_through_root(const Approximation& sg1, const Word& w);

}  // namespace simon::green

#endif
