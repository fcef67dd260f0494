#ifndef SIMON_GIMAGE_HPP
#define SIMON_GIMAGE_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "simon/igraph.hpp"
#include "simon/stephen.hpp"
#include "simon/words.hpp"

namespace simon::gimage {

using igraph::InverseWordGraph;
using igraph::LabeledEdge;
using stephen::Approximation;
using words::Presentation;
using words::Word;

// A group with decidable equality. Elements travel as canonical byte
// strings; two elements are equal iff their canonical forms compare equal.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;
  virtual std::string identity() const = 0;
  virtual std::string multiply(const std::string& a, const std::string& b) const = 0;
  virtual std::string invert(const std::string& a) const = 0;
  virtual std::optional<std::string> generator(const std::string& name) const = 0;

  bool equal(const std::string& a, const std::string& b) const { return a == b; }
  bool is_identity(const std::string& a) const { return a == identity(); }

  // Evaluates a token expression over oracle generator names ("c' a'");
  // "" and "1" denote the identity.
  std::string eval(const std::string& expr) const;
};

// Free group: canonical form is the reduced word, tokens joined by spaces.
class FreeGroupOracle : public GroupOracle {
 public:
  explicit FreeGroupOracle(std::vector<std::string> generators);
  std::string identity() const override { return ""; }
  std::string multiply(const std::string& a, const std::string& b) const override;
  std::string invert(const std::string& a) const override;
  std::optional<std::string> generator(const std::string& name) const override;
  const std::vector<std::string>& generators() const { return gens_; }

 private:
  std::vector<std::string> gens_;
};

// Multiplication table of a finite group.
struct FiniteGroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::uint32_t>> table;
  std::uint32_t identity = 0;

  std::size_t order() const { return names.size(); }
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return table[i][j]; }
  std::uint32_t inv(std::uint32_t i) const;
  std::optional<std::uint32_t> index_of(const std::string& name) const;

  // Checks the Latin-square property, the identity row/column and the
  // existence of inverses; throws InvalidArgument otherwise.
  void validate() const;

  // {order: n, names: [...], table: n x n array of indices}
  static FiniteGroupTable from_json(const std::string& text);
  std::string to_json() const;
};

// Canonical form is the element name.
class FiniteGroupOracle : public GroupOracle {
 public:
  explicit FiniteGroupOracle(FiniteGroupTable t);
  std::string identity() const override;
  std::string multiply(const std::string& a, const std::string& b) const override;
  std::string invert(const std::string& a) const override;
  std::optional<std::string> generator(const std::string& name) const override;
  const FiniteGroupTable& table() const { return table_; }

 private:
  std::uint32_t index(const std::string& name) const;
  FiniteGroupTable table_;
};

// Free product of two oracles with disjoint generator name sets.
// Canonical form: newline-separated syllables "<0|1> <factor canonical>",
// alternating factors, no identity syllables.
class FreeProductOracle : public GroupOracle {
 public:
  FreeProductOracle(std::unique_ptr<GroupOracle> left, std::unique_ptr<GroupOracle> right);
  std::string identity() const override { return ""; }
  std::string multiply(const std::string& a, const std::string& b) const override;
  std::string invert(const std::string& a) const override;
  std::optional<std::string> generator(const std::string& name) const override;

  // Wraps a factor element as a free-product element.
  std::string embed(int side, const std::string& elem) const;
  const GroupOracle& factor(int side) const { return side == 0 ? *left_ : *right_; }

 private:
  std::unique_ptr<GroupOracle> left_;
  std::unique_ptr<GroupOracle> right_;
};

// A letter-to-element map realizing a morphism onto a group image.
struct GroupHom {
  const GroupOracle* oracle = nullptr;
  std::vector<std::string> images;  // indexed by generator id
};

GroupHom make_hom(const Presentation& p, const GroupOracle& oracle,
                  const std::vector<std::pair<std::string, std::string>>& letter_exprs);

std::string sigma(const GroupHom& h, const Word& w);

// Empty result = admissible; otherwise the index of a failing relator.
std::optional<std::size_t> validate_hom(const Presentation& p, const GroupHom& h);

struct RoiReport {
  bool injective = false;
  int rounds = 0;
  Word witness_u, witness_v;  // access words of a colliding vertex pair
};

// Labels every vertex of the identity-graph approximation with the sigma
// image of its breadth-first access word. All labels distinct =>
// InjectiveUpTo(rounds); otherwise the first collision in discovery order
// becomes a candidate witness (not a certified non-injectivity verdict).
RoiReport roi_check(const Presentation& p, const GroupHom& h, const Approximation& sg1);
RoiReport roi_check(const Presentation& p, const GroupHom& h, int rounds,
                    const stephen::Limits& limits = {});

// Non-loop edges whose label has identity sigma image; each one flags a
// candidate witness in the sense of roi_check.
std::vector<LabeledEdge> check_condition_vi(const Presentation& p, const GroupHom& h,
                                            const Approximation& sg1);

enum class Separation { CertifiedDistinct, Inconclusive };

struct SeparationResult {
  Separation status = Separation::Inconclusive;
  std::optional<std::uint32_t> endpoint_u, endpoint_v;
};

// Thrown when a model graph fails admissibility.
class InadmissibleModel : public std::runtime_error {
 public:
  InadmissibleModel(std::uint32_t vertex, std::size_t relator)
      : std::runtime_error("model graph: relator #" + std::to_string(relator) +
                           " does not close at vertex " + std::to_string(vertex)),
        vertex_(vertex),
        relator_(relator) {}
  std::uint32_t vertex() const { return vertex_; }
  std::size_t relator() const { return relator_; }

 private:
  std::uint32_t vertex_;
  std::size_t relator_;
};

// If every relator closes at every model vertex and u, v read from the
// model root to distinct vertices, then u != v in the monoid.
SeparationResult separate_by_model(const Presentation& p, const InverseWordGraph& model,
                                   const Word& u, const Word& v);

// Breadth-first shortest access word of every vertex (ties broken by label
// name order, positive direction first). Index = vertex id.
std::vector<Word> access_words(const Approximation& a);

// Oracle construction from a JSON spec:
//   {"type":"free","generators":[...]}
//   {"type":"finite","table":{...}}
//   {"type":"free_product","left":{...},"right":{...}}
std::unique_ptr<GroupOracle> oracle_from_json(const std::string& text);

// Hom sidecar: {"oracle": <spec>, "map": {"letter": "expr", ...}}.
struct LoadedHom {
  std::unique_ptr<GroupOracle> oracle;
  GroupHom hom;
};
LoadedHom hom_from_json(const Presentation& p, const std::string& text);

}  // namespace simon::gimage

#endif
