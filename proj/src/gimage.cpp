#include "simon/gimage.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "simon/errors.hpp"

namespace simon::gimage {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string GroupOracle::eval(const std::string& expr) const {
  std::string acc = identity();
  auto toks = split_ws(expr);
  if (toks.size() == 1 && toks[0] == "1") return acc;
  for (const auto& t : toks) {
    std::string name = t;
    bool inv = false;
    if (!name.empty() && name.back() == '\'') {
      inv = true;
      name.pop_back();
    }
    auto g = generator(name);
    if (!g) throw InvalidArgument("oracle expression uses unknown generator \"" + name + "\"");
    acc = multiply(acc, inv ? invert(*g) : *g);
  }
  return acc;
}

FreeGroupOracle::FreeGroupOracle(std::vector<std::string> generators)
    : gens_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.empty() || g.find('\'') != std::string::npos ||
        g.find_first_of(" \t\n") != std::string::npos) {
      throw InvalidArgument("bad free group generator name \"" + g + "\"");
    }
    if (!seen.insert(g).second) throw InvalidArgument("duplicate free generator " + g);
  }
}

std::string FreeGroupOracle::multiply(const std::string& a, const std::string& b) const {
  auto ta = split_ws(a);
  auto tb = split_ws(b);
  auto clashes = [](const std::string& x, const std::string& y) {
    if (x.size() == y.size() + 1 && x.back() == '\'' && x.compare(0, y.size(), y) == 0)
      return true;
    if (y.size() == x.size() + 1 && y.back() == '\'' && y.compare(0, x.size(), x) == 0)
      return true;
    return false;
  };
  for (const auto& t : tb) {
    if (!ta.empty() && clashes(ta.back(), t)) {
      ta.pop_back();
    } else {
      ta.push_back(t);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (i) out += ' ';
    out += ta[i];
  }
  return out;
}

std::string FreeGroupOracle::invert(const std::string& a) const {
  auto ta = split_ws(a);
  std::string out;
  for (auto it = ta.rbegin(); it != ta.rend(); ++it) {
    if (!out.empty()) out += ' ';
    if (!it->empty() && it->back() == '\'') {
      out += it->substr(0, it->size() - 1);
    } else {
      out += *it + '\'';
    }
  }
  return out;
}

std::optional<std::string> FreeGroupOracle::generator(const std::string& name) const {
  for (const auto& g : gens_) {
    if (g == name) return name;
  }
  return std::nullopt;
}

std::uint32_t FiniteGroupTable::inv(std::uint32_t i) const {
  for (std::uint32_t j = 0; j < order(); ++j) {
    if (table[i][j] == identity && table[j][i] == identity) return j;
  }
  throw InvalidArgument("group table: no inverse for " + names[i]);
}

std::optional<std::uint32_t> FiniteGroupTable::index_of(const std::string& name) const {
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

void FiniteGroupTable::validate() const {
  const std::size_t n = order();
  if (n == 0) throw InvalidArgument("group table: empty");
  if (table.size() != n) throw InvalidArgument("group table: wrong row count");
  std::set<std::string> seen_names(names.begin(), names.end());
  if (seen_names.size() != n) throw InvalidArgument("group table: duplicate names");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidArgument("group table: ragged row");
    for (auto e : row) {
      if (e >= n) throw InvalidArgument("group table: index out of range");
    }
  }
  // Latin square
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::uint32_t> row(table[i].begin(), table[i].end());
    if (row.size() != n) throw InvalidArgument("group table: row " + names[i] + " not a permutation");
    std::set<std::uint32_t> col;
    for (std::size_t j = 0; j < n; ++j) col.insert(table[j][i]);
    if (col.size() != n) throw InvalidArgument("group table: column " + names[i] + " not a permutation");
  }
  // identity row/column
  if (identity >= n) throw InvalidArgument("group table: identity out of range");
  for (std::uint32_t j = 0; j < n; ++j) {
    if (table[identity][j] != j || table[j][identity] != j) {
      throw InvalidArgument("group table: identity laws fail");
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) (void)inv(i);
  // associativity on all triples for small tables, sampled otherwise
  if (n <= 12) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        for (std::uint32_t c = 0; c < n; ++c) {
          if (table[table[a][b]][c] != table[a][table[b][c]]) {
            throw InvalidArgument("group table: associativity fails");
          }
        }
      }
    }
  }
}

FiniteGroupTable FiniteGroupTable::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad group table json: ") + e.what(), 1, 1);
  }
  FiniteGroupTable t;
  if (!j.contains("names") || !j.contains("table")) {
    throw ParseError("group table json needs names and table", 1, 1);
  }
  t.names = j["names"].get<std::vector<std::string>>();
  t.table = j["table"].get<std::vector<std::vector<std::uint32_t>>>();
  if (j.contains("order") && j["order"].get<std::size_t>() != t.names.size()) {
    throw ParseError("group table order disagrees with names", 1, 1);
  }
  // locate the identity
  const std::size_t n = t.names.size();
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t j2 = 0; j2 < n; ++j2) {
      if (t.table.size() <= e || t.table[e].size() <= j2 || t.table[e][j2] != j2) {
        ok = false;
        break;
      }
    }
    if (ok) {
      t.identity = e;
      found = true;
    }
  }
  if (!found) throw ParseError("group table has no identity row", 1, 1);
  t.validate();
  return t;
}

std::string FiniteGroupTable::to_json() const {
  nlohmann::ordered_json j;
  j["order"] = order();
  j["names"] = names;
  j["table"] = table;
  return j.dump();
}

FiniteGroupOracle::FiniteGroupOracle(FiniteGroupTable t) : table_(std::move(t)) {
  table_.validate();
}

std::string FiniteGroupOracle::identity() const { return table_.names[table_.identity]; }

std::uint32_t FiniteGroupOracle::index(const std::string& name) const {
  auto i = table_.index_of(name);
  if (!i) throw InvalidArgument("unknown group element \"" + name + "\"");
  return *i;
}

std::string FiniteGroupOracle::multiply(const std::string& a, const std::string& b) const {
  return table_.names[table_.mul(index(a), index(b))];
}

std::string FiniteGroupOracle::invert(const std::string& a) const {
  return table_.names[table_.inv(index(a))];
}

std::optional<std::string> FiniteGroupOracle::generator(const std::string& name) const {
  if (table_.index_of(name)) return name;
  return std::nullopt;
}

namespace {

struct Syllable {
  int side;
  std::string elem;
};

std::vector<Syllable> parse_syllables(const std::string& s) {
  std::vector<Syllable> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto nl = s.find('\n', pos);
    std::string line = s.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? s.size() : nl + 1;
    if (line.empty()) continue;
    int side = line[0] == '0' ? 0 : 1;
    out.push_back({side, line.size() > 2 ? line.substr(2) : std::string()});
  }
  return out;
}

std::string render_syllables(const std::vector<Syllable>& syl) {
  std::string out;
  for (std::size_t i = 0; i < syl.size(); ++i) {
    if (i) out += '\n';
    out += syl[i].side == 0 ? "0 " : "1 ";
    out += syl[i].elem;
  }
  return out;
}

}  // namespace

FreeProductOracle::FreeProductOracle(std::unique_ptr<GroupOracle> left,
                                     std::unique_ptr<GroupOracle> right)
    : left_(std::move(left)), right_(std::move(right)) {}

std::string FreeProductOracle::multiply(const std::string& a, const std::string& b) const {
  auto sa = parse_syllables(a);
  auto sb = parse_syllables(b);
  // normalize at the seam
  for (auto& s : sb) {
    if (!sa.empty() && sa.back().side == s.side) {
      const GroupOracle& f = factor(s.side);
      std::string prod = f.multiply(sa.back().elem, s.elem);
      sa.pop_back();
      if (!f.is_identity(prod)) {
        sa.push_back({s.side, prod});
      }
    } else {
      const GroupOracle& f = factor(s.side);
      if (!f.is_identity(s.elem)) sa.push_back(s);
    }
  }
  return render_syllables(sa);
}

std::string FreeProductOracle::invert(const std::string& a) const {
  auto sa = parse_syllables(a);
  std::vector<Syllable> out;
  for (auto it = sa.rbegin(); it != sa.rend(); ++it) {
    out.push_back({it->side, factor(it->side).invert(it->elem)});
  }
  return render_syllables(out);
}

std::optional<std::string> FreeProductOracle::generator(const std::string& name) const {
  if (auto g = left_->generator(name)) {
    if (right_->generator(name)) {
      throw InvalidArgument("free product factors share generator \"" + name + "\"");
    }
    return embed(0, *g);
  }
  if (auto g = right_->generator(name)) return embed(1, *g);
  return std::nullopt;
}

std::string FreeProductOracle::embed(int side, const std::string& elem) const {
  if (factor(side).is_identity(elem)) return identity();
  return render_syllables({{side, elem}});
}

GroupHom make_hom(const Presentation& p, const GroupOracle& oracle,
                  const std::vector<std::pair<std::string, std::string>>& letter_exprs) {
  GroupHom h;
  h.oracle = &oracle;
  h.images.assign(p.alphabet.size(), oracle.identity());
  std::vector<char> assigned(p.alphabet.size(), 0);
  for (const auto& [letter, expr] : letter_exprs) {
    auto gen = p.alphabet.find(letter);
    if (!gen) throw InvalidArgument("hom maps unknown letter \"" + letter + "\"");
    h.images[*gen] = oracle.eval(expr);
    assigned[*gen] = 1;
  }
  for (std::uint32_t g = 0; g < p.alphabet.size(); ++g) {
    if (!assigned[g]) {
      throw InvalidArgument("hom does not map letter \"" + p.alphabet.name(g) + "\"");
    }
  }
  return h;
}

std::string sigma(const GroupHom& h, const Word& w) {
  std::string acc = h.oracle->identity();
  for (const auto& s : w) {
    if (s.gen >= h.images.size()) throw InvalidArgument("sigma: unmapped letter");
    const auto& img = h.images[s.gen];
    acc = h.oracle->multiply(acc, s.inv ? h.oracle->invert(img) : img);
  }
  return acc;
}

std::optional<std::size_t> validate_hom(const Presentation& p, const GroupHom& h) {
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (!h.oracle->is_identity(sigma(h, p.relators[i]))) return i;
  }
  return std::nullopt;
}

std::vector<Word> access_words(const Approximation& a) {
  const auto& g = a.graph;
  auto ranks = igraph::name_order_ranks(a.pres.alphabet);
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> seen(g.vertex_count(), kUnset);
  std::vector<Word> words(g.vertex_count());
  std::vector<std::uint32_t> order;
  seen[g.root()] = 0;
  order.push_back(g.root());
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::uint32_t v = order[i];
    std::vector<std::tuple<std::uint32_t, int, std::uint32_t>> nbrs;
    for (auto [gen, w] : g.out(v)) nbrs.emplace_back(ranks[gen], 0, w);
    for (auto [gen, w] : g.in(v)) nbrs.emplace_back(ranks[gen], 1, w);
    std::sort(nbrs.begin(), nbrs.end());
    for (auto& [r, d, w] : nbrs) {
      if (seen[w] == kUnset) {
        seen[w] = 1;
        std::uint32_t gen = a.pres.alphabet.sorted()[r];
        words[w] = words[v];
        words[w].push_back({gen, d == 1});
        order.push_back(w);
      }
    }
  }
  return words;
}

RoiReport roi_check(const Presentation& p, const GroupHom& h, const Approximation& sg1) {
  if (auto bad = validate_hom(p, h)) {
    throw InvalidArgument("roi_check: hom does not kill relator #" + std::to_string(*bad));
  }
  RoiReport rep;
  rep.rounds = sg1.rounds;
  auto words = access_words(sg1);
  // scan vertices in discovery order = ascending shortest-word order;
  // vertex ids are creation-ordered, so sort by (|word|, id) for a stable
  // discovery sequence
  std::vector<std::uint32_t> order(sg1.graph.vertex_count());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return words[x].size() < words[y].size();
  });
  std::unordered_map<std::string, std::uint32_t> first;
  for (auto v : order) {
    auto label = sigma(h, words[v]);
    auto [it, fresh] = first.emplace(label, v);
    if (!fresh) {
      rep.injective = false;
      rep.witness_u = words[it->second];
      rep.witness_v = words[v];
      return rep;
    }
  }
  rep.injective = true;
  return rep;
}

RoiReport roi_check(const Presentation& p, const GroupHom& h, int rounds,
                    const stephen::Limits& limits) {
  auto sg1 = stephen::approximate(p, {}, rounds, limits);
  return roi_check(p, h, sg1);
}

std::vector<LabeledEdge> check_condition_vi(const Presentation& p, const GroupHom& h,
                                            const Approximation& sg1) {
  if (auto bad = validate_hom(p, h)) {
    throw InvalidArgument("check_condition_vi: hom does not kill relator #" +
                          std::to_string(*bad));
  }
  std::vector<char> trivial(p.alphabet.size(), 0);
  for (std::uint32_t g = 0; g < p.alphabet.size(); ++g) {
    trivial[g] = h.oracle->is_identity(h.images[g]) ? 1 : 0;
  }
  std::vector<LabeledEdge> flags;
  for (const auto& e : sg1.graph.edges()) {
    if (e.src != e.dst && trivial[e.gen]) flags.push_back(e);
  }
  return flags;
}

SeparationResult separate_by_model(const Presentation& p, const InverseWordGraph& model,
                                   const Word& u, const Word& v) {
  if (!model.folded()) throw InvalidArgument("separate_by_model: model not folded");
  for (std::uint32_t x = 0; x < model.vertex_count(); ++x) {
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      if (!model.cycle_closed(x, p.relators[r])) throw InadmissibleModel(x, r);
    }
  }
  SeparationResult res;
  auto eu = model.read(model.root(), u);
  auto ev = model.read(model.root(), v);
  if (!eu || !ev) return res;  // base words not readable: no conclusion
  res.endpoint_u = *eu;
  res.endpoint_v = *ev;
  if (*eu != *ev) res.status = Separation::CertifiedDistinct;
  return res;
}

std::unique_ptr<GroupOracle> oracle_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad oracle json: ") + e.what(), 1, 1);
  }
  std::function<std::unique_ptr<GroupOracle>(const nlohmann::json&)> build =
      [&](const nlohmann::json& spec) -> std::unique_ptr<GroupOracle> {
    if (!spec.contains("type")) throw ParseError("oracle spec needs a type", 1, 1);
    std::string type = spec["type"].get<std::string>();
    if (type == "free") {
      return std::make_unique<FreeGroupOracle>(
          spec["generators"].get<std::vector<std::string>>());
    }
    if (type == "finite") {
      return std::make_unique<FiniteGroupOracle>(
          FiniteGroupTable::from_json(spec["table"].dump()));
    }
    if (type == "free_product") {
      return std::make_unique<FreeProductOracle>(build(spec["left"]), build(spec["right"]));
    }
    throw ParseError("unknown oracle type \"" + type + "\"", 1, 1);
  };
  return build(j);
}

LoadedHom hom_from_json(const Presentation& p, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad hom json: ") + e.what(), 1, 1);
  }
  if (!j.contains("oracle") || !j.contains("map")) {
    throw ParseError("hom json needs oracle and map", 1, 1);
  }
  LoadedHom out;
  out.oracle = oracle_from_json(j["oracle"].dump());
  std::vector<std::pair<std::string, std::string>> exprs;
  for (auto it = j["map"].begin(); it != j["map"].end(); ++it) {
    exprs.emplace_back(it.key(), it.value().get<std::string>());
  }
  out.hom = make_hom(p, *out.oracle, exprs);
  return out;
}

}  // namespace simon::gimage
