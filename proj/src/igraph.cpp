#include "simon/igraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "simon/errors.hpp"

namespace simon::igraph {

namespace {

// Union-find over vertex ids, tracking the earliest-created member of each
// class so folded graphs can be renumbered in creation order.
struct UnionFind {
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> min_id;

  explicit UnionFind(std::size_t n) : parent(n), min_id(n) {
    for (std::size_t i = 0; i < n; ++i) {
      parent[i] = static_cast<std::uint32_t>(i);
      min_id[i] = static_cast<std::uint32_t>(i);
    }
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

}  // namespace

InverseWordGraph InverseWordGraph::single_vertex() {
  InverseWordGraph g;
  g.add_vertex();
  g.root_ = 0;
  g.folded_ = true;
  return g;
}

std::uint32_t InverseWordGraph::add_vertex() {
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<std::uint32_t>(out_.size() - 1);
}

void InverseWordGraph::add_edge(std::uint32_t u, std::uint32_t gen, std::uint32_t v) {
  if (u >= out_.size() || v >= out_.size()) {
    throw InvalidArgument("add_edge: vertex out of range");
  }
  out_[u].emplace_back(gen, v);
  in_[v].emplace_back(gen, u);
  folded_ = false;
}

InverseWordGraph InverseWordGraph::munn_tree(const Word& w, std::size_t vertex_cap) {
  if (w.size() + 1 > vertex_cap) {
    throw ResourceError("munn_tree: vertex cap exceeded");
  }
  InverseWordGraph g;
  std::uint32_t start = g.add_vertex();
  std::uint32_t cur = start;
  for (const auto& s : w) {
    std::uint32_t next = g.add_vertex();
    if (!s.inv) {
      g.add_edge(cur, s.gen, next);
    } else {
      g.add_edge(next, s.gen, cur);
    }
    cur = next;
  }
  g.set_root(start);
  g.set_terminal(cur);
  auto map = g.fold();
  g.set_root(map[start]);
  g.set_terminal(map[cur]);
  return g;
}

std::vector<std::uint32_t> InverseWordGraph::fold() {
  const std::size_t n = out_.size();
  UnionFind uf(n);

  std::deque<std::uint32_t> work;
  std::vector<char> queued(n, 1);
  for (std::uint32_t v = 0; v < n; ++v) work.push_back(v);

  auto splice = [&](std::uint32_t into, std::uint32_t from) {
    auto& o1 = out_[into];
    auto& o2 = out_[from];
    o1.insert(o1.end(), o2.begin(), o2.end());
    o2.clear();
    o2.shrink_to_fit();
    auto& i1 = in_[into];
    auto& i2 = in_[from];
    i1.insert(i1.end(), i2.begin(), i2.end());
    i2.clear();
    i2.shrink_to_fit();
  };

  auto merge = [&](std::uint32_t a, std::uint32_t b) {
    a = uf.find(a);
    b = uf.find(b);
    if (a == b) return;
    // Union by adjacency weight; keep the smallest original id of the class.
    std::size_t wa = out_[a].size() + in_[a].size();
    std::size_t wb = out_[b].size() + in_[b].size();
    if (wa < wb) std::swap(a, b);
    uf.parent[b] = a;
    uf.min_id[a] = std::min(uf.min_id[a], uf.min_id[b]);
    splice(a, b);
    if (!queued[a]) {
      queued[a] = 1;
      work.push_back(a);
    }
  };

  // Scan a representative's adjacency, deduplicating parallel edges and
  // queueing merges for (source,label) and (target,label) clashes.
  std::unordered_map<std::uint64_t, std::uint32_t> slot;
  auto scan = [&](std::uint32_t v) {
    bool changed = true;
    while (changed) {
      changed = false;
      v = uf.find(v);
      // One pass over an adjacency list. Entries already processed are
      // compacted into [0, keep); on a label clash the clashing entry is
      // dropped, the unprocessed tail is kept for the next pass, and the
      // two targets are merged.
      auto pass = [&](std::vector<std::pair<std::uint32_t, std::uint32_t>>& lst) {
        slot.clear();
        std::size_t keep = 0;
        for (std::size_t i = 0; i < lst.size(); ++i) {
          std::uint32_t g = lst[i].first;
          std::uint32_t w = uf.find(lst[i].second);
          auto [it, fresh] = slot.emplace(g, w);
          if (fresh) {
            lst[keep++] = {g, w};
          } else if (it->second != w) {
            std::uint32_t other = it->second;
            lst.erase(lst.begin() + static_cast<std::ptrdiff_t>(keep),
                      lst.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            merge(other, w);
            return true;
          }
          // exact duplicate: drop
        }
        lst.resize(keep);
        return false;
      };
      if (pass(out_[v])) {
        changed = true;
        continue;
      }
      if (pass(in_[v])) {
        changed = true;
        continue;
      }
    }
  };

  while (!work.empty()) {
    std::uint32_t v = work.front();
    work.pop_front();
    queued[v] = 0;
    if (uf.find(v) != v) continue;
    scan(v);
  }

  // Compact: dense ids ordered by each class's earliest member.
  std::vector<std::uint32_t> reps;
  reps.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (uf.find(v) == v) reps.push_back(v);
  }
  std::sort(reps.begin(), reps.end(), [&](std::uint32_t a, std::uint32_t b) {
    return uf.min_id[a] < uf.min_id[b];
  });
  std::vector<std::uint32_t> dense(n, 0);
  for (std::uint32_t i = 0; i < reps.size(); ++i) dense[reps[i]] = i;

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> new_out(reps.size());
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> new_in(reps.size());
  for (std::uint32_t i = 0; i < reps.size(); ++i) {
    auto& src = out_[reps[i]];
    auto& lst = new_out[i];
    lst.reserve(src.size());
    for (auto [g, w] : src) lst.emplace_back(g, dense[uf.find(w)]);
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    auto& isrc = in_[reps[i]];
    auto& ilst = new_in[i];
    ilst.reserve(isrc.size());
    for (auto [g, w] : isrc) ilst.emplace_back(g, dense[uf.find(w)]);
    std::sort(ilst.begin(), ilst.end());
    ilst.erase(std::unique(ilst.begin(), ilst.end()), ilst.end());
  }
  out_ = std::move(new_out);
  in_ = std::move(new_in);

  std::vector<std::uint32_t> result(n);
  for (std::uint32_t v = 0; v < n; ++v) result[v] = dense[uf.find(v)];
  root_ = root_ < n ? result[root_] : 0;
  if (terminal_ && *terminal_ < n) terminal_ = result[*terminal_];
  folded_ = true;
  return result;
}

void InverseWordGraph::ensure_folded(const char* op) const {
  if (!folded_) throw std::logic_error(std::string(op) + ": graph not folded");
}

std::size_t InverseWordGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& lst : out_) n += lst.size();
  return n;
}

std::optional<std::uint32_t> InverseWordGraph::forward(std::uint32_t v,
                                                       std::uint32_t gen) const {
  ensure_folded("forward");
  const auto& lst = out_[v];
  auto it = std::lower_bound(lst.begin(), lst.end(), std::pair{gen, 0u});
  if (it != lst.end() && it->first == gen) return it->second;
  return std::nullopt;
}

std::optional<std::uint32_t> InverseWordGraph::backward(std::uint32_t v,
                                                        std::uint32_t gen) const {
  ensure_folded("backward");
  const auto& lst = in_[v];
  auto it = std::lower_bound(lst.begin(), lst.end(), std::pair{gen, 0u});
  if (it != lst.end() && it->first == gen) return it->second;
  return std::nullopt;
}

std::optional<std::uint32_t> InverseWordGraph::step(std::uint32_t v, SignedLetter s) const {
  return s.inv ? backward(v, s.gen) : forward(v, s.gen);
}

std::optional<std::uint32_t> InverseWordGraph::read(std::uint32_t from,
                                                    const Word& w) const {
  std::optional<std::uint32_t> cur = from;
  for (const auto& s : w) {
    cur = step(*cur, s);
    if (!cur) return std::nullopt;
  }
  return cur;
}

bool InverseWordGraph::cycle_closed(std::uint32_t v, const Word& r) const {
  auto end = read(v, r);
  return end && *end == v;
}

std::vector<LabeledEdge> InverseWordGraph::edges() const {
  std::vector<LabeledEdge> out;
  out.reserve(edge_count());
  for (std::uint32_t v = 0; v < out_.size(); ++v) {
    for (auto [g, w] : out_[v]) out.push_back({v, g, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool InverseWordGraph::connected_from(std::uint32_t start) const {
  ensure_folded("connected_from");
  if (vertex_count() == 0) return true;
  std::vector<char> seen(vertex_count(), 0);
  std::queue<std::uint32_t> q;
  q.push(start);
  seen[start] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto [g, w] : out_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
    }
    for (auto [g, w] : in_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
    }
  }
  return count == vertex_count();
}

MorphismResult find_morphism(const InverseWordGraph& src, const InverseWordGraph& dst,
                             std::uint32_t anchor_src, std::uint32_t anchor_dst) {
  if (anchor_src >= src.vertex_count() || anchor_dst >= dst.vertex_count()) {
    throw InvalidArgument("find_morphism: anchor out of range");
  }
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> map(src.vertex_count(), kUnset);
  map[anchor_src] = anchor_dst;
  std::queue<std::uint32_t> q;
  q.push(anchor_src);
  MorphismResult res;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    auto m = map[v];
    for (auto [g, w] : src.out(v)) {
      auto target = dst.forward(m, g);
      if (!target) {
        res.failure = {v, g, true, false};
        return res;
      }
      if (map[w] == kUnset) {
        map[w] = *target;
        q.push(w);
      } else if (map[w] != *target) {
        res.failure = {v, g, true, true};
        return res;
      }
    }
    for (auto [g, w] : src.in(v)) {
      auto source = dst.backward(m, g);
      if (!source) {
        res.failure = {v, g, false, false};
        return res;
      }
      if (map[w] == kUnset) {
        map[w] = *source;
        q.push(w);
      } else if (map[w] != *source) {
        res.failure = {v, g, false, true};
        return res;
      }
    }
  }
  for (auto m : map) {
    if (m == kUnset) {
      throw InvalidArgument("find_morphism: source graph not connected");
    }
  }
  GraphMorphism gm;
  gm.map = std::move(map);
  gm.root_preserving =
      src.root() < gm.map.size() && gm.map[src.root()] == dst.root();
  res.morphism = std::move(gm);
  return res;
}

namespace {

// Incident (gen, direction, is_loop) multiset; automorphism-invariant.
std::vector<std::uint64_t> vertex_signature(const InverseWordGraph& g, std::uint32_t v) {
  std::vector<std::uint64_t> sig;
  for (auto [gen, w] : g.out(v)) {
    sig.push_back((static_cast<std::uint64_t>(gen) << 2) | (w == v ? 2 : 0) | 0);
  }
  for (auto [gen, w] : g.in(v)) {
    sig.push_back((static_cast<std::uint64_t>(gen) << 2) | (w == v ? 2 : 0) | 1);
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace

std::vector<GraphMorphism> automorphisms(const InverseWordGraph& g) {
  if (g.vertex_count() == 0) return {};
  if (!g.connected_from(g.root())) {
    throw InvalidArgument("automorphisms: graph not connected");
  }
  // Group vertices by signature; extend from a member of the rarest class.
  std::map<std::vector<std::uint64_t>, std::vector<std::uint32_t>> classes;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    classes[vertex_signature(g, v)].push_back(v);
  }
  const std::vector<std::uint32_t>* best = nullptr;
  for (const auto& [sig, members] : classes) {
    if (!best || members.size() < best->size()) best = &members;
  }
  std::uint32_t base = (*best)[0];

  std::vector<GraphMorphism> result;
  std::vector<char> seen(g.vertex_count(), 0);
  for (std::uint32_t cand : *best) {
    auto r = find_morphism(g, g, base, cand);
    if (!r.morphism) continue;
    auto& map = r.morphism->map;
    std::fill(seen.begin(), seen.end(), 0);
    bool bijective = true;
    for (auto m : map) {
      if (seen[m]) {
        bijective = false;
        break;
      }
      seen[m] = 1;
    }
    if (!bijective) continue;
    bool identity = true;
    bool fixes_any = false;
    for (std::uint32_t v = 0; v < map.size(); ++v) {
      if (map[v] == v) {
        fixes_any = true;
      } else {
        identity = false;
      }
    }
    if (!identity && fixes_any) {
      throw std::logic_error("automorphisms: non-identity automorphism with a fixed point");
    }
    result.push_back(std::move(*r.morphism));
  }
  return result;
}

std::string canonical_form(const InverseWordGraph& g, std::uint32_t base,
                           const std::vector<std::uint32_t>* label_rank) {
  if (g.vertex_count() == 0) return "empty";
  if (base >= g.vertex_count()) {
    throw InvalidArgument("canonical_form: base out of range");
  }
  auto rank = [&](std::uint32_t gen) {
    return label_rank ? (*label_rank)[gen] : gen;
  };
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> id(g.vertex_count(), kUnset);
  std::vector<std::uint32_t> order;
  order.reserve(g.vertex_count());
  id[base] = 0;
  order.push_back(base);
  // Deterministic BFS: per vertex, neighbors in label-rank order, positive
  // direction before negative.
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::uint32_t v = order[i];
    std::vector<std::tuple<std::uint32_t, int, std::uint32_t>> nbrs;
    for (auto [gen, w] : g.out(v)) nbrs.emplace_back(rank(gen), 0, w);
    for (auto [gen, w] : g.in(v)) nbrs.emplace_back(rank(gen), 1, w);
    std::sort(nbrs.begin(), nbrs.end());
    for (auto& [r, d, w] : nbrs) {
      if (id[w] == kUnset) {
        id[w] = static_cast<std::uint32_t>(order.size());
        order.push_back(w);
      }
    }
  }
  if (order.size() != g.vertex_count()) {
    throw InvalidArgument("canonical_form: graph not connected from base");
  }
  std::ostringstream os;
  os << "n=" << g.vertex_count();
  if (g.terminal()) os << ";t=" << id[*g.terminal()];
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    std::uint32_t v = order[i];
    std::vector<std::tuple<std::uint32_t, std::uint32_t>> row;
    for (auto [gen, w] : g.out(v)) row.emplace_back(rank(gen), id[w]);
    std::sort(row.begin(), row.end());
    os << ";" << i << ":";
    for (auto& [r, w] : row) os << r << ">" << w << ",";
  }
  return os.str();
}

Ball ball(const InverseWordGraph& g, const std::vector<std::uint32_t>& centers,
          std::size_t radius) {
  constexpr std::uint32_t kInf = 0xffffffffu;
  std::vector<std::uint32_t> dist(g.vertex_count(), kInf);
  std::queue<std::uint32_t> q;
  for (auto c : centers) {
    if (c >= g.vertex_count()) throw InvalidArgument("ball: center out of range");
    if (dist[c] != 0) {
      dist[c] = 0;
      q.push(c);
    }
  }
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    if (dist[v] == radius) continue;
    auto visit = [&](std::uint32_t w) {
      if (dist[w] == kInf) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    };
    for (auto [gen, w] : g.out(v)) visit(w);
    for (auto [gen, w] : g.in(v)) visit(w);
  }

  Ball b;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] != kInf) {
      b.to_ball.emplace(v, static_cast<std::uint32_t>(b.to_base.size()));
      b.to_base.push_back(v);
      b.graph.add_vertex();
    }
  }
  for (std::uint32_t v : b.to_base) {
    for (auto [gen, w] : g.out(v)) {
      auto it = b.to_ball.find(w);
      if (it != b.to_ball.end()) {
        b.graph.add_edge(b.to_ball.at(v), gen, it->second);
      }
    }
  }
  auto map = b.graph.fold();  // already folded; normalizes adjacency order
  (void)map;
  if (auto it = b.to_ball.find(g.root()); it != b.to_ball.end()) {
    b.graph.set_root(it->second);
  }
  if (g.terminal()) {
    if (auto it = b.to_ball.find(*g.terminal()); it != b.to_ball.end()) {
      b.graph.set_terminal(it->second);
    }
  }
  return b;
}

std::vector<std::uint32_t> name_order_ranks(const Alphabet& a) {
  std::vector<std::uint32_t> rank(a.size());
  const auto& sorted = a.sorted();
  for (std::uint32_t i = 0; i < sorted.size(); ++i) rank[sorted[i]] = i;
  return rank;
}

namespace {

// Canonical renumbering shared by the exporters: BFS from root in label
// name order, positive direction first.
std::vector<std::uint32_t> canonical_ids(const InverseWordGraph& g, const Alphabet& a) {
  auto ranks = name_order_ranks(a);
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> id(g.vertex_count(), kUnset);
  std::vector<std::uint32_t> order;
  id[g.root()] = 0;
  order.push_back(g.root());
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::uint32_t v = order[i];
    std::vector<std::tuple<std::uint32_t, int, std::uint32_t>> nbrs;
    for (auto [gen, w] : g.out(v)) nbrs.emplace_back(ranks[gen], 0, w);
    for (auto [gen, w] : g.in(v)) nbrs.emplace_back(ranks[gen], 1, w);
    std::sort(nbrs.begin(), nbrs.end());
    for (auto& [r, d, w] : nbrs) {
      if (id[w] == kUnset) {
        id[w] = static_cast<std::uint32_t>(order.size());
        order.push_back(w);
      }
    }
  }
  if (order.size() != g.vertex_count()) {
    throw InvalidArgument("export: graph not connected from root");
  }
  return id;
}

}  // namespace

std::string export_dot(const InverseWordGraph& g, const Alphabet& a) {
  auto id = canonical_ids(g, a);
  std::vector<LabeledEdge> es;
  for (auto e : g.edges()) es.push_back({id[e.src], e.gen, id[e.dst]});
  std::sort(es.begin(), es.end(), [&](const LabeledEdge& x, const LabeledEdge& y) {
    if (x.src != y.src) return x.src < y.src;
    if (a.name(x.gen) != a.name(y.gen)) return a.name(x.gen) < a.name(y.gen);
    return x.dst < y.dst;
  });
  std::ostringstream os;
  os << "digraph schutzenberger {\n  rankdir=LR;\n";
  std::uint32_t root = id[g.root()];
  std::optional<std::uint32_t> term;
  if (g.terminal()) term = id[*g.terminal()];
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    os << "  " << v << " [shape=" << (v == root ? "doublecircle" : "circle");
    if (term && *term == v && *term != root) os << ", peripheries=3";
    os << "];\n";
  }
  for (const auto& e : es) {
    os << "  " << e.src << " -> " << e.dst << " [label=\"" << a.name(e.gen) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const InverseWordGraph& g, const Alphabet& a) {
  auto id = canonical_ids(g, a);
  nlohmann::ordered_json j;
  j["root"] = id[g.root()];
  if (g.terminal()) j["terminal"] = id[*g.terminal()];
  std::vector<std::uint32_t> verts(g.vertex_count());
  for (std::uint32_t i = 0; i < verts.size(); ++i) verts[i] = i;
  j["vertices"] = verts;
  std::vector<std::tuple<std::uint32_t, std::string, std::uint32_t>> es;
  for (auto e : g.edges()) es.emplace_back(id[e.src], a.name(e.gen), id[e.dst]);
  std::sort(es.begin(), es.end());
  auto arr = nlohmann::ordered_json::array();
  for (auto& [s, l, d] : es) arr.push_back(nlohmann::ordered_json::array({s, l, d}));
  j["edges"] = arr;
  return j.dump();
}

InverseWordGraph import_json(const Alphabet& a, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph json: ") + e.what(), 1, 1);
  }
  InverseWordGraph g;
  if (!j.contains("vertices") || !j.contains("edges") || !j.contains("root")) {
    throw ParseError("graph json missing root/vertices/edges", 1, 1);
  }
  std::size_t n = j["vertices"].size();
  if (n == 0) throw ParseError("graph json has no vertices", 1, 1);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex();
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3) throw ParseError("bad edge entry", 1, 1);
    std::uint32_t s = e[0].get<std::uint32_t>();
    std::string lbl = e[1].get<std::string>();
    std::uint32_t d = e[2].get<std::uint32_t>();
    auto gen = a.find(lbl);
    if (!gen) throw ParseError("unknown edge label \"" + lbl + "\"", 1, 1);
    if (s >= n || d >= n) throw ParseError("edge endpoint out of range", 1, 1);
    g.add_edge(s, *gen, d);
  }
  std::uint32_t root = j["root"].get<std::uint32_t>();
  if (root >= n) throw ParseError("root out of range", 1, 1);
  std::size_t before = g.vertex_count();
  std::size_t edges_before = g.edge_count();
  auto map = g.fold();
  if (g.vertex_count() != before || g.edge_count() != edges_before) {
    throw ParseError("graph json violates (co)determinism", 1, 1);
  }
  g.set_root(map[root]);
  if (j.contains("terminal")) {
    std::uint32_t t = j["terminal"].get<std::uint32_t>();
    if (t >= n) throw ParseError("terminal out of range", 1, 1);
    g.set_terminal(map[t]);
  }
  if (!g.connected_from(g.root())) {
    throw ParseError("graph json not connected from root", 1, 1);
  }
  return g;
}

}  // namespace simon::igraph
