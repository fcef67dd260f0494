#include "simon/blocks.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "simon/errors.hpp"

namespace simon::blocks {

bool Preblock::contains_vertex(std::uint32_t v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Preblock::contains_edge(const LabeledEdge& e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

BlockCover lambda_cover(const Presentation& p, const Word& w, int rounds,
                        const Limits& limits) {
  auto munn = InverseWordGraph::munn_tree(w, limits.vertex_cap);
  auto sg1 = stephen::approximate(p, {}, rounds, limits);
  const std::size_t m = munn.vertex_count();
  const std::size_t copy_n = sg1.graph.vertex_count();

  // First (shortest) prefix of w reaching each Munn vertex.
  std::vector<std::optional<std::size_t>> prefix_len(m);
  {
    std::uint32_t cur = munn.root();
    prefix_len[cur] = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      cur = *munn.step(cur, w[i]);
      if (!prefix_len[cur]) prefix_len[cur] = i + 1;
    }
  }

  // Glue one copy of the identity graph at every Munn vertex.
  InverseWordGraph big;
  if (m + m * (copy_n - 1) > limits.vertex_cap) {
    throw ResourceError("lambda_cover: vertex cap exceeded");
  }
  for (std::size_t i = 0; i < m; ++i) big.add_vertex();
  for (const auto& e : munn.edges()) big.add_edge(e.src, e.gen, e.dst);

  std::vector<std::vector<std::uint32_t>> copy_ids(m);
  for (std::uint32_t mv = 0; mv < m; ++mv) {
    std::vector<std::uint32_t> ids(copy_n);
    for (std::uint32_t u = 0; u < copy_n; ++u) {
      ids[u] = (u == sg1.graph.root()) ? mv : big.add_vertex();
    }
    for (const auto& e : sg1.graph.edges()) {
      big.add_edge(ids[e.src], e.gen, ids[e.dst]);
    }
    copy_ids[mv] = std::move(ids);
  }

  std::uint32_t root0 = munn.root();
  std::uint32_t term0 = *munn.terminal();
  auto map = big.fold();
  big.set_root(map[root0]);
  big.set_terminal(map[term0]);

  BlockCover cover;
  cover.rounds = rounds;
  cover.base.pres = p;
  cover.base.word = w;
  cover.base.graph = std::move(big);
  cover.base.rounds = rounds;

  for (std::uint32_t mv = 0; mv < m; ++mv) {
    Preblock pb;
    pb.root = map[mv];
    auto len = *prefix_len[mv];
    pb.prefix = Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
    for (auto id : copy_ids[mv]) pb.vertices.push_back(map[id]);
    std::sort(pb.vertices.begin(), pb.vertices.end());
    pb.vertices.erase(std::unique(pb.vertices.begin(), pb.vertices.end()),
                      pb.vertices.end());
    pb.injective = pb.vertices.size() == copy_n;
    for (const auto& e : sg1.graph.edges()) {
      pb.edges.push_back({map[copy_ids[mv][e.src]], e.gen, map[copy_ids[mv][e.dst]]});
    }
    std::sort(pb.edges.begin(), pb.edges.end());
    pb.edges.erase(std::unique(pb.edges.begin(), pb.edges.end()), pb.edges.end());
    cover.preblocks.push_back(std::move(pb));
  }

  // Maximality by root subsumption among injective preblocks. A preblock
  // is dominated when its root lies in another's image; mutual domination
  // means equal infinite images, and the earliest prefix is kept.
  const std::size_t k = cover.preblocks.size();
  std::vector<char> dominated(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    if (!cover.preblocks[j].injective) continue;
    for (std::size_t i = 0; i < k && !dominated[j]; ++i) {
      if (i == j || !cover.preblocks[i].injective) continue;
      if (!cover.preblocks[i].contains_vertex(cover.preblocks[j].root)) continue;
      bool mutual = cover.preblocks[j].contains_vertex(cover.preblocks[i].root);
      if (!mutual || i < j) dominated[j] = 1;
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (cover.preblocks[j].injective && !dominated[j]) cover.blocks.push_back(j);
  }

  // Edges covered by no (injective) preblock image.
  for (const auto& e : cover.base.graph.edges()) {
    bool covered = false;
    for (const auto& pb : cover.preblocks) {
      if (pb.injective && pb.contains_edge(e)) {
        covered = true;
        break;
      }
    }
    if (!covered) cover.uncovered.push_back(e);
  }
  return cover;
}

std::vector<LabeledEdge> cut_edges(const InverseWordGraph& g) {
  // Tarjan bridge finding on the underlying undirected multigraph; edge
  // identity is (src, gen, dst), parallel edges can't be bridges.
  struct Adj {
    std::uint32_t to;
    std::size_t edge_idx;
  };
  auto edge_list = g.edges();
  std::vector<std::vector<Adj>> adj(g.vertex_count());
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const auto& e = edge_list[i];
    adj[e.src].push_back({e.dst, i});
    if (e.dst != e.src) adj[e.dst].push_back({e.src, i});
  }
  std::vector<std::uint32_t> tin(g.vertex_count(), 0), low(g.vertex_count(), 0);
  std::vector<char> visited(g.vertex_count(), 0);
  std::vector<char> bridge(edge_list.size(), 0);
  std::uint32_t timer = 1;

  // iterative DFS
  struct Frame {
    std::uint32_t v;
    std::size_t idx;
    std::size_t via_edge;
  };
  std::vector<Frame> stack;
  for (std::uint32_t s = 0; s < g.vertex_count(); ++s) {
    if (visited[s]) continue;
    stack.push_back({s, 0, static_cast<std::size_t>(-1)});
    visited[s] = 1;
    tin[s] = low[s] = timer++;
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.idx < adj[f.v].size()) {
        auto [to, eidx] = adj[f.v][f.idx++];
        if (eidx == f.via_edge) continue;  // don't reuse the entering edge
        if (visited[to]) {
          low[f.v] = std::min(low[f.v], tin[to]);
        } else {
          visited[to] = 1;
          tin[to] = low[to] = timer++;
          stack.push_back({to, 0, eidx});
        }
      } else {
        auto done = f;
        stack.pop_back();
        if (!stack.empty()) {
          auto& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > tin[parent.v]) bridge[done.via_edge] = 1;
        }
      }
    }
  }
  std::vector<LabeledEdge> out;
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    if (bridge[i]) out.push_back(edge_list[i]);
  }
  return out;
}

std::vector<LabeledEdge> word_path_edges(const InverseWordGraph& g, const Word& w) {
  std::vector<LabeledEdge> out;
  std::uint32_t cur = g.root();
  for (const auto& s : w) {
    auto next = g.step(cur, s);
    if (!next) throw InvalidArgument("word_path_edges: word not readable from root");
    if (!s.inv) {
      out.push_back({cur, s.gen, *next});
    } else {
      out.push_back({*next, s.gen, cur});
    }
    cur = *next;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CoverLawReport verify_cover_laws(const BlockCover& c) {
  CoverLawReport rep;
  for (std::size_t i = 0; i < c.preblocks.size(); ++i) {
    if (!c.preblocks[i].injective) rep.noninjective_copies.push_back(i);
  }
  for (std::uint32_t v = 0; v < c.base.graph.vertex_count(); ++v) {
    bool covered = false;
    for (const auto& pb : c.preblocks) {
      if (pb.injective && pb.contains_vertex(v)) {
        covered = true;
        break;
      }
    }
    if (!covered) rep.uncovered_vertices.push_back(v);
  }
  auto bridges = cut_edges(c.base.graph);
  auto on_path = word_path_edges(c.base.graph, c.base.word);
  for (const auto& e : c.uncovered) {
    if (!std::binary_search(bridges.begin(), bridges.end(), e)) {
      rep.noncut_uncovered.push_back(e);
    }
    if (!std::binary_search(on_path.begin(), on_path.end(), e)) {
      rep.offpath_uncovered.push_back(e);
    }
  }
  for (const auto& idx : c.blocks) {
    const auto& pb = c.preblocks[idx];
    auto end = c.base.graph.read(c.base.graph.root(), pb.prefix);
    if (!end || *end != pb.root) rep.roots_are_prefix_images = false;
  }
  return rep;
}

BlockAction block_action(const BlockCover& c) {
  BlockAction act;
  const auto& g = c.base.graph;
  std::vector<std::uint32_t> centers{g.root()};
  if (g.terminal() && *g.terminal() != g.root()) centers.push_back(*g.terminal());
  act.ball = igraph::ball(g, centers, static_cast<std::size_t>(c.rounds));
  act.truncation_connected = act.ball.graph.connected_from(act.ball.graph.root());
  if (!act.truncation_connected) {
    act.all_blocks_permuted = false;
    return act;
  }
  act.automorphisms = igraph::automorphisms(act.ball.graph);

  for (const auto& aut : act.automorphisms) {
    std::vector<std::size_t> perm;
    bool ok = true;
    for (auto bidx : c.blocks) {
      std::uint32_t root = c.preblocks[bidx].root;
      auto it = act.ball.to_ball.find(root);
      if (it == act.ball.to_ball.end()) {
        ok = false;
        break;
      }
      std::uint32_t image = act.ball.to_base[aut.map[it->second]];
      bool assigned = false;
      for (std::size_t j = 0; j < c.blocks.size(); ++j) {
        if (c.preblocks[c.blocks[j]].root == image) {
          perm.push_back(j);
          assigned = true;
          break;
        }
      }
      if (!assigned) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      act.all_blocks_permuted = false;
      act.permutations.emplace_back();
    } else {
      act.permutations.push_back(std::move(perm));
    }
  }

  if (!c.blocks.empty()) {
    const auto& block0 = c.preblocks[c.blocks[0]];
    for (std::size_t a = 0; a < act.automorphisms.size(); ++a) {
      if (act.permutations[a].empty() || act.permutations[a][0] != 0) continue;
      ++act.stabilizer_order;
      // The stabilizer must restrict to a symmetry of block 0; checked on
      // the part of the block inside the ball.
      for (auto v : block0.vertices) {
        auto it = act.ball.to_ball.find(v);
        if (it == act.ball.to_ball.end()) continue;
        std::uint32_t image = act.ball.to_base[act.automorphisms[a].map[it->second]];
        if (!block0.contains_vertex(image)) act.restriction_ok = false;
      }
    }
    if (act.stabilizer_order > 0) {
      act.stabilizer_index = act.automorphisms.size() / act.stabilizer_order;
    }
  }
  return act;
}

DisjointnessReport disjointness_report(const BlockCover& c) {
  DisjointnessReport rep;
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < c.blocks.size(); ++j) {
      const auto& a = c.preblocks[c.blocks[i]].vertices;
      const auto& b = c.preblocks[c.blocks[j]].vertices;
      std::vector<std::uint32_t> shared;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(shared));
      if (!shared.empty()) {
        rep.pairwise_disjoint = false;
        rep.overlaps.emplace_back(i, j, shared.size());
      }
    }
  }
  rep.uncovered_count = c.uncovered.size();
  if (rep.uncovered_count > 0) {
    unsigned long long bound = 1;
    for (std::size_t i = 2; i <= std::min<std::size_t>(rep.uncovered_count, 20); ++i) {
      bound *= i;
    }
    rep.order_bound = bound;
    auto act = block_action(c);
    rep.automorphism_order = act.order();
    rep.bound_ok = rep.uncovered_count > 20 || act.order() <= bound;
  }
  return rep;
}

}  // namespace simon::blocks
