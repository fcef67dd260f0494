// Command-line driver for computing with finitely presented special
// inverse monoids: Schutzenberger approximations, unit classification,
// injectivity analysis of the maximal group image, block covers, and the
// finite-group synthesis pipeline.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "simon/blocks.hpp"
#include "simon/cache.hpp"
#include "simon/errors.hpp"
#include "simon/gimage.hpp"
#include "simon/green.hpp"
#include "simon/synth.hpp"

using json = nlohmann::ordered_json;
using namespace simon;

namespace {

constexpr int kSchemaVersion = 1;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << content;
}

struct Common {
  std::string pres_path;
  int rounds = 2;
  std::size_t vertex_cap = igraph::InverseWordGraph::kDefaultCap;
  std::string cache_dir;
  std::string out_path;

  stephen::Limits limits() const { return {vertex_cap}; }
  std::optional<cache::Store> store() const {
    std::string dir = cache_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("SIMON_CACHE_DIR")) dir = env;
    }
    if (dir.empty()) return std::nullopt;
    return cache::Store(dir);
  }
  words::Presentation presentation() const {
    return words::parse_presentation(slurp(pres_path));
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_pres = true) {
  if (with_pres) {
    cmd->add_option("--pres", c.pres_path, "presentation file")->required();
  }
  cmd->add_option("--rounds", c.rounds, "expansion round budget")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--vertex-cap", c.vertex_cap, "abort when the graph exceeds this size");
  cmd->add_option("--cache", c.cache_dir,
                  "approximation cache directory (env SIMON_CACHE_DIR)");
  cmd->add_option("--out", c.out_path, "write the JSON report here as well");
}

json verdict_json(const stephen::Certificate& c) {
  json j;
  j["verdict"] = c.yes() ? "yes" : "unknown";
  j["rounds"] = c.rounds;
  return j;
}

// exit 0 = certified/ok, 2 = unknown-dominated, 1 = error
int finish(const Common& c, json& report, bool unknown_dominated) {
  report["schema_version"] = kSchemaVersion;
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!c.out_path.empty()) spit(c.out_path, text);
  return unknown_dominated ? 2 : 0;
}

json word_list(const words::Alphabet& a, const std::vector<words::Word>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back(words::format_word(a, w));
  return arr;
}

int run_sgraph(const Common& c, const std::string& word_text, const std::string& dot_path,
               const std::string& json_path) {
  auto p = c.presentation();
  auto w = words::parse_word(p.alphabet, word_text);
  auto a = cache::cached_approximate(c.store(), p, w, c.rounds, c.limits());
  json rep;
  rep["command"] = "sgraph";
  rep["presentation"] = words::format_presentation(p);
  rep["word"] = words::format_word(p.alphabet, w);
  rep["rounds"] = a.rounds;
  rep["vertices"] = a.graph.vertex_count();
  rep["edges"] = a.graph.edge_count();
  rep["graph"] = json::parse(igraph::export_json(a.graph, p.alphabet));
  if (!dot_path.empty()) spit(dot_path, igraph::export_dot(a.graph, p.alphabet));
  if (!json_path.empty()) spit(json_path, igraph::export_json(a.graph, p.alphabet) + "\n");
  return finish(c, rep, false);
}

int run_classify(const Common& c, const std::string& word_text) {
  auto p = c.presentation();
  auto w = words::parse_word(p.alphabet, word_text);
  auto sg1 = cache::cached_approximate(c.store(), p, {}, c.rounds, c.limits());
  auto r = green::is_right_unit(sg1, w);
  auto l = green::is_left_unit(sg1, w);
  auto h = green::is_unit(sg1, w);
  auto d = green::in_D1(sg1, w);
  json rep;
  rep["command"] = "classify";
  rep["presentation"] = words::format_presentation(p);
  rep["word"] = words::format_word(p.alphabet, w);
  rep["rounds"] = c.rounds;
  rep["r1"] = verdict_json(r.cert);
  rep["l1"] = verdict_json(l.cert);
  rep["h1"] = verdict_json(h.cert);
  rep["d1"] = verdict_json(d.cert);
  if (d.split) rep["d1"]["split"] = *d.split;
  if (w.size() == 1 && !w[0].inv) {
    auto dich = green::generator_dichotomy(p, w[0].gen, c.rounds, c.limits());
    rep["generator_dichotomy"] = json{{"right", dich.right.yes() ? "yes" : "unknown"},
                                      {"left", dich.left.yes() ? "yes" : "unknown"},
                                      {"consistent", dich.consistent}};
  }
  bool unknown = !r.yes() || !l.yes() || !h.yes() || !d.yes();
  return finish(c, rep, unknown);
}

int run_equal(const Common& c, const std::string& u_text, const std::string& v_text) {
  auto p = c.presentation();
  auto u = words::parse_word(p.alphabet, u_text);
  auto v = words::parse_word(p.alphabet, v_text);
  auto store = c.store();
  auto au = cache::cached_approximate(store, p, u, c.rounds, c.limits());
  auto av = cache::cached_approximate(store, p, v, c.rounds, c.limits());
  auto ev = au.graph.read(au.graph.root(), v);
  auto eu = av.graph.read(av.graph.root(), u);
  bool yes = ev && *ev == *au.graph.terminal() && eu && *eu == *av.graph.terminal();
  json rep;
  rep["command"] = "equal";
  rep["presentation"] = words::format_presentation(p);
  rep["u"] = words::format_word(p.alphabet, u);
  rep["v"] = words::format_word(p.alphabet, v);
  rep["rounds"] = c.rounds;
  rep["verdict"] = yes ? "yes" : "unknown";
  return finish(c, rep, !yes);
}

int run_idempotent(const Common& c, const std::string& word_text) {
  auto p = c.presentation();
  auto w = words::parse_word(p.alphabet, word_text);
  auto a = cache::cached_approximate(c.store(), p, w, c.rounds, c.limits());
  bool yes = a.graph.terminal() && *a.graph.terminal() == a.graph.root();
  json rep;
  rep["command"] = "idempotent";
  rep["presentation"] = words::format_presentation(p);
  rep["word"] = words::format_word(p.alphabet, w);
  rep["rounds"] = c.rounds;
  rep["verdict"] = yes ? "yes" : "unknown";
  return finish(c, rep, !yes);
}

int run_roi(const Common& c, const std::string& hom_path) {
  auto p = c.presentation();
  auto loaded = gimage::hom_from_json(p, slurp(hom_path));
  auto sg1 = cache::cached_approximate(c.store(), p, {}, c.rounds, c.limits());
  auto rep_roi = gimage::roi_check(p, loaded.hom, sg1);
  auto flags = gimage::check_condition_vi(p, loaded.hom, sg1);
  json rep;
  rep["command"] = "roi";
  rep["presentation"] = words::format_presentation(p);
  rep["rounds"] = c.rounds;
  if (rep_roi.injective) {
    rep["result"] = json{{"verdict", "injective_up_to"}, {"rounds", rep_roi.rounds}};
  } else {
    rep["result"] = json{
        {"verdict", "candidate_witness"},
        {"rounds", rep_roi.rounds},
        {"witness",
         json::array({words::format_word(p.alphabet, rep_roi.witness_u),
                      words::format_word(p.alphabet, rep_roi.witness_v)})}};
  }
  json flagged = json::array();
  for (const auto& e : flags) {
    flagged.push_back(json{{"source", e.src},
                           {"label", p.alphabet.name(e.gen)},
                           {"target", e.dst}});
  }
  rep["condition_vi_flags"] = flagged;
  return finish(c, rep, !rep_roi.injective);
}

int run_blocks(const Common& c, const std::string& word_text, const std::string& dot_path,
               const std::string& json_path) {
  auto p = c.presentation();
  auto w = words::parse_word(p.alphabet, word_text);
  auto cover = blocks::lambda_cover(p, w, c.rounds, c.limits());
  auto laws = blocks::verify_cover_laws(cover);
  auto action = blocks::block_action(cover);
  auto dis = blocks::disjointness_report(cover);

  json rep;
  rep["command"] = "blocks";
  rep["presentation"] = words::format_presentation(p);
  rep["word"] = words::format_word(p.alphabet, w);
  rep["rounds"] = c.rounds;
  json blist = json::array();
  for (auto bidx : cover.blocks) {
    const auto& pb = cover.preblocks[bidx];
    blist.push_back(json{{"root", pb.root},
                         {"prefix", words::format_word(p.alphabet, pb.prefix)},
                         {"vertices", pb.vertices.size()},
                         {"edges", pb.edges.size()}});
  }
  rep["blocks"] = blist;
  json unc = json::array();
  for (const auto& e : cover.uncovered) {
    unc.push_back(json::array({e.src, p.alphabet.name(e.gen), e.dst}));
  }
  rep["uncovered"] = unc;
  rep["laws"] = json{{"ok", laws.ok()},
                     {"uncovered_vertices", laws.uncovered_vertices.size()},
                     {"noninjective_copies", laws.noninjective_copies.size()},
                     {"noncut_uncovered", laws.noncut_uncovered.size()},
                     {"offpath_uncovered", laws.offpath_uncovered.size()},
                     {"roots_are_prefix_images", laws.roots_are_prefix_images}};
  json perms = json::array();
  for (const auto& perm : action.permutations) {
    perms.push_back(perm);
  }
  rep["action"] = json{{"automorphism_order", action.order()},
                       {"truncation_connected", action.truncation_connected},
                       {"all_blocks_permuted", action.all_blocks_permuted},
                       {"stabilizer_order", action.stabilizer_order},
                       {"stabilizer_index", action.stabilizer_index},
                       {"restriction_ok", action.restriction_ok},
                       {"permutations", perms}};
  json dj;
  dj["pairwise_disjoint"] = dis.pairwise_disjoint;
  json overlaps = json::array();
  for (auto [i, j2, n] : dis.overlaps) {
    overlaps.push_back(json{{"blocks", json::array({i, j2})}, {"shared_vertices", n}});
  }
  dj["overlaps"] = overlaps;
  dj["uncovered_count"] = dis.uncovered_count;
  if (dis.automorphism_order) dj["automorphism_order"] = *dis.automorphism_order;
  if (dis.order_bound) dj["order_bound"] = *dis.order_bound;
  dj["bound_ok"] = dis.bound_ok;
  rep["disjointness"] = dj;

  if (!dot_path.empty()) {
    // blocks colored by index
    static const char* palette[] = {"lightblue", "lightgreen", "lightsalmon",
                                    "khaki",     "plum",       "lightgray"};
    std::ostringstream os;
    os << "digraph blocks {\n  rankdir=LR;\n";
    for (std::uint32_t v = 0; v < cover.base.graph.vertex_count(); ++v) {
      std::string color;
      for (std::size_t b = 0; b < cover.blocks.size(); ++b) {
        if (cover.preblocks[cover.blocks[b]].contains_vertex(v)) {
          color = palette[b % 6];
          break;
        }
      }
      os << "  " << v << " [shape="
         << (v == cover.base.graph.root() ? "doublecircle" : "circle");
      if (!color.empty()) os << ", style=filled, fillcolor=" << color;
      os << "];\n";
    }
    for (const auto& e : cover.base.graph.edges()) {
      bool covered = false;
      for (const auto& pb : cover.preblocks) {
        if (pb.injective && pb.contains_edge(e)) {
          covered = true;
          break;
        }
      }
      os << "  " << e.src << " -> " << e.dst << " [label=\"" << p.alphabet.name(e.gen)
         << "\"";
      if (!covered) os << ", style=bold, color=red";
      os << "];\n";
    }
    os << "}\n";
    spit(dot_path, os.str());
  }
  if (!json_path.empty()) {
    json cj;
    json cblocks = json::array();
    for (auto bidx : cover.blocks) {
      const auto& pb = cover.preblocks[bidx];
      json edges = json::array();
      for (const auto& e : pb.edges) {
        edges.push_back(json::array({e.src, p.alphabet.name(e.gen), e.dst}));
      }
      cblocks.push_back(json{{"root", pb.root},
                             {"prefix", words::format_word(p.alphabet, pb.prefix)},
                             {"vertices", pb.vertices},
                             {"edges", edges}});
    }
    cj["blocks"] = cblocks;
    cj["uncovered"] = unc;
    spit(json_path, cj.dump(2) + "\n");
  }
  return finish(c, rep, false);
}

int run_synth(const Common& c, const std::string& group_path, const std::string& pres_out,
              const std::string& hom_out) {
  auto table = gimage::FiniteGroupTable::from_json(slurp(group_path));
  auto s = synth::synthesize(table);
  auto report = synth::verify_synthesis(s, c.rounds, c.limits());
  json rep;
  rep["command"] = "synth";
  rep["group_order"] = table.order();
  rep["rounds"] = c.rounds;
  rep["presentation"] = words::format_presentation(s.pres);
  rep["witness_word"] = words::format_word(s.pres.alphabet, s.witness);
  rep["witness_length"] = s.witness.size();
  rep["relator_count"] = s.pres.relators.size();
  rep["checks"] = json{{"root_characterized", report.root_characterized},
                       {"no_x_in_y_out", report.no_x_in_y_out},
                       {"trivial_units", report.trivial_units},
                       {"morphism_to_model", report.morphism_to_model},
                       {"morphism_from_model", report.morphism_from_model},
                       {"model_automorphism_order", report.model_aut_order},
                       {"roi_injective", report.roi_injective}};
  bool ok = report.all_passed(table.order());
  rep["all_checks_passed"] = ok;
  if (!pres_out.empty()) spit(pres_out, words::format_presentation(s.pres) + "\n");
  if (!hom_out.empty()) {
    // hom sidecar: oracle spec plus canonical element image per letter
    json hj;
    json fg = json::array();
    for (std::size_t i = 0; i < s.gen_elems.size(); ++i) {
      fg.push_back(s.pres.alphabet.name(s.x_letter[i]));
    }
    for (std::size_t ri = 0; ri < s.relations.size(); ++ri) {
      fg.push_back("l_" + std::to_string(ri));
    }
    hj["oracle"] = json{{"type", "free_product"},
                        {"left", json{{"type", "free"}, {"generators", fg}}},
                        {"right", json{{"type", "finite"},
                                       {"table", json::parse(table.to_json())}}}};
    json images;
    for (std::uint32_t g = 0; g < s.pres.alphabet.size(); ++g) {
      images[s.pres.alphabet.name(g)] = s.hom.images[g];
    }
    hj["images"] = images;
    spit(hom_out, hj.dump(2) + "\n");
  }
  return finish(c, rep, !ok);
}

int run_subgroup_word(const Common& c, const std::vector<std::string>& unit_texts,
                      const std::string& letter) {
  auto p = c.presentation();
  auto gen = p.alphabet.find(letter);
  if (!gen) throw InvalidArgument("unknown generator \"" + letter + "\"");
  std::vector<words::Word> units;
  for (const auto& t : unit_texts) units.push_back(words::parse_word(p.alphabet, t));
  auto rep_sw = synth::finite_subgroup_word(p, units, *gen, c.rounds, c.limits());
  json rep;
  rep["command"] = "subgroup-word";
  rep["presentation"] = words::format_presentation(p);
  rep["units"] = word_list(p.alphabet, units);
  rep["letter"] = letter;
  rep["rounds"] = c.rounds;
  rep["word"] = words::format_word(p.alphabet, rep_sw.word);
  rep["automorphism_order"] = rep_sw.automorphism_order;
  rep["block_count"] = rep_sw.block_count;
  rep["attached_blocks"] = rep_sw.attached_blocks;
  rep["uncovered_edges"] = rep_sw.uncovered_edges;
  rep["caveat"] = rep_sw.caveat;
  return finish(c, rep, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for finitely presented special inverse monoids"};
  app.require_subcommand(1);

  Common c_sgraph, c_classify, c_equal, c_idem, c_roi, c_blocks, c_synth, c_sub;
  std::string word_text, u_text, v_text, hom_path, group_path;
  std::string dot_path, json_path, pres_out, hom_out, letter;
  std::vector<std::string> unit_texts;

  auto* sgraph = app.add_subcommand("sgraph", "approximate a Schutzenberger graph");
  add_common(sgraph, c_sgraph);
  sgraph->add_option("--word", word_text, "base word (default: the identity)");
  sgraph->add_option("--dot", dot_path, "write a DOT rendering here");
  sgraph->add_option("--json", json_path, "write the graph JSON here");

  auto* classify = app.add_subcommand("classify", "classify a word against the unit classes");
  add_common(classify, c_classify);
  classify->add_option("--word", word_text)->required();

  auto* equal = app.add_subcommand("equal", "try to certify equality of two words");
  add_common(equal, c_equal);
  equal->add_option("--u", u_text)->required();
  equal->add_option("--v", v_text)->required();

  auto* idem = app.add_subcommand("idempotent", "try to certify idempotency");
  add_common(idem, c_idem);
  idem->add_option("--word", word_text)->required();

  auto* roi = app.add_subcommand("roi", "injectivity analysis of the maximal group image");
  add_common(roi, c_roi);
  roi->add_option("--hom", hom_path, "hom sidecar JSON")->required();

  auto* blk = app.add_subcommand("blocks", "block cover of a Schutzenberger approximation");
  add_common(blk, c_blocks);
  blk->add_option("--word", word_text)->required();
  blk->add_option("--dot", dot_path, "write a colored DOT rendering here");
  blk->add_option("--json", json_path, "write the cover JSON here");

  auto* syn = app.add_subcommand("synth", "realize a finite group as a maximal subgroup");
  add_common(syn, c_synth, /*with_pres=*/false);
  syn->add_option("--group", group_path, "finite group multiplication table JSON")->required();
  syn->add_option("--pres-out", pres_out, "write the synthesized presentation here");
  syn->add_option("--hom-out", hom_out, "write the hom sidecar here");

  auto* sub = app.add_subcommand("subgroup-word", "witness word for a finite subgroup of units");
  add_common(sub, c_sub);
  sub->add_option("--unit", unit_texts, "unit word (repeatable)")
      ->expected(-1)
      ->allow_extra_args(false);
  sub->add_option("--letter", letter, "generator that is not a certified one-sided unit")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sgraph->parsed()) return run_sgraph(c_sgraph, word_text, dot_path, json_path);
    if (classify->parsed()) return run_classify(c_classify, word_text);
    if (equal->parsed()) return run_equal(c_equal, u_text, v_text);
    if (idem->parsed()) return run_idempotent(c_idem, word_text);
    if (roi->parsed()) return run_roi(c_roi, hom_path);
    if (blk->parsed()) return run_blocks(c_blocks, word_text, dot_path, json_path);
    if (syn->parsed()) return run_synth(c_synth, group_path, pres_out, hom_out);
    if (sub->parsed()) return run_subgroup_word(c_sub, unit_texts, letter);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
