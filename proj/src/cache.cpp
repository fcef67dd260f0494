#include "simon/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "simon/errors.hpp"
#include "simon/igraph.hpp"

namespace simon::cache {

namespace fs = std::filesystem;

namespace {

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

std::string Store::key_prefix(const Presentation& p, const Word& w) const {
  return words::presentation_hash(p) + "-" + fnv_hex(words::format_word(p.alphabet, w));
}

void Store::put(const Approximation& a) const {
  fs::create_directories(dir_);
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["presentation"] = words::format_presentation(a.pres);
  j["word"] = words::format_word(a.pres.alphabet, a.word);
  j["rounds"] = a.rounds;
  j["graph"] = nlohmann::ordered_json::parse(igraph::export_json(a.graph, a.pres.alphabet));
  fs::path final_path =
      fs::path(dir_) / (key_prefix(a.pres, a.word) + "-r" + std::to_string(a.rounds) + ".json");
  fs::path tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
  }
  fs::rename(tmp, final_path);  // last writer wins
}

std::optional<Approximation> Store::get_best(const Presentation& p, const Word& w,
                                             int rounds) const {
  if (!fs::exists(dir_)) return std::nullopt;
  std::string prefix = key_prefix(p, w) + "-r";
  int best = -1;
  fs::path best_path;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    auto name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0) continue;
    auto rest = name.substr(prefix.size());
    auto dot = rest.find(".json");
    if (dot == std::string::npos) continue;
    int r = -1;
    try {
      r = std::stoi(rest.substr(0, dot));
    } catch (...) {
      continue;
    }
    if (r <= rounds && r > best) {
      best = r;
      best_path = entry.path();
    }
  }
  if (best < 0) return std::nullopt;

  try {
    std::ifstream in(best_path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto j = nlohmann::json::parse(buf.str());
    if (j.at("presentation").get<std::string>() != words::format_presentation(p) ||
        j.at("word").get<std::string>() != words::format_word(p.alphabet, w)) {
      return std::nullopt;  // hash collision; treat as a miss
    }
    Approximation a;
    a.pres = p;
    a.word = w;
    a.rounds = j.at("rounds").get<int>();
    a.graph = igraph::import_json(p.alphabet, j.at("graph").dump());
    return a;
  } catch (const std::exception& e) {
    std::cerr << "warning: evicting corrupt cache entry " << best_path.string() << " ("
              << e.what() << ")\n";
    std::error_code ec;
    fs::remove(best_path, ec);
    return std::nullopt;
  }
}

Approximation cached_approximate(const std::optional<Store>& store, const Presentation& p,
                                 const Word& w, int rounds, const Limits& limits) {
  if (!store) return stephen::approximate(p, w, rounds, limits);
  auto best = store->get_best(p, w, rounds);
  Approximation a;
  bool stored_exact = false;
  if (best) {
    int have = best->rounds;
    stored_exact = have == rounds;
    a = stephen::refine(std::move(*best), rounds - have, limits);
  } else {
    a = stephen::approximate(p, w, rounds, limits);
  }
  if (!stored_exact) store->put(a);
  return a;
}

}  // namespace simon::cache
