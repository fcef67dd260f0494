#include "simon/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace simon::words {

namespace {

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '\'') return false;
  }
  return true;
}

}  // namespace

std::uint32_t Alphabet::add(const std::string& name) {
  if (!valid_name(name)) {
    throw InvalidArgument("invalid generator name: \"" + name + "\"");
  }
  if (index_.count(name)) {
    throw InvalidArgument("duplicate generator: " + name);
  }
  auto id = static_cast<std::uint32_t>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  sorted_.push_back(id);
  std::sort(sorted_.begin(), sorted_.end(),
            [this](std::uint32_t x, std::uint32_t y) { return names_[x] < names_[y]; });
  return id;
}

std::optional<std::uint32_t> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SignedLetter inverse(SignedLetter s) { return {s.gen, !s.inv}; }

Word invert(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& s : w) {
    if (!out.empty() && out.back().gen == s.gen && out.back().inv != s.inv) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> tokenize(const std::string& text, bool commas_split) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::string cur;
  std::size_t cur_line = 1, cur_col = 1;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.push_back({cur, cur_line, cur_col});
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) ||
        (commas_split && c == ',')) {
      flush();
    } else {
      if (cur.empty()) {
        cur_line = line;
        cur_col = col;
      }
      cur.push_back(c);
    }
    ++col;
  }
  flush();
  return out;
}

SignedLetter parse_token(const Alphabet& a, const Token& t) {
  std::string name = t.text;
  bool inv = false;
  if (!name.empty() && name.back() == '\'') {
    inv = true;
    name.pop_back();
  }
  if (name.empty() || name.find('\'') != std::string::npos) {
    throw ParseError("malformed letter token \"" + t.text + "\"", t.line, t.col);
  }
  auto gen = a.find(name);
  if (!gen) {
    throw ParseError("undeclared generator \"" + name + "\"", t.line, t.col);
  }
  return {*gen, inv};
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  auto gens_pos = text.find("gens:");
  if (gens_pos == std::string::npos) {
    throw ParseError("missing \"gens:\" section", 1, 1);
  }
  auto semi_pos = text.find(';', gens_pos);
  if (semi_pos == std::string::npos) {
    throw ParseError("missing \";\" between gens and rels", 1, 1);
  }
  auto rels_pos = text.find("rels:", semi_pos);
  if (rels_pos == std::string::npos) {
    throw ParseError("missing \"rels:\" section", 1, 1);
  }

  Presentation p;
  std::string gens_part = text.substr(gens_pos + 5, semi_pos - gens_pos - 5);
  for (const auto& t : tokenize(gens_part, /*commas_split=*/true)) {
    if (!valid_name(t.text)) {
      throw ParseError("invalid generator name \"" + t.text + "\"", t.line, t.col);
    }
    if (p.alphabet.find(t.text)) {
      throw ParseError("duplicate generator \"" + t.text + "\"", t.line, t.col);
    }
    p.alphabet.add(t.text);
  }
  if (p.alphabet.size() == 0) {
    throw ParseError("empty generator list", 1, 1);
  }

  std::string rels_part = text.substr(rels_pos + 5);
  std::vector<std::string> rel_chunks;
  {
    std::string cur;
    for (char c : rels_part) {
      if (c == ',') {
        rel_chunks.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    rel_chunks.push_back(cur);
  }
  for (auto& chunk : rel_chunks) {
    auto toks = tokenize(chunk, /*commas_split=*/false);
    // Strip an optional trailing "=1" (also accepted as "=" "1").
    if (!toks.empty() && toks.back().text == "=1") {
      toks.pop_back();
    } else if (toks.size() >= 2 && toks[toks.size() - 2].text == "=" &&
               toks.back().text == "1") {
      toks.pop_back();
      toks.pop_back();
    }
    if (toks.empty()) {
      if (rel_chunks.size() == 1) break;  // "rels:" with nothing after it
      throw ParseError("empty relator", 1, 1);
    }
    Word r;
    for (const auto& t : toks) r.push_back(parse_token(p.alphabet, t));
    p.relators.push_back(std::move(r));
  }
  return p;
}

std::string format_word(const Alphabet& a, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.name(w[i].gen);
    if (w[i].inv) out += '\'';
  }
  return out;
}

std::string format_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& n : p.alphabet.names()) {
    out += ' ';
    out += n;
  }
  out += " ; rels:";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += i ? ", " : " ";
    out += format_word(p.alphabet, p.relators[i]);
  }
  return out;
}

Word parse_word(const Alphabet& a, const std::string& text) {
  Word w;
  for (const auto& t : tokenize(text, /*commas_split=*/false)) {
    if (t.text == "1" && text == "1") return {};  // explicit empty word
    w.push_back(parse_token(a, t));
  }
  return w;
}

std::vector<Word> proper_prefixes(const Presentation& p) {
  std::vector<Word> out;
  auto seen = [&out](const Word& w) {
    return std::find(out.begin(), out.end(), w) != out.end();
  };
  for (const auto& r : p.relators) {
    for (std::size_t len = 1; len < r.size(); ++len) {
      Word prefix(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(len));
      if (!seen(prefix)) out.push_back(std::move(prefix));
    }
  }
  return out;
}

std::string presentation_hash(const Presentation& p) {
  std::string s = format_presentation(p);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace simon::words
