#pragma once

// Golden vectors: one record per line, whitespace-separated `key=value`
// tokens, `#` comments. Every record has `kind`; points are written `x:y` or
// `inf`, byte strings as hex with `-` for empty.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qchain/core/error.hpp"

namespace qchain::sig {

struct GoldenRecord {
  int line{0};
  std::map<std::string, std::string> fields;

  const std::string& at(const std::string& key) const {
    auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError(key, "golden record on line " + std::to_string(line) + " lacks key");
    return it->second;
  }
};

inline std::vector<GoldenRecord> parse_golden_vectors(std::istream& in) {
  std::vector<GoldenRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    GoldenRecord rec{lineno, {}};
    std::string tok;
    while (tokens >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("line " + std::to_string(lineno), "bad token " + tok);
      rec.fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    if (!rec.fields.empty()) out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<GoldenRecord> load_golden_vectors(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, "cannot open golden vector file");
  return parse_golden_vectors(f);
}

}  // namespace qchain::sig
