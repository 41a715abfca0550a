#pragma once

// Golden-file helpers shared by the golden test and the acceptance runner.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfvdw/cli.hpp"

namespace golden {

struct Case {
  std::string name;
  std::string command;
  std::string config;    // absolute
  std::string expected;  // absolute
};

inline std::vector<Case> load_manifest(const std::string& dir) {
  std::ifstream in(dir + "/manifest.json");
  const auto doc = nlohmann::json::parse(in);
  std::vector<Case> out;
  for (const auto& c : doc.at("cases")) {
    out.push_back({c.at("name"), c.at("command"), dir + "/" + c.at("config").get<std::string>(),
                   dir + "/" + c.at("expected").get<std::string>()});
  }
  return out;
}

inline lfvdw::cli::Outcome run(const Case& c, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{c.command, "--config", c.config};
  args.insert(args.end(), extra.begin(), extra.end());
  return lfvdw::cli::run(args);
}

inline std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Lines that are not comments: the data section of a CSV or the whole JSON.
inline std::string data_section(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line + "\n";
  }
  return out;
}

inline bool close(double a, double b, double rtol) {
  if (a == b) return true;
  return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b)) + 1e-300;
}

inline bool same_json(const nlohmann::json& a, const nlohmann::json& b, double rtol, std::string& where) {
  if (a.is_number() && b.is_number()) {
    if (close(a.get<double>(), b.get<double>(), rtol)) return true;
    where += ": " + a.dump() + " vs " + b.dump();
    return false;
  }
  if (a.type() != b.type() || a.size() != b.size()) {
    where += ": structure differs";
    return false;
  }
  if (a.is_object()) {
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k)) {
        where += "." + k + ": missing";
        return false;
      }
      std::string sub = where + "." + k;
      if (!same_json(v, b.at(k), rtol, sub)) {
        where = sub;
        return false;
      }
    }
    return true;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::string sub = where + "[" + std::to_string(i) + "]";
      if (!same_json(a[i], b[i], rtol, sub)) {
        where = sub;
        return false;
      }
    }
    return true;
  }
  if (a == b) return true;
  where += ": " + a.dump() + " vs " + b.dump();
  return false;
}

inline bool same_csv(const std::string& a, const std::string& b, double rtol, std::string& where) {
  std::istringstream ia(a), ib(b);
  std::string la, lb;
  int line = 0;
  while (true) {
    const bool ga = static_cast<bool>(std::getline(ia, la));
    const bool gb = static_cast<bool>(std::getline(ib, lb));
    ++line;
    if (ga != gb) {
      where = "line count differs";
      return false;
    }
    if (!ga) return true;
    if (la == lb) continue;
    std::istringstream fa(la), fb(lb);
    std::string ta, tb;
    while (true) {
      const bool ha = static_cast<bool>(std::getline(fa, ta, ','));
      const bool hb = static_cast<bool>(std::getline(fb, tb, ','));
      if (ha != hb) {
        where = "line " + std::to_string(line) + ": column count differs";
        return false;
      }
      if (!ha) break;
      if (ta == tb) continue;
      char* ea = nullptr;
      char* eb = nullptr;
      const double va = std::strtod(ta.c_str(), &ea), vb = std::strtod(tb.c_str(), &eb);
      if (*ea || *eb || !close(va, vb, rtol)) {
        where = "line " + std::to_string(line) + ": '" + ta + "' vs '" + tb + "'";
        return false;
      }
    }
  }
}

/// Numerical comparison of a command's output against its frozen file.
inline bool matches_expected(const Case& c, const std::string& actual, double rtol, std::string& where) {
  const std::string expected = read(c.expected);
  if (c.expected.size() > 5 && c.expected.substr(c.expected.size() - 5) == ".json") {
    return same_json(nlohmann::json::parse(actual), nlohmann::json::parse(expected), rtol, where);
  }
  return same_csv(actual, expected, rtol, where);
}

}  // namespace golden
