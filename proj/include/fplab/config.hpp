#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "fplab/families.hpp"

namespace fplab {

// Run configuration: a flat key=value text file plus command-line overrides.
// Round-trips losslessly through its text form.
struct RunConfig {
  std::string command;  // gen | compute | check | sweep | oracle
  std::vector<u64> p_list = {101, 1009};
  std::vector<FamilySpec> families;  // empty -> default catalogue
  std::vector<std::string> checks;       // empty -> all registered
  std::vector<std::string> quantities;   // empty -> all quantities
  std::vector<std::size_t> sizes = {8, 12, 16, 24};  // sweep size grid
  u64 seed = 1;
  u64 d = 2;
  std::string out;             // empty -> stdout
  std::string format = "csv";  // csv | json
  unsigned threads = 1;
  // negative-control hook: deliberately corrupt one fast-path value so the
  // oracle runner can prove it detects mismatches
  bool corrupt = false;
  std::size_t oracle_size = 10;
  std::size_t oracle_trials = 5;

  void set(const std::string& key, const std::string& value);
  std::string to_text() const;
  static RunConfig parse_text(const std::string& text);
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  for (auto& part : out) part = std::string(trim(part));
  return out;
}

inline u64 parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    u64 v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw usage_error("config key '" + key + "' needs an integer, got '" + value + "'");
  }
}

}  // namespace detail

inline void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "p") {
    p_list.clear();
    for (auto& part : detail::split_commas(value)) p_list.push_back(detail::parse_u64(key, part));
    if (p_list.empty()) throw usage_error("config key 'p' needs at least one prime");
  } else if (key == "families") {
    families.clear();
    for (auto& part : detail::split_commas(value)) families.push_back(FamilySpec::parse(part));
  } else if (key == "checks") {
    checks = value == "all" ? std::vector<std::string>{} : detail::split_commas(value);
  } else if (key == "quantities") {
    quantities = value == "all" ? std::vector<std::string>{} : detail::split_commas(value);
  } else if (key == "sizes") {
    sizes.clear();
    for (auto& part : detail::split_commas(value))
      sizes.push_back(static_cast<std::size_t>(detail::parse_u64(key, part)));
    if (sizes.empty()) throw usage_error("config key 'sizes' needs at least one size");
  } else if (key == "seed") {
    seed = detail::parse_u64(key, value);
  } else if (key == "d") {
    d = detail::parse_u64(key, value);
  } else if (key == "out") {
    out = value;
  } else if (key == "format") {
    if (value != "csv" && value != "json") throw usage_error("format must be csv or json");
    format = value;
  } else if (key == "threads") {
    threads = static_cast<unsigned>(detail::parse_u64(key, value));
    if (threads == 0) throw usage_error("threads must be >= 1");
  } else if (key == "corrupt") {
    corrupt = detail::parse_u64(key, value) != 0;
  } else if (key == "oracle_size") {
    oracle_size = static_cast<std::size_t>(detail::parse_u64(key, value));
  } else if (key == "oracle_trials") {
    oracle_trials = static_cast<std::size_t>(detail::parse_u64(key, value));
  } else {
    throw usage_error("unknown config key: " + key);
  }
}

inline std::string RunConfig::to_text() const {
  std::ostringstream os;
  auto join_u = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  os << "p = " << join_u(p_list) << "\n";
  if (!families.empty()) {
    os << "families = ";
    for (std::size_t i = 0; i < families.size(); ++i) {
      if (i) os << ',';
      os << families[i].to_string();
    }
    os << "\n";
  }
  auto join_s = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += v[i];
    }
    return s;
  };
  if (!checks.empty()) os << "checks = " << join_s(checks) << "\n";
  if (!quantities.empty()) os << "quantities = " << join_s(quantities) << "\n";
  os << "sizes = " << join_u(sizes) << "\n";
  os << "seed = " << seed << "\n";
  os << "d = " << d << "\n";
  if (!out.empty()) os << "out = " << out << "\n";
  os << "format = " << format << "\n";
  os << "threads = " << threads << "\n";
  if (corrupt) os << "corrupt = 1\n";
  os << "oracle_size = " << oracle_size << "\n";
  os << "oracle_trials = " << oracle_trials << "\n";
  return os.str();
}

inline RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw usage_error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key(detail::trim(sv.substr(0, eq)));
    std::string value(detail::trim(sv.substr(eq + 1)));
    cfg.set(key, value);
  }
  return cfg;
}

}  // namespace fplab
