#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

#include "fplab/field.hpp"

namespace fplab {

enum class CheckClass { exact, asymptotic };

// pass/fail is reserved for exact theorems; asymptotic claims are always
// report-only (their constants are unspecified).
enum class PassState { pass, report_only, fail };

inline const char* to_string(PassState s) {
  switch (s) {
    case PassState::pass: return "pass";
    case PassState::report_only: return "report-only";
    case PassState::fail: return "fail";
  }
  return "?";
}

struct CheckReport {
  std::string name;
  u64 p = 0;
  std::string family;  // descriptor of the instance's A
  std::string params;  // key=value pairs separated by ';' (no commas: CSV-safe)
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  bool constraint_ok = true;
  PassState pass = PassState::report_only;
  u64 seed = 0;
  bool has_bound = true;  // compute rows carry a bare value, no rhs/ratio
};

namespace detail {

// Stable, locale-free number formatting: integers exactly, reals via
// shortest round-trip.
inline std::string fmt_num(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.007199254740992e15) {
    long long n = static_cast<long long>(v);
    return std::to_string(n);
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

inline void append_param(std::string& params, const std::string& key, const std::string& val) {
  if (!params.empty()) params += ';';
  params += key;
  params += '=';
  params += val;
}

inline void append_param(std::string& params, const std::string& key, double val) {
  append_param(params, key, fmt_num(val));
}

}  // namespace detail

inline double safe_ratio(double lhs, double rhs) {
  return rhs == 0 ? 0.0 : lhs / rhs;
}

}  // namespace fplab
