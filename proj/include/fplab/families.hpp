#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fplab/fset.hpp"
#include "fplab/geometry3.hpp"

namespace fplab {

// Uniform n-subset of [0,p) (or [1,p) when zero_free), sampled by Floyd's
// algorithm over the pinned SplitMix64 counter stream; identical
// (p, n, seed) always yields the identical set.
inline FSet random_subset(const PrimeField& f, std::size_t n, u64 seed, bool zero_free = false) {
  const u64 p = f.modulus();
  const u64 domain = zero_free ? p - 1 : p;
  if (n > domain) throw usage_error("random subset larger than its domain");
  detail::SplitMix64 rng(seed);
  std::vector<u64> chosen;
  chosen.reserve(n);
  auto contains = [&](u64 v) {
    return std::find(chosen.begin(), chosen.end(), v) != chosen.end();
  };
  for (u64 j = domain - n; j < domain; ++j) {
    u64 t = rng.below(j + 1);
    chosen.push_back(contains(t) ? j : t);
  }
  if (zero_free)
    for (u64& v : chosen) ++v;
  return FSet::of(f, std::move(chosen));
}

// Trial-division factorization; desk scale keeps p-1 within easy reach.
inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline u64 primitive_root(const PrimeField& f) {
  const u64 p = f.modulus();
  auto qs = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : qs)
      if (f.pow(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw usage_error("no primitive root found (modulus not prime?)");
}

// The multiplicative subgroup of the requested order (order must divide p-1).
inline FSet multiplicative_subgroup(const PrimeField& f, u64 order) {
  const u64 p = f.modulus();
  if (order == 0 || (p - 1) % order != 0)
    throw usage_error("subgroup order must divide p-1");
  u64 h = f.pow(primitive_root(f), (p - 1) / order);
  std::vector<u64> elems;
  elems.reserve(order);
  u64 x = 1;
  for (u64 k = 0; k < order; ++k) {
    elems.push_back(x);
    x = f.mul(x, h);
  }
  return FSet::of(f, std::move(elems));
}

// Deterministic set generators: identical spec => identical set.
struct FamilySpec {
  enum class Kind { interval, ap, gp, subgroup, random, union_ };

  Kind kind = Kind::interval;
  u64 start = 1;
  u64 step = 1;
  u64 ratio = 2;
  u64 order = 1;
  std::size_t size = 0;
  u64 seed = 0;
  bool zero_free = true;
  std::vector<FamilySpec> children;

  std::string to_string() const {
    auto body = [&]() -> std::string {
      switch (kind) {
        case Kind::interval:
          return "interval(start=" + std::to_string(start) + ";size=" + std::to_string(size) + ")";
        case Kind::ap:
          return "ap(start=" + std::to_string(start) + ";step=" + std::to_string(step) +
                 ";size=" + std::to_string(size) + ")";
        case Kind::gp:
          return "gp(start=" + std::to_string(start) + ";ratio=" + std::to_string(ratio) +
                 ";size=" + std::to_string(size) + ")";
        case Kind::subgroup:
          return order == 0 ? "subgroup(order=0;size=" + std::to_string(size) + ")"
                            : "subgroup(order=" + std::to_string(order) + ")";
        case Kind::random:
          return "random(size=" + std::to_string(size) + ";seed=" + std::to_string(seed) +
                 ";zero_free=" + (zero_free ? "1" : "0") + ")";
        case Kind::union_: {
          std::string s = "union(";
          for (std::size_t i = 0; i < children.size(); ++i) {
            if (i) s += ';';
            s += children[i].to_string();
          }
          return s + ")";
        }
      }
      return "?";
    };
    return body();
  }

  static FamilySpec parse(std::string_view text);
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Split on ';' at paren depth zero.
inline std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ';' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

}  // namespace detail

inline FamilySpec FamilySpec::parse(std::string_view text) {
  text = detail::trim(text);
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw usage_error("family spec must look like kind(key=value;...): " + std::string(text));
  std::string_view kind = detail::trim(text.substr(0, open));
  std::string_view body = text.substr(open + 1, text.size() - open - 2);

  FamilySpec s;
  if (kind == "interval") s.kind = Kind::interval;
  else if (kind == "ap") s.kind = Kind::ap;
  else if (kind == "gp") s.kind = Kind::gp;
  else if (kind == "subgroup") s.kind = Kind::subgroup;
  else if (kind == "random") s.kind = Kind::random;
  else if (kind == "union") s.kind = Kind::union_;
  else throw usage_error("unknown family kind: " + std::string(kind));

  if (s.kind == Kind::union_) {
    for (auto part : detail::split_top(body)) {
      if (!part.empty()) s.children.push_back(FamilySpec::parse(part));
    }
    if (s.children.empty()) throw usage_error("union family needs children");
    return s;
  }

  for (auto part : detail::split_top(body)) {
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string_view::npos)
      throw usage_error("family parameter must be key=value: " + std::string(part));
    std::string key(detail::trim(part.substr(0, eq)));
    u64 val = 0;
    try {
      val = std::stoull(std::string(detail::trim(part.substr(eq + 1))));
    } catch (const std::exception&) {
      throw usage_error("family parameter '" + key + "' is not a number");
    }
    if (key == "start") s.start = val;
    else if (key == "step") s.step = val;
    else if (key == "ratio") s.ratio = val;
    else if (key == "order") s.order = val;
    else if (key == "size") s.size = static_cast<std::size_t>(val);
    else if (key == "seed") s.seed = val;
    else if (key == "zero_free") s.zero_free = val != 0;
    else throw usage_error("unknown family parameter: " + key);
  }
  return s;
}

// config_seed feeds the random family (mixed with the spec's own seed);
// structured families ignore it.
inline FSet generate(const FamilySpec& spec, const PrimeField& f, u64 config_seed = 0) {
  const u64 p = f.modulus();
  using K = FamilySpec::Kind;
  switch (spec.kind) {
    case K::interval: {
      if (spec.size > p) throw usage_error("interval size exceeds p");
      std::vector<u64> v;
      v.reserve(spec.size);
      for (std::size_t i = 0; i < spec.size; ++i)
        v.push_back(f.add(f.reduce(spec.start), f.reduce(i)));
      return FSet::of(f, std::move(v));
    }
    case K::ap: {
      if (spec.size > p) throw usage_error("progression size exceeds p");
      u64 step = f.reduce(spec.step);
      if (step == 0 && spec.size > 1) throw usage_error("arithmetic progression needs step != 0");
      std::vector<u64> v;
      v.reserve(spec.size);
      u64 x = f.reduce(spec.start);
      for (std::size_t i = 0; i < spec.size; ++i) {
        v.push_back(x);
        x = f.add(x, step);
      }
      return FSet::of(f, std::move(v));
    }
    case K::gp: {
      if (spec.size > p) throw usage_error("progression size exceeds p");
      // ratio = 0 selects the smallest primitive root
      u64 ratio = spec.ratio == 0 ? primitive_root(f) : f.reduce(spec.ratio);
      u64 x = f.reduce(spec.start);
      if (ratio == 0 || x == 0) throw usage_error("geometric progression needs nonzero start and ratio");
      std::vector<u64> v;
      v.reserve(spec.size);
      for (std::size_t i = 0; i < spec.size; ++i) {
        v.push_back(x);
        x = f.mul(x, ratio);
      }
      return FSet::of(f, std::move(v));
    }
    case K::subgroup: {
      // order = 0 selects the largest divisor of p-1 not exceeding the size
      u64 order = spec.order;
      if (order == 0) {
        if (spec.size == 0) throw usage_error("subgroup(order=0) needs a size bound");
        order = 1;
        for (u64 t = 1; t <= spec.size && t < p; ++t)
          if ((p - 1) % t == 0) order = t;
      }
      return multiplicative_subgroup(f, order);
    }
    case K::random:
      return random_subset(f, spec.size, detail::mix_seeds(config_seed, spec.seed),
                           spec.zero_free);
    case K::union_: {
      FSet acc(f);
      for (const auto& child : spec.children) acc = set_union(acc, generate(child, f, config_seed));
      return acc;
    }
  }
  throw usage_error("unreachable family kind");
}

// The extremal configuration from the incidence theorem's footnote: the unit
// sphere against every affine plane of F_p^3. Exhaustive, so p is capped.
inline std::pair<PointSet3, PlaneSet3> sphere_planes_config(const PrimeField& f) {
  const u64 p = f.modulus();
  if (p > 31) throw resource_error("sphere-and-all-planes demo is capped at p <= 31");
  std::vector<Point3> pts;
  for (u64 x = 0; x < p; ++x)
    for (u64 y = 0; y < p; ++y) {
      u64 s2 = f.add(f.mul(x, x), f.mul(y, y));
      for (u64 z = 0; z < p; ++z)
        if (f.add(s2, f.mul(z, z)) == 1) pts.push_back(Point3{x, y, z});
    }
  std::vector<Plane3> pls;
  pls.reserve(p * (p * p + p + 1));
  for (u64 c = 0; c < p; ++c) {
    for (u64 v = 0; v < p; ++v)
      for (u64 w = 0; w < p; ++w) pls.push_back(Plane3{1, v, w, c});
    for (u64 w = 0; w < p; ++w) pls.push_back(Plane3{0, 1, w, c});
    pls.push_back(Plane3{0, 0, 1, c});
  }
  return {PointSet3::of(f, std::move(pts)), PlaneSet3::of(f, std::move(pls))};
}

}  // namespace fplab
