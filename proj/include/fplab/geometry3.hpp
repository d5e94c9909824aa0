#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "fplab/counter.hpp"
#include "fplab/lines.hpp"

namespace fplab {

// Weighted point family in F_p^3. Canonical: sorted, duplicate points merged
// by adding weights. Total weight W and max weight tracked exactly.
class PointSet3 {
 public:
  explicit PointSet3(PrimeField f) : field_(std::move(f)) {}

  static PointSet3 of(const PrimeField& f, std::vector<Point3> pts) {
    std::vector<std::pair<Point3, u64>> w;
    w.reserve(pts.size());
    for (auto& q : pts) w.emplace_back(q, 1);
    return weighted(f, std::move(w));
  }

  static PointSet3 weighted(const PrimeField& f, std::vector<std::pair<Point3, u64>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    PointSet3 out(f);
    for (auto& [q, w] : entries) {
      if (w == 0) throw usage_error("weights must be positive");
      if (!out.pts_.empty() && out.pts_.back() == q) {
        out.w_.back() = detail::checked_add(out.w_.back(), w);
      } else {
        out.pts_.push_back(q);
        out.w_.push_back(w);
      }
    }
    for (u64 w : out.w_) {
      out.total_w_ = detail::checked_add(out.total_w_, w);
      out.max_w_ = std::max(out.max_w_, w);
    }
    return out;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return pts_.size(); }
  const std::vector<Point3>& points() const noexcept { return pts_; }
  const std::vector<u64>& weights() const noexcept { return w_; }
  u64 total_weight() const noexcept { return total_w_; }
  u64 max_weight() const noexcept { return max_w_; }

 private:
  PrimeField field_;
  std::vector<Point3> pts_;
  std::vector<u64> w_;
  u64 total_w_ = 0;
  u64 max_w_ = 0;
};

// Weighted plane family; covectors normalized to a unique representative.
class PlaneSet3 {
 public:
  explicit PlaneSet3(PrimeField f) : field_(std::move(f)) {}

  static PlaneSet3 of(const PrimeField& f, std::vector<Plane3> pls) {
    std::vector<std::pair<Plane3, u64>> w;
    w.reserve(pls.size());
    for (auto& pl : pls) w.emplace_back(pl, 1);
    return weighted(f, std::move(w));
  }

  static PlaneSet3 weighted(const PrimeField& f, std::vector<std::pair<Plane3, u64>> entries) {
    for (auto& [pl, w] : entries) pl = normalize_plane(f, pl.u, pl.v, pl.w, pl.c);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    PlaneSet3 out(f);
    for (auto& [pl, w] : entries) {
      if (w == 0) throw usage_error("weights must be positive");
      if (!out.pls_.empty() && out.pls_.back() == pl) {
        out.w_.back() = detail::checked_add(out.w_.back(), w);
      } else {
        out.pls_.push_back(pl);
        out.w_.push_back(w);
      }
    }
    for (u64 w : out.w_) {
      out.total_w_ = detail::checked_add(out.total_w_, w);
      out.max_w_ = std::max(out.max_w_, w);
    }
    return out;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return pls_.size(); }
  const std::vector<Plane3>& planes() const noexcept { return pls_; }
  const std::vector<u64>& weights() const noexcept { return w_; }
  u64 total_weight() const noexcept { return total_w_; }
  u64 max_weight() const noexcept { return max_w_; }

 private:
  PrimeField field_;
  std::vector<Plane3> pls_;
  std::vector<u64> w_;
  u64 total_w_ = 0;
  u64 max_w_ = 0;
};

namespace detail {

// Unique key for the projective direction q2 - q1 (first nonzero coordinate
// scaled to 1).
inline std::tuple<u64, u64, u64> direction_key(const PrimeField& f, const Point3& a,
                                               const Point3& b) {
  u64 dx = f.sub(b.x, a.x), dy = f.sub(b.y, a.y), dz = f.sub(b.z, a.z);
  u64 lead = dx != 0 ? dx : (dy != 0 ? dy : dz);
  u64 s = f.inv(lead);
  return {f.mul(dx, s), f.mul(dy, s), f.mul(dz, s)};
}

}  // namespace detail

// Maximum number of points of Q on one line, weights ignored. Exhaustive
// per-anchor direction bucketing, O(|Q|^2).
inline u64 max_collinear(const PointSet3& q) {
  const auto& pts = q.points();
  const std::size_t n = pts.size();
  if (n <= 2) return n;
  const PrimeField& f = q.field();
  u64 best = 2;
  if (detail::packable(f.modulus())) {
    detail::KeyCounter dirs;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      dirs.reset(n - i);
      u64 local = 0;
      for (std::size_t j = i + 1; j < n; ++j) {
        auto [dx, dy, dz] = detail::direction_key(f, pts[i], pts[j]);
        local = std::max(local, dirs.add(detail::pack3(dx, dy, dz)));
      }
      best = std::max(best, local + 1);
    }
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::map<std::tuple<u64, u64, u64>, u64> dirs;
      for (std::size_t j = i + 1; j < n; ++j)
        best = std::max(best, 1 + ++dirs[detail::direction_key(f, pts[i], pts[j])]);
    }
  }
  return best;
}

struct IncidenceResult {
  u64 count = 0;        // |I(Q,Pi)|
  u64 weighted = 0;     // I_w
  u64 n_points = 0;     // m in the incidence bound
  u64 n_planes = 0;     // n in the incidence bound
  u64 k = 0;            // max collinear points, weightless
  u64 total_weight = 0; // W over Q and Pi combined
  u64 max_weight = 0;   // w over Q and Pi combined
};

// Exact point-plane incidence count, plain and weighted. Hash-join: planes
// grouped by normal, points bucketed by evaluation residue per group; brute
// force below 10^4 pairs (the oracle re-implements that path independently).
inline IncidenceResult point_plane_incidences(const PointSet3& q, const PlaneSet3& pi,
                                              bool with_k = true) {
  if (q.field() != pi.field()) throw usage_error("points and planes from different fields");
  const PrimeField& f = q.field();
  IncidenceResult r;
  r.n_points = q.size();
  r.n_planes = pi.size();
  r.total_weight = detail::checked_add(q.total_weight(), pi.total_weight());
  r.max_weight = std::max(q.max_weight(), pi.max_weight());

  const auto& pts = q.points();
  const auto& pw = q.weights();
  const auto& pls = pi.planes();
  const auto& plw = pi.weights();

  if (q.size() * pi.size() <= 10000) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pls.size(); ++j)
        if (on_plane(f, pts[i], pls[j])) {
          r.count = detail::checked_add(r.count, 1);
          r.weighted = detail::checked_add(r.weighted, detail::checked_mul(pw[i], plw[j]));
        }
  } else {
    // Planes are sorted by (u,v,w,c); group runs share a normal.
    std::map<u64, std::pair<u64, u64>> buckets;  // value -> (#points, weight sum)
    std::size_t j = 0;
    while (j < pls.size()) {
      std::size_t j2 = j;
      while (j2 < pls.size() && pls[j2].u == pls[j].u && pls[j2].v == pls[j].v &&
             pls[j2].w == pls[j].w)
        ++j2;
      buckets.clear();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        u64 v = f.add(f.add(f.mul(pls[j].u, pts[i].x), f.mul(pls[j].v, pts[i].y)),
                      f.mul(pls[j].w, pts[i].z));
        auto& b = buckets[v];
        b.first += 1;
        b.second = detail::checked_add(b.second, pw[i]);
      }
      for (; j < j2; ++j) {
        auto it = buckets.find(pls[j].c);
        if (it == buckets.end()) continue;
        r.count = detail::checked_add(r.count, it->second.first);
        r.weighted =
            detail::checked_add(r.weighted, detail::checked_mul(plw[j], it->second.second));
      }
    }
  }
  if (with_k) r.k = max_collinear(q);
  return r;
}

// The collision construction: Q = {(m,b,a')}, planes a*x + y - m'*z = b'.
// Incidences of the output pair count exactly the collisions l(a) = l'(a').
inline std::pair<PointSet3, PlaneSet3> collision_points_planes(const LineSet& l, const FSet& a) {
  if (l.field() != a.field()) throw usage_error("line set and set from different fields");
  if (l.has_vertical()) throw usage_error("collision construction needs non-vertical lines");
  const PrimeField& f = l.field();
  std::vector<Point3> pts;
  std::vector<Plane3> pls;
  pts.reserve(l.size() * a.size());
  pls.reserve(l.size() * a.size());
  for (const Line& ln : l.lines())
    for (u64 x : a.elements()) {
      pts.push_back(Point3{ln.m, ln.b, x});
      pls.push_back(Plane3{x, 1, f.neg(ln.m), ln.b});
    }
  return {PointSet3::of(f, std::move(pts)), PlaneSet3::of(f, std::move(pls))};
}

}  // namespace fplab
