#include <catch2/catch_amalgamated.hpp>

#include "fplab/energy.hpp"
#include "fplab/families.hpp"
#include "fplab/oracle.hpp"
#include "fplab/plane_stats.hpp"

using namespace fplab;

TEST_CASE("collinear triples: pinned and tiny cases") {
  PrimeField f5(5);
  CHECK(collinear_triples(FSet::of(f5, {0, 1, 2})) == 48);
  // 2x2 grid: max collinearity 2, so no triples at all
  CHECK(collinear_triples(FSet::of(f5, {0, 1})) == 0);
  CHECK(collinear_triples(FSet::of(f5, {0, 1})) == oracle::collinear_triples(FSet::of(f5, {0, 1})));
  CHECK(collinear_triples(FSet::of(f5, {3})) == 0);
}

TEST_CASE("collinear triples equal the determinant oracle") {
  for (u64 p : {5ull, 7ull, 11ull, 101ull}) {
    PrimeField f(p);
    detail::SplitMix64 rng(p);
    for (int trial = 0; trial < 4; ++trial) {
      std::size_t n = std::min<u64>(p, 2 + rng.below(7));
      FSet a = random_subset(f, n, rng.next());
      REQUIRE(collinear_triples(a) == oracle::collinear_triples(a));
    }
    FSet iv = generate(FamilySpec::parse("interval(start=0;size=4)"), PrimeField(p));
    REQUIRE(collinear_triples(iv) == oracle::collinear_triples(iv));
  }
}

TEST_CASE("grid collinear triples") {
  PrimeField f(5);
  FSet a = FSet::of(f, {0, 1, 2}), b = FSet::of(f, {0, 1});
  CHECK(collinear_triples_grid(a, b) == oracle::collinear_triples_grid(a, b));
  CHECK(collinear_triples_grid(a, a) == collinear_triples(a));
  // |B| = 1: every triple sits on the one horizontal line
  FSet one = FSet::of(f, {2});
  CHECK(collinear_triples_grid(a, one) == 3 * 2 * 1);

  PrimeField f101(101);
  FSet a2 = random_subset(f101, 8, 1), b2 = random_subset(f101, 5, 2);
  CHECK(collinear_triples_grid(a2, b2) == oracle::collinear_triples_grid(a2, b2));
}

TEST_CASE("lines and directions of a grid") {
  PrimeField f(7);
  FSet a = FSet::of(f, {0, 1});
  auto st = line_and_direction_sets(a, a);
  CHECK(st.lines == 6);
  CHECK(st.directions == 4);  // horizontal, vertical, +1, -1
  for (u64 pinned : st.pinned) CHECK(pinned == 3);

  // collinear point set: one line, one direction
  FSet row = FSet::of(f, {4});
  auto st2 = line_and_direction_sets(FSet::of(f, {0, 1, 2}), row);
  CHECK(st2.lines == 1);
  CHECK(st2.directions == 1);

  PrimeField f101(101);
  detail::SplitMix64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    FSet aa = random_subset(f101, 2 + rng.below(6), rng.next());
    FSet bb = random_subset(f101, 1 + rng.below(6), rng.next());
    auto fast = line_and_direction_sets(aa, bb);
    auto ref = oracle::lines_and_directions(f101, grid_points(aa, bb));
    REQUIRE(fast.lines == ref.lines);
    REQUIRE(fast.directions == ref.directions);
  }
}

TEST_CASE("direction count equals |(A-A)/(A-A)| plus the vertical") {
  PrimeField f(101);
  detail::SplitMix64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    FSet a = random_subset(f, 2 + rng.below(8), rng.next());
    auto st = line_and_direction_sets(a, a);
    FSet d = diffset(a, a);
    REQUIRE(st.directions == ratioset(d, d).size() + 1);
  }
}

TEST_CASE("point-line incidences") {
  PrimeField f(7);
  FSet a = FSet::of(f, {0, 1});
  auto pts = grid_points(a, a);

  std::vector<Line> six = {Line{0, 0, true},  Line{0, 1, true},  Line{0, 0, false},
                           Line{0, 1, false}, Line{1, 0, false}, Line{6, 1, false}};
  LineSet l(f, std::move(six));
  CHECK(point_line_incidences(f, pts, l) == 12);
  CHECK(point_line_incidences(f, {}, l) == 0);

  PrimeField f101(101);
  detail::SplitMix64 rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    FSet aa = random_subset(f101, 2 + rng.below(10), rng.next());
    FSet bb = random_subset(f101, 2 + rng.below(10), rng.next());
    std::vector<Line> lines;
    for (int i = 0; i < 120; ++i) {
      if (i % 9 == 0) lines.push_back(Line{0, rng.below(101), true});
      else lines.push_back(Line{rng.below(101), rng.below(101), false});
    }
    LineSet ll(f101, std::move(lines));
    auto ps = grid_points(aa, bb);
    REQUIRE(point_line_incidences(f101, ps, ll) == oracle::point_line_incidences(f101, ps, ll));
  }
}

TEST_CASE("cross-ratio sets") {
  PrimeField f(7);
  FSet a = FSet::of(f, {0, 1, 2});
  auto cr = cross_ratio_sets(a);
  CHECK(cr.r_inf.elements() == std::vector<u64>{2, 4, 6});
  CHECK(cr.r.empty());  // needs 4 distinct elements

  auto cr2 = cross_ratio_sets(FSet::of(f, {3, 5}));
  CHECK(cr2.r.empty());
  CHECK(cr2.r_inf.empty());

  // affine invariance of R(A)
  PrimeField f101(101);
  FSet b = random_subset(f101, 6, 11);
  auto base = cross_ratio_sets(b);
  FSet moved = translate(dilate(b, 17), 29);
  auto after = cross_ratio_sets(moved);
  CHECK(base.r == after.r);

  // under pairwise distinctness both sets avoid {0, 1}
  CHECK_FALSE(base.r.contains(0));
  CHECK_FALSE(base.r.contains(1));
  CHECK_FALSE(base.r_inf.contains(0));
  CHECK_FALSE(base.r_inf.contains(1));
  auto degen = cross_ratio_sets(b, true);
  CHECK(degen.r_inf.contains(0));
  CHECK(degen.r_inf.contains(1));
}

TEST_CASE("six-tuple identity: S6 = T(A) - axis-parallel triples") {
  PrimeField f(101);
  detail::SplitMix64 rng(53);
  for (int trial = 0; trial < 6; ++trial) {
    u64 n = 3 + rng.below(6);
    FSet a = random_subset(f, n, rng.next());
    u64 t = collinear_triples(a);
    u64 axis = 2 * n * (n * (n - 1) * (n - 2));
    REQUIRE(oracle::pinned_six_tuples(a) == t - axis);
    // Cauchy-Schwarz with constant 1 in the pinned setting
    u64 triples = n * (n - 1) * (n - 2);
    REQUIRE(u128(cross_ratio_sets(a).r_inf.size()) * oracle::pinned_six_tuples(a) >=
            u128(triples) * triples);
  }
}

TEST_CASE("distance sets") {
  PrimeField f(7);
  CHECK(distance_sets(FSet::of(f, {0, 1})).quadratic.elements() == std::vector<u64>{0, 1, 2});
  CHECK(distance_sets(FSet::of(f, {4})).quadratic.elements() == std::vector<u64>{0});
  CHECK(distance_sets(FSet::of(f, {4})).cubic.elements() == std::vector<u64>{0});

  // cubic distances against a pairwise brute force over (A x A)^2
  FSet a = FSet::of(f, {0, 1, 2});
  std::set<u64> brute;
  auto pts = grid_points(a, a);
  for (auto& p1 : pts)
    for (auto& p2 : pts) {
      u64 dx = f.sub(p2.x, p1.x), dy = f.sub(p2.y, p1.y);
      brute.insert(f.add(f.pow(dx, 3), f.pow(dy, 3)));
    }
  CHECK(distance_sets(a).cubic.elements() == std::vector<u64>(brute.begin(), brute.end()));
}

TEST_CASE("max collinear points in space") {
  PrimeField f(5);
  std::vector<Point3> grid;
  for (u64 x = 0; x < 3; ++x)
    for (u64 y = 0; y < 3; ++y) grid.push_back(Point3{x, y, 0});
  CHECK(max_collinear(PointSet3::of(f, grid)) == 3);

  std::vector<Point3> on_line;
  for (u64 t = 0; t < 5; ++t) on_line.push_back(Point3{t, f.mul(2, t), f.add(t, 1)});
  CHECK(max_collinear(PointSet3::of(f, on_line)) == 5);

  CHECK(max_collinear(PointSet3::of(f, {Point3{0, 0, 0}, Point3{1, 2, 3}})) == 2);
  CHECK(max_collinear(PointSet3::of(f, {Point3{1, 1, 1}})) == 1);

  PrimeField f101(101);
  detail::SplitMix64 rng(59);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Point3> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(Point3{rng.below(101), rng.below(101), rng.below(101)});
    PointSet3 q = PointSet3::of(f101, std::move(pts));
    REQUIRE(max_collinear(q) == oracle::max_collinear(q));
  }
}

TEST_CASE("point-plane incidences: oracle equality and weights") {
  PrimeField f(31);
  detail::SplitMix64 rng(61);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<std::pair<Point3, u64>> pts;
    std::vector<std::pair<Plane3, u64>> pls;
    for (int i = 0; i < 150; ++i) {
      pts.push_back({Point3{rng.below(31), rng.below(31), rng.below(31)}, 1 + rng.below(3)});
      u64 u = rng.below(31), v = rng.below(31), w = 1 + rng.below(30);
      pls.push_back({Plane3{u, v, w, rng.below(31)}, 1 + rng.below(3)});
    }
    PointSet3 q = PointSet3::weighted(f, std::move(pts));
    PlaneSet3 pi = PlaneSet3::weighted(f, std::move(pls));
    auto inc = point_plane_incidences(q, pi, false);
    REQUIRE(inc.count == oracle::point_plane_incidences(q, pi));
    REQUIRE(inc.weighted == oracle::point_plane_incidences_weighted(q, pi));
  }

  // weighted reduces to plain when every weight is 1
  std::vector<Point3> pts = {{1, 2, 3}, {4, 5, 6}, {0, 0, 1}};
  PointSet3 q = PointSet3::of(f, std::move(pts));
  PlaneSet3 pi = PlaneSet3::of(f, {Plane3{1, 1, 1, 6}, Plane3{0, 0, 1, 3}});
  auto inc = point_plane_incidences(q, pi, false);
  CHECK(inc.count == inc.weighted);
  CHECK(point_plane_incidences(PointSet3::of(f, {Point3{0, 0, 0}}),
                               PlaneSet3::of(f, {Plane3{0, 0, 1, 0}}), false)
            .count == 1);
}

TEST_CASE("collision construction carries E(L,A) into incidences") {
  PrimeField f(101);
  detail::SplitMix64 rng(67);
  for (int trial = 0; trial < 6; ++trial) {
    FSet a = random_subset(f, 1 + rng.below(8), rng.next());
    FSet b = random_subset(f, 1 + rng.below(6), rng.next(), true);
    FSet c = random_subset(f, 1 + rng.below(6), rng.next());
    LineSet l = grid_lines_product(b, c);
    auto [q, pi] = collision_points_planes(l, a);
    REQUIRE(q.size() == l.size() * a.size());
    REQUIRE(pi.size() == l.size() * a.size());
    auto inc = point_plane_incidences(q, pi);
    REQUIRE(inc.count == collision_energy(l, a));
    // k <= max(|A|,|B|,|C|) for grid-generated collision configurations
    REQUIRE(inc.k <= std::max({a.size(), b.size(), c.size()}));
    REQUIRE(pencil_stat(l) <= std::max(b.size(), c.size()));
  }
  FSet empty(f);
  auto [q, pi] = collision_points_planes(grid_lines_product(FSet::of(f, {1}), FSet::of(f, {0})), empty);
  CHECK(q.size() == 0);
  CHECK(pi.size() == 0);
}
