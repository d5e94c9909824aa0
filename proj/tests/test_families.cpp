#include <catch2/catch_amalgamated.hpp>

#include "fplab/families.hpp"
#include "fplab/oracle.hpp"

using namespace fplab;

TEST_CASE("structured family generators") {
  PrimeField f(7);
  CHECK(generate(FamilySpec::parse("subgroup(order=3)"), f).elements() ==
        std::vector<u64>{1, 2, 4});
  CHECK(generate(FamilySpec::parse("interval(start=1;size=3)"), f).elements() ==
        std::vector<u64>{1, 2, 3});
  CHECK(generate(FamilySpec::parse("gp(start=1;ratio=2;size=3)"), f).elements() ==
        std::vector<u64>{1, 2, 4});
  CHECK(generate(FamilySpec::parse("ap(start=2;step=3;size=2)"), f).elements() ==
        std::vector<u64>{2, 5});
  CHECK(generate(FamilySpec::parse("union(interval(start=1;size=2);gp(start=3;ratio=2;size=2))"), f)
            .elements() == std::vector<u64>{1, 2, 3, 6});
}

TEST_CASE("subgroup generator enumerated against element orders") {
  PrimeField f(7);
  // order of each element of F_7^*: 1:1, 2:3, 3:6, 4:3, 5:6, 6:2
  FSet h3 = multiplicative_subgroup(f, 3);
  for (u64 x = 1; x < 7; ++x) {
    u64 ord = 1, y = x;
    while (y != 1) { y = f.mul(y, x); ++ord; }
    CHECK(h3.contains(x) == (3 % ord == 0));
  }
  CHECK_THROWS_AS(multiplicative_subgroup(f, 4), usage_error);
}

TEST_CASE("family parameter errors") {
  PrimeField f(7);
  CHECK_THROWS_AS(generate(FamilySpec::parse("interval(start=0;size=9)"), f), usage_error);
  CHECK_THROWS_AS(generate(FamilySpec::parse("subgroup(order=5)"), f), usage_error);
  CHECK_THROWS_AS(FamilySpec::parse("blob(size=3)"), usage_error);
  CHECK_THROWS_AS(FamilySpec::parse("interval(size)"), usage_error);
}

TEST_CASE("family spec round trip") {
  for (const char* text : {"interval(start=1;size=12)", "ap(start=2;step=3;size=8)",
                           "gp(start=1;ratio=3;size=10)", "subgroup(order=20)",
                           "random(size=12;seed=1;zero_free=1)",
                           "union(interval(start=1;size=4);random(size=3;seed=2;zero_free=0))"}) {
    FamilySpec s = FamilySpec::parse(text);
    CHECK(s.to_string() == text);
    CHECK(FamilySpec::parse(s.to_string()).to_string() == s.to_string());
  }
}

TEST_CASE("random subsets are deterministic and uniform-range") {
  PrimeField f(101);
  FSet a = random_subset(f, 12, 1);
  FSet b = random_subset(f, 12, 1);
  CHECK(a == b);
  CHECK(a.size() == 12);
  CHECK(random_subset(f, 101, 9) == FSet::full(f));
  FSet zf = random_subset(f, 100, 2, true);
  CHECK_FALSE(zf.contains(0));
  CHECK(zf.size() == 100);
  CHECK_THROWS_AS(random_subset(f, 102, 1), usage_error);
  CHECK(random_subset(f, 12, 5) != random_subset(f, 12, 6));
}

TEST_CASE("gp with large-order ratio has exact size; interval sumset sanity") {
  PrimeField f(101);
  u64 g = primitive_root(f);
  FSet gp = generate(FamilySpec{FamilySpec::Kind::gp, 1, 1, g, 1, 20, 0, true, {}}, f);
  CHECK(gp.size() == 20);

  FSet iv = generate(FamilySpec::parse("interval(start=1;size=17)"), f);
  CHECK(sumset(iv, iv).size() == 2 * 17 - 1);
}

TEST_CASE("sphere and all-planes configuration") {
  PrimeField f(5);
  auto [q, pi] = sphere_planes_config(f);
  for (const Point3& pt : q.points())
    CHECK(f.add(f.add(f.mul(pt.x, pt.x), f.mul(pt.y, pt.y)), f.mul(pt.z, pt.z)) == 1);
  CHECK(pi.size() == 5 * 5 * 5 + 5 * 5 + 5);
  CHECK(pi.size() == oracle::count_all_planes(f));

  auto inc = point_plane_incidences(q, pi, false);
  CHECK(inc.count == oracle::point_plane_incidences(q, pi));

  PrimeField big(37);
  CHECK_THROWS_AS(sphere_planes_config(big), resource_error);
}

TEST_CASE("one plane contains p^2 affine points") {
  PrimeField f(5);
  std::vector<Point3> all;
  for (u64 x = 0; x < 5; ++x)
    for (u64 y = 0; y < 5; ++y)
      for (u64 z = 0; z < 5; ++z) all.push_back(Point3{x, y, z});
  PointSet3 q = PointSet3::of(f, std::move(all));
  PlaneSet3 pi = PlaneSet3::of(f, {Plane3{0, 0, 1, 0}});
  CHECK(point_plane_incidences(q, pi, false).count == 25);
}
