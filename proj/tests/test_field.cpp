#include <catch2/catch_amalgamated.hpp>

#include "fplab/field.hpp"

using namespace fplab;

TEST_CASE("prime field construction") {
  CHECK_NOTHROW(PrimeField(3));
  CHECK_NOTHROW(PrimeField(101));
  CHECK_NOTHROW(PrimeField(1009));
  CHECK_THROWS_AS(PrimeField(1), usage_error);
  CHECK_THROWS_AS(PrimeField(2), usage_error);  // odd characteristic required
  CHECK_THROWS_AS(PrimeField(91), usage_error);
  CHECK_THROWS_AS(PrimeField(1000000), usage_error);
}

TEST_CASE("modular arithmetic basics") {
  PrimeField f(7);
  CHECK(f.inv(2) == 4);
  CHECK(f.pow(3, 6) == 1);  // Fermat
  CHECK(f.add(5, 6) == 4);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.neg(0) == 0);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);

  PrimeField big(1000003);
  for (u64 x : {1ull, 2ull, 999999ull, 123456ull}) {
    CHECK(big.mul(big.inv(x), x) == 1);
  }
}

TEST_CASE("inverse law for all nonzero elements, p=101") {
  PrimeField f(101);
  for (u64 x = 1; x < 101; ++x) CHECK(f.mul(f.inv(x), x) == 1);
}

TEST_CASE("field axioms exhaustively for small p, sampled for larger") {
  for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    PrimeField f(p);
    for (u64 a = 0; a < p; ++a)
      for (u64 b = 0; b < p; ++b)
        for (u64 c = 0; c < p; ++c) {
          REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
  }
  PrimeField f(100003);
  detail::SplitMix64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    u64 a = rng.below(100003), b = rng.below(100003), c = rng.below(100003);
    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
  }
}

TEST_CASE("elem strong type") {
  PrimeField f7(7), f11(11);
  Elem a(3, f7), b(5, f7);
  CHECK((a * b).value() == 1);
  CHECK((a + b).value() == 1);
  CHECK(fp_inv(Elem(2, f7)).value() == 4);
  CHECK(fp_pow(Elem(3, f7), 6).value() == 1);
  CHECK_THROWS_AS(a + Elem(1, f11), usage_error);
}

TEST_CASE("threshold powers of p") {
  PrimeField f101(101), f7(7), f31(31);
  CHECK_THAT(f101.threshold(3, 5), Catch::Matchers::WithinAbs(15.9438, 1e-3));
  CHECK(f7.threshold(1, 1) == 7.0);
  CHECK_THAT(f31.threshold(2, 3), Catch::Matchers::WithinAbs(9.8683, 1e-3));
  CHECK_THROWS_AS(f7.threshold(1, 0), usage_error);
}

TEST_CASE("plane covector normalization and incidence") {
  PrimeField f(7);
  CHECK_THROWS_AS(normalize_plane(f, 0, 0, 0, 1), usage_error);
  Plane3 pl = normalize_plane(f, 2, 4, 6, 3);
  CHECK(pl.u == 1);
  CHECK(on_plane(f, Point3{0, 0, 0}, Plane3{0, 0, 1, 0}));
  CHECK(!on_plane(f, Point3{0, 0, 1}, Plane3{0, 0, 1, 0}));
}
