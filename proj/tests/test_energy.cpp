#include <catch2/catch_amalgamated.hpp>

#include "fplab/energy.hpp"
#include "fplab/families.hpp"
#include "fplab/oracle.hpp"

using namespace fplab;

TEST_CASE("representation function for small sets") {
  PrimeField f(7);
  FSet a = FSet::of(f, {1, 2, 3});
  RepFunction r = rep_function(RepKind::sum, a, a);
  CHECK(r.at(4) == 3);
  CHECK(r.at(2) == 1);
  CHECK(r.total == 9);

  RepFunction single = rep_function(RepKind::sum, FSet::of(f, {2}), FSet::of(f, {3}));
  CHECK(single.counts.size() == 1);
  CHECK(single.at(5) == 1);
}

TEST_CASE("pinned energy values") {
  PrimeField f(7);
  CHECK(additive_energy(FSet::of(f, {1, 2, 3})) == 19);
  CHECK(additive_energy(FSet::of(f, {0, 1})) == 6);
  CHECK(additive_energy(FSet::of(f, {3})) == 1);
  CHECK(multiplicative_energy(FSet::of(f, {1, 2, 4})) == 27);  // |H|^3
  CHECK(multiplicative_energy(FSet::of(f, {5})) == 1);
  FSet a = FSet::of(f, {2, 3, 5});
  CHECK(multiplicative_energy(a, FSet::of(f, {1})) == a.size());
  CHECK(power_energy(FSet::of(f, {1, 2, 3}), 2) == 15);
  CHECK(power_energy(FSet::of(f, {4}), 3) == 1);
}

TEST_CASE("power energy uses multiset multiplicities") {
  PrimeField f(7);
  FSet a = FSet::of(f, {1, 2, 3});
  CHECK(power_energy(a, 1) == additive_energy(a));
  // d = 3 on the order-3 subgroup: cubes collapse to {1} with multiplicity 3,
  // so E_3 = 3^4, not the energy of the one-point image set.
  FSet h = FSet::of(f, {1, 2, 4});
  CHECK(power_energy(h, 3) == 81);
  CHECK(power_energy(h, 3) == oracle::power_energy(h, 3));
}

TEST_CASE("energies equal the quadruple-loop oracle on random instances") {
  PrimeField f(101);
  detail::SplitMix64 rng(13);
  for (int trial = 0; trial < 12; ++trial) {
    FSet a = random_subset(f, 1 + rng.below(18), rng.next());
    FSet b = random_subset(f, 1 + rng.below(18), rng.next());
    REQUIRE(additive_energy(a, b) == oracle::additive_energy(a, b));
    REQUIRE(multiplicative_energy(a, b) == oracle::multiplicative_energy(a, b));
    REQUIRE(power_energy(a, 2 + trial % 4) == oracle::power_energy(a, 2 + trial % 4));
  }
}

TEST_CASE("energy bounds: diagonal floor, Cauchy-Schwarz, monotonicity") {
  PrimeField f(101);
  detail::SplitMix64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    FSet a = random_subset(f, 2 + rng.below(16), rng.next());
    FSet b = random_subset(f, 2 + rng.below(16), rng.next());
    u64 e = additive_energy(a, b);
    u128 na = a.size(), nb = b.size();
    REQUIRE(u128(e) >= na * nb);
    REQUIRE(u128(e) <= na * na * nb);
    // |A+B| E(A,B) >= |A|^2|B|^2 with constant exactly 1
    REQUIRE(u128(sumset(a, b).size()) * e >= na * na * nb * nb);
    REQUIRE(u128(diffset(a, b).size()) * e >= na * na * nb * nb);
    // monotonicity under taking subsets
    std::vector<u64> sub(a.elements().begin(), a.elements().begin() + a.size() / 2 + 1);
    FSet a2 = FSet::canonical(f, sub);
    REQUIRE(additive_energy(a2) <= additive_energy(a));
  }
}

TEST_CASE("subgroup saturation: E_x(H) = |H|^3 for all subgroups, p <= 61") {
  for (u64 p : {5ull, 7ull, 13ull, 31ull, 61ull}) {
    PrimeField f(p);
    for (u64 d = 1; d < p; ++d) {
      if ((p - 1) % d != 0) continue;
      FSet h = multiplicative_subgroup(f, d);
      REQUIRE(multiplicative_energy(h) == d * d * d);
    }
  }
}

TEST_CASE("collision energy") {
  PrimeField f(7);
  FSet a = FSet::of(f, {1, 2});

  SECTION("line family y = x + b reduces to additive energy") {
    PrimeField f101(101);
    detail::SplitMix64 rng(23);
    for (int trial = 0; trial < 8; ++trial) {
      FSet aa = random_subset(f101, 1 + rng.below(12), rng.next());
      FSet bb = random_subset(f101, 1 + rng.below(12), rng.next());
      std::vector<Line> lines;
      for (u64 b : bb.elements()) lines.push_back(Line{1, b, false});
      LineSet l(f101, std::move(lines));
      REQUIRE(collision_energy(l, aa) == additive_energy(aa, bb));
    }
  }

  SECTION("single line counts only the diagonal") {
    LineSet l(f, {Line{3, 1, false}});
    CHECK(collision_energy(l, a) == 2);
  }

  SECTION("2x2 grid against the quadruple loop") {
    LineSet l = grid_lines_product(FSet::of(f, {1, 2}), FSet::of(f, {1, 2}));
    CHECK(collision_energy(l, a) == oracle::collision_energy(l, a));
  }
}

TEST_CASE("energy bound reports are well-formed") {
  PrimeField f(7);
  FSet h = FSet::of(f, {1, 2, 4});
  for (auto kind : {EnergyBoundKind::eq10, EnergyBoundKind::f0, EnergyBoundKind::f1,
                    EnergyBoundKind::f2}) {
    CheckReport r = energy_bound_report(kind, h, h, h, 3);
    CHECK(r.pass == PassState::report_only);
    CHECK(r.lhs > 0);
    CHECK(r.rhs > 0);
    CHECK(r.ratio == r.lhs / r.rhs);
    CHECK(r.p == 7);
  }

  PrimeField f101(101);
  FSet single = FSet::of(f101, {5});
  CheckReport r = energy_bound_report(EnergyBoundKind::eq10, single, single, single);
  CHECK(r.lhs == 1.0);
  CHECK(r.ratio <= 1.0);
}
