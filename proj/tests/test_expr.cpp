#include <catch2/catch_amalgamated.hpp>

#include "fplab/expr.hpp"
#include "fplab/families.hpp"

using namespace fplab;

namespace {
FSet ev(const PrimeField& f, const Bindings& b, const std::string& text) {
  return eval_expr(text, f, b);
}
}  // namespace

TEST_CASE("expression evaluation matches the worked examples") {
  PrimeField f(7);
  Bindings b;
  b.emplace("A", FSet::of(f, {1, 2}));
  CHECK(ev(f, b, "A*A + A").elements() == std::vector<u64>{2, 3, 4, 5, 6});

  Bindings b2;
  b2.emplace("A", FSet::of(f, {0, 1}));
  CHECK(ev(f, b2, "(A-A)^2 + (A-A)^2").elements() == std::vector<u64>{0, 1, 2});

  CHECK(ev(f, b2, "A & (A+0)") == b2.at("A"));
}

TEST_CASE("scalar operand semantics") {
  PrimeField f(7);
  Bindings b;
  b.emplace("A", FSet::of(f, {1, 2, 3}));
  CHECK(ev(f, b, "A+1").elements() == std::vector<u64>{2, 3, 4});
  CHECK(ev(f, b, "3*A").elements() == std::vector<u64>{2, 3, 6});
  CHECK(ev(f, b, "-A").elements() == std::vector<u64>{4, 5, 6});
  CHECK(ev(f, b, "A-1").elements() == std::vector<u64>{0, 1, 2});
  CHECK(ev(f, b, "1-A").elements() == std::vector<u64>{0, 5, 6});
  CHECK(ev(f, b, "A^2").elements() == std::vector<u64>{1, 2, 4});
  // alpha/A is the dilated reciprocal set
  CHECK(ev(f, b, "2/A") == dilate(reciprocal_set(b.at("A")), 2));
  CHECK(ev(f, b, "A/2") == dilate(b.at("A"), f.inv(2)));
}

TEST_CASE("reciprocal chains and drop accounting") {
  PrimeField f(7);
  Bindings b;
  b.emplace("A", FSet::of(f, {0, 1, 2, 4}));
  DropLog drops;
  FSet r = eval_expr("1/A + 1/(A+A)", f, b, &drops);
  CHECK_FALSE(r.empty());
  CHECK(drops.reciprocal_elems >= 1);  // 0 in A dropped at least once

  drops = {};
  eval_expr("A/A", f, b, &drops);
  CHECK(drops.ratio_pairs == b.at("A").size());
}

TEST_CASE("expression errors") {
  PrimeField f(7);
  Bindings b;
  b.emplace("A", FSet::of(f, {1, 2}));
  CHECK_THROWS_AS(ev(f, b, "B + A"), usage_error);
  CHECK_THROWS_AS(ev(f, b, "A +"), usage_error);
  CHECK_THROWS_AS(ev(f, b, "A ) B"), usage_error);
  CHECK_THROWS_AS(ev(f, b, "A & 3"), usage_error);
  CHECK_THROWS_AS(ev(f, b, "A / 0"), std::domain_error);
}

TEST_CASE("grid image cross-check: B*A+C equals the grid line image") {
  PrimeField f(101);
  detail::SplitMix64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Bindings b;
    b.emplace("A", random_subset(f, 1 + rng.below(15), rng.next()));
    b.emplace("B", random_subset(f, 1 + rng.below(15), rng.next(), true));
    b.emplace("C", random_subset(f, 1 + rng.below(15), rng.next()));
    FSet lhs = ev(f, b, "B*A + C");
    FSet rhs = image_set(grid_lines_product(b.at("B"), b.at("C")), b.at("A"));
    REQUIRE(lhs == rhs);

    FSet lhs2 = ev(f, b, "B*(A + C)");
    FSet rhs2 = image_set(grid_lines_sum(b.at("B"), b.at("C")), b.at("A"));
    REQUIRE(lhs2 == rhs2);
  }
}
