#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carlitz/artin_schreier.hpp"

using namespace carlitz;

namespace {

LocalSeries random_series(const FieldCtx& ctx, uint32_t level, int64_t val, int64_t prec,
                          std::mt19937_64& rng) {
  std::vector<FFElement> digits;
  for (int64_t i = val; i < prec; ++i) {
    FFElement d = ctx.zero(level);
    for (auto& c : d.coords) c = static_cast<uint32_t>(rng() % ctx.config().p);
    digits.push_back(d);
  }
  return series_from_digits(ctx, level, 1, val, std::move(digits), prec);
}

// defect of z^q - z = xi
Valuation as_defect(const FieldCtx& field, const LocalSeries& z, const LocalSeries& xi) {
  LocalSeries lhs = sub(field, q_power(field, z, 1, z.prec), z);
  return defect_valuation(field, lhs, xi);
}

}  // namespace

TEST_CASE("q=2, xi=pi, N=16: principal root pi + pi^2 + pi^4 + pi^8") {
  FieldCtx field = make_field(2, 1);
  LocalSeries xi = series_uniformizer(field, 0, 1, 16);
  auto res = artin_schreier_solve(field, xi);
  REQUIRE(res.roots.size() == 2);
  REQUIRE(res.principal_index.has_value());
  const LocalSeries& z1 = res.roots[*res.principal_index];
  CHECK(z1.val == 1);
  for (int64_t i = 1; i < 16; ++i) {
    const bool expect_one = (i == 1 || i == 2 || i == 4 || i == 8);
    CHECK(res.field.is_zero(digit_at(res.field, z1, i)) == !expect_one);
  }
  for (const auto& z : res.roots) {
    Valuation d = as_defect(res.field, z, xi);
    CHECK(!d.exact);  // telescoping: exact to full precision
    CHECK(d.value >= 16);
  }
  CHECK(res.roots[1].val == 0);
}

TEST_CASE("q=2, xi=1: the two constant roots in F_4") {
  FieldCtx field = make_field(2, 1);
  LocalSeries xi = series_one(field, 0, 1, 24);
  auto res = artin_schreier_solve(field, neg(field, xi));  // xi = -1 = 1 in char 2
  REQUIRE(res.roots.size() == 2);
  CHECK(!res.principal_index.has_value());
  CHECK(res.field.levels().size() == 2);
  for (const auto& z : res.roots) {
    REQUIRE(!z.zero());
    CHECK(z.val == 0);
    CHECK(z.digits.size() == 1);  // constants
  }
  CHECK(res.field.element_code(digit_at(res.field, res.roots[0], 0)) == 2);
  CHECK(res.field.element_code(digit_at(res.field, res.roots[1], 0)) == 3);
}

TEST_CASE("xi = 0: roots are exactly F_q, principal is 0") {
  for (uint32_t p : {2u, 3u}) {
    FieldCtx field = make_field(p, 1);
    LocalSeries xi = series_zero(0, 1, 20);
    auto res = artin_schreier_solve(field, xi);
    REQUIRE(res.roots.size() == p);
    REQUIRE(res.principal_index.has_value());
    CHECK(is_zero(res.roots[*res.principal_index]));
    for (size_t k = 1; k < res.roots.size(); ++k) {
      CHECK(res.roots[k].val == 0);
      CHECK(res.roots[k].digits.size() == 1);
    }
  }
}

TEST_CASE("v(xi) < 0 is rejected") {
  FieldCtx field = make_field(2, 1);
  LocalSeries xi = shift(series_one(field, 0, 1, 8), -1);
  CHECK_THROWS_AS(artin_schreier_solve(field, xi), UnramifiedSolveError);
}

TEST_CASE("random xi, both branches: root count, defects, valuation pattern") {
  std::mt19937_64 rng(101);
  for (uint32_t p : {2u, 3u}) {
    FieldCtx field = make_field(p, 1);
    const int64_t N = 32;
    for (int rep = 0; rep < 20; ++rep) {
      // positive branch
      LocalSeries xi = random_series(field, 0, 1 + static_cast<int64_t>(rng() % 3), N, rng);
      if (xi.zero()) continue;
      auto res = artin_schreier_solve(field, xi);
      REQUIRE(res.roots.size() == p);
      REQUIRE(res.principal_index.has_value());
      size_t small_count = 0;
      for (size_t i = 0; i < res.roots.size(); ++i) {
        Valuation d = as_defect(res.field, res.roots[i], xi);
        CHECK(d.value >= N - 2);
        CHECK(!d.exact);
        if (!res.roots[i].zero() && res.roots[i].val == xi.val) ++small_count;
        if (i != *res.principal_index) CHECK(res.roots[i].val == 0);
      }
      CHECK(small_count == 1);
      // pairwise differences in F_q
      for (size_t i = 0; i < res.roots.size(); ++i)
        for (size_t j = i + 1; j < res.roots.size(); ++j) {
          LocalSeries d = sub(res.field, res.roots[i], res.roots[j]);
          REQUIRE(!d.zero());
          CHECK(d.val == 0);
          CHECK(d.digits.size() == 1);
          CHECK(res.field.lies_in_level(d.digits[0], res.field.q_level()));
        }
    }
    for (int rep = 0; rep < 20; ++rep) {
      // unit branch
      LocalSeries xi = random_series(field, 0, 0, N, rng);
      if (xi.zero() || xi.val != 0) continue;
      auto res = artin_schreier_solve(field, xi);
      REQUIRE(res.roots.size() == p);
      CHECK(!res.principal_index.has_value());
      for (const auto& z : res.roots) {
        CHECK(z.val == 0);
        Valuation d = as_defect(res.field, z, xi);
        CHECK(d.value >= N - 2);
      }
    }
  }
}

TEST_CASE("solver ordering is deterministic") {
  FieldCtx field = make_field(2, 1);
  std::mt19937_64 rng(9);
  LocalSeries xi = random_series(field, 0, 0, 24, rng);
  auto r1 = artin_schreier_solve(field, xi);
  auto r2 = artin_schreier_solve(field, xi);
  REQUIRE(r1.roots.size() == r2.roots.size());
  for (size_t i = 0; i < r1.roots.size(); ++i)
    CHECK(equal_series(r1.field, r1.roots[i], r2.roots[i]));
}
