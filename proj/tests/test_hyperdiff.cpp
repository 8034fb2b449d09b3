#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carlitz/hyperdiff.hpp"
#include "carlitz/polylog.hpp"

using namespace carlitz;

namespace {

LocalSeries random_base_digits(const PlaceCtx& pc, std::mt19937_64& rng, size_t ndigits,
                               int64_t val = 0) {
  std::vector<FFElement> digits;
  for (size_t i = 0; i < ndigits; ++i)
    digits.push_back(pc.field.element_from_code(pc.q_level(), rng() % pc.config().q));
  return series_from_digits(pc.field, pc.q_level(), pc.delta, val, std::move(digits), pc.prec);
}

LocalSeries xpow(const PlaceCtx& pc, int64_t k) { return shift(pc.one_series(), k); }

}  // namespace

TEST_CASE("hyperdiff on monomials via Lucas") {
  PlaceCtx pc = make_place(2, 1, {0, 1}, 64, 8);
  std::mt19937_64 rng(3);
  LocalSeries t = random_base_digits(pc, rng, 20);
  CHECK(equal_series(pc.field, hyperdiff(pc, 0, t), t));
  // q=2: D_1(x^2) = binom(2,1) x = 0
  CHECK(is_zero(hyperdiff(pc, 1, xpow(pc, 2))));
  // q=2: D_2(x^3) = binom(3,2) x = x
  LocalSeries d = hyperdiff(pc, 2, xpow(pc, 3));
  REQUIRE(!d.zero());
  CHECK(d.val == 1);
  CHECK(d.digits.size() == 1);
  // D_k(1) = 0 for k >= 1
  CHECK(is_zero(hyperdiff(pc, 1, pc.one_series())));
  // precision loss is surfaced
  CHECK(hyperdiff(pc, 3, t).prec == t.prec - 3);
}

TEST_CASE("hat transform") {
  PlaceCtx p2 = make_place(2, 1, {0, 1}, 32, 4);
  std::mt19937_64 rng(5);
  LocalSeries a2 = random_base_digits(p2, rng, 12);
  CHECK(equal_series(p2.field, hat_transform(p2, a2), a2));  // char 2: identity

  PlaceCtx p3 = make_place(3, 1, {0, 1}, 32, 4);
  LocalSeries x = xpow(p3, 1);
  LocalSeries hx = hat_transform(p3, x);
  CHECK(p3.field.element_code(digit_at(p3.field, hx, 1)) == 2);  // -x = 2x
  for (int rep = 0; rep < 10; ++rep) {
    LocalSeries a = random_base_digits(p3, rng, 12);
    LocalSeries hh = hat_transform(p3, hat_transform(p3, a));
    CHECK(equal_series(p3.field, hh, a));  // involution
    if (!a.zero()) CHECK(hat_transform(p3, a).val == a.val);  // isometry
  }
}

TEST_CASE("base-digit validation rejects deeper digits") {
  PlaceCtx pc = make_place(2, 1, {0, 1}, 32, 4);
  FieldCtx deeper = extend(pc.field, 2);
  PlaceCtx pc2 = pc;
  pc2.field = deeper;
  LocalSeries omega = series_const(pc2.field, pc2.field.element_from_code(1, 2), 1, 16);
  CHECK(!is_base_digit_series(pc2, omega));
  CHECK_THROWS_AS(as_base_digit_series(pc2, omega), Error);
  CHECK_THROWS_AS(hyperdiff(pc2, 1, omega), Error);
}

TEST_CASE("fractional derivative: constants and monomial powers") {
  std::mt19937_64 rng(7);
  PlaceCtx pc0 = make_place(2, 1, {0, 1}, 160, 16);
  PolylogSet set = build_polylog_set(pc0, {0}, 14, 2);
  const PlaceCtx& pc = *set.place;
  FunctionHandle u = make_ln_handle(set, 1);
  for (int rep = 0; rep < 5; ++rep) {
    LocalSeries t = random_base_digits(pc, rng, static_cast<size_t>(pc.prec));
    // alpha = 1: Delta^(1) u = u
    LocalSeries a1 = frac_delta(pc, pc.one_series(), u, t, pc.prec);
    LocalSeries direct = u.eval(t);
    CHECK(agree_to(pc.field, a1, direct, std::min(a1.prec, direct.prec)));
    // alpha = x: Delta^(x) u = Delta u
    LocalSeries ax = frac_delta(pc, xpow(pc, 1), u, t, pc.prec);
    LocalSeries dx = delta_point(pc, u, t);
    CHECK(agree_to(pc.field, ax, dx, std::min(ax.prec, dx.prec)));
    // alpha = x^n: Delta^(x^n) = Delta^n, n <= 4
    for (uint32_t n = 2; n <= 4; ++n) {
      LocalSeries an = frac_delta(pc, xpow(pc, n), u, t, pc.prec);
      LocalSeries dn = delta_pow_point(pc, u, n, t);
      const int64_t through = std::min(an.prec, dn.prec);
      CHECK(through >= pc.prec - 40);
      CHECK(agree_to(pc.field, an, dn, through));
    }
  }
}

TEST_CASE("linearity in alpha") {
  std::mt19937_64 rng(11);
  PlaceCtx pc0 = make_place(2, 1, {0, 1}, 128, 14);
  PolylogSet set = build_polylog_set(pc0, {0}, 12, 1);
  const PlaceCtx& pc = *set.place;
  FunctionHandle u = make_ln_handle(set, 1);
  LocalSeries t = random_base_digits(pc, rng, static_cast<size_t>(pc.prec));
  for (int rep = 0; rep < 5; ++rep) {
    LocalSeries a = random_base_digits(pc, rng, 12);
    LocalSeries b = random_base_digits(pc, rng, 12);
    LocalSeries lhs = frac_delta(pc, add(pc.field, a, b), u, t, pc.prec);
    LocalSeries rhs =
        add(pc.field, frac_delta(pc, a, u, t, pc.prec), frac_delta(pc, b, u, t, pc.prec));
    CHECK(agree_to(pc.field, lhs, rhs, std::min(lhs.prec, rhs.prec)));
  }
}

TEST_CASE("Leibnitz rule for hyperdifferentiations") {
  std::mt19937_64 rng(13);
  for (uint32_t p : {2u, 3u}) {
    PlaceCtx pc = make_place(p, 1, {0, 1}, 64, 8);
    for (int rep = 0; rep < 6; ++rep) {
      LocalSeries a = hat_transform(pc, random_base_digits(pc, rng, 16));
      LocalSeries b = hat_transform(pc, random_base_digits(pc, rng, 16));
      LocalSeries ab = mul(pc.field, a, b);
      for (uint64_t n = 0; n <= 8; ++n) {
        LocalSeries lhs = hyperdiff(pc, n, ab);
        LocalSeries rhs = series_zero(pc.residue_level, pc.delta, kPrecMax);
        for (uint64_t k = 0; k <= n; ++k) {
          rhs = add(pc.field, rhs,
                    mul(pc.field, hyperdiff(pc, k, b), hyperdiff(pc, n - k, a)));
        }
        CHECK(agree_to(pc.field, lhs, rhs, std::min(lhs.prec, rhs.prec)));
      }
    }
  }
}

TEST_CASE("composition law of fractional derivatives") {
  std::mt19937_64 rng(17);
  PlaceCtx pc0 = make_place(2, 1, {0, 1}, 160, 16);
  PolylogSet set = build_polylog_set(pc0, {0}, 14, 1);
  const PlaceCtx& pc = *set.place;
  FunctionHandle u = make_ln_handle(set, 1);
  LocalSeries t = pc.one_series();
  for (int rep = 0; rep < 6; ++rep) {
    LocalSeries alpha = random_base_digits(pc, rng, 12);
    LocalSeries beta = random_base_digits(pc, rng, 12);
    FunctionHandle inner{[&pc, &beta, &u](const LocalSeries& s) {
                           return frac_delta(pc, beta, u, s, pc.prec);
                         },
                         u.modulus_lb};
    LocalSeries lhs = frac_delta(pc, alpha, inner, t, pc.prec);
    LocalSeries rhs = frac_delta(pc, mul(pc.field, alpha, beta), u, t, pc.prec);
    const int64_t through = std::min(lhs.prec, rhs.prec);
    CHECK(through >= pc.prec - 48);
    CHECK(agree_to(pc.field, lhs, rhs, through));
  }
}

TEST_CASE("hyperdifferentiation expansion in Carlitz polynomials (finite cut)") {
  std::mt19937_64 rng(19);
  PlaceCtx pc = make_place(2, 1, {0, 1}, 96, 14);
  const uint32_t i_max = 12;
  for (uint32_t r = 1; r <= 4; ++r) {
    LocalSeries t = random_base_digits(pc, rng, static_cast<size_t>(pc.prec));
    LocalSeries lhs = hyperdiff(pc, r, t);
    auto chain = eval_f_chain(pc, i_max, t);
    LocalSeries rhs = series_zero(pc.residue_level, pc.delta, kPrecMax);
    for (uint32_t n = r; n <= i_max; ++n)
      rhs = add(pc.field, rhs, mul(pc.field, pc.a_coeff(n, r), chain[n]));
    Valuation defect = defect_valuation(pc.field, lhs, rhs);
    // tail terms have v(A_{n,r} f_n(t)) >= n - r
    CHECK(defect.value >= static_cast<int64_t>(i_max) + 1 - r);
  }
}
