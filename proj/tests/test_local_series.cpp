#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carlitz/local_series.hpp"

using namespace carlitz;

namespace {

// F_2 context, digits at level 0, delta = 1: series in an abstract uniformizer.
struct F2Fixture {
  FieldCtx ctx = make_field(2, 1);
  LocalSeries pi(int64_t prec = 16) const { return series_uniformizer(ctx, 0, 1, prec); }
  LocalSeries one(int64_t prec = 16) const { return series_one(ctx, 0, 1, prec); }
  LocalSeries from_indices(std::initializer_list<int64_t> idx, int64_t prec) const {
    LocalSeries s = series_zero(0, 1, prec);
    for (int64_t i : idx) {
      LocalSeries t = shift(series_one(ctx, 0, 1, prec - i), i);
      s = add(ctx, s, t);
    }
    return s;
  }
};

LocalSeries random_series(const FieldCtx& ctx, uint32_t level, int64_t val_lo, int64_t prec,
                          std::mt19937_64& rng) {
  std::vector<FFElement> digits;
  const int64_t val = val_lo + static_cast<int64_t>(rng() % 3);
  for (int64_t i = val; i < prec; ++i) {
    FFElement d = ctx.zero(level);
    for (auto& c : d.coords) c = static_cast<uint32_t>(rng() % ctx.config().p);
    digits.push_back(d);
  }
  return series_from_digits(ctx, level, 1, val, std::move(digits), prec);
}

}  // namespace

TEST_CASE("addition cancels leading digits but keeps precision") {
  F2Fixture f;
  // (x + x^2, prec 8) + (x, prec 8) = x^2 + ..., valuation 2, prec 8
  LocalSeries a = f.from_indices({1, 2}, 8);
  LocalSeries b = f.from_indices({1}, 8);
  LocalSeries s = add(f.ctx, a, b);
  REQUIRE(!s.zero());
  CHECK(s.val == 2);
  CHECK(s.prec == 8);
}

TEST_CASE("mul of uniformizers") {
  F2Fixture f;
  LocalSeries p2 = mul(f.ctx, f.pi(), f.pi());
  CHECK(p2.val == 2);
  CHECK(p2.digits.size() == 1);
  CHECK(f.ctx.equal(p2.digits[0], f.ctx.one(0)));
}

TEST_CASE("geometric series inverse: 1/(1+pi) over F_2 at prec 5") {
  F2Fixture f;
  LocalSeries denom = f.from_indices({0, 1}, 5);
  LocalSeries r = div(f.ctx, f.one(5), denom);
  // digits 1,1,1,1,1 at indices 0..4
  REQUIRE(!r.zero());
  CHECK(r.val == 0);
  CHECK(r.prec == 5);
  for (int64_t i = 0; i < 5; ++i) CHECK(!f.ctx.is_zero(digit_at(f.ctx, r, i)));
  // multiply back: must be 1 mod pi^5
  CHECK(agree_to(f.ctx, mul(f.ctx, r, denom), f.one(5), 5));
}

TEST_CASE("division by zero-to-precision is an indeterminate valuation error") {
  F2Fixture f;
  LocalSeries z = series_zero(0, 1, 10);
  CHECK_THROWS_AS(div(f.ctx, f.one(), z), IndeterminateValuationError);
}

TEST_CASE("q_power basics") {
  F2Fixture f;
  LocalSeries p2 = q_power(f.ctx, f.pi(), 1);
  CHECK(p2.val == 2);
  CHECK(p2.prec == 32);  // N q^n
  LocalSeries a = f.from_indices({0, 1}, 16);
  LocalSeries sq1 = q_power(f.ctx, a, 1);
  LocalSeries sq2 = mul(f.ctx, a, a);
  CHECK(agree_to(f.ctx, sq1, sq2, sq2.prec));
  // digits of 1 + pi^2
  CHECK(!f.ctx.is_zero(digit_at(f.ctx, sq1, 0)));
  CHECK(f.ctx.is_zero(digit_at(f.ctx, sq1, 1)));
  CHECK(!f.ctx.is_zero(digit_at(f.ctx, sq1, 2)));
  CHECK(equal_series(f.ctx, q_power(f.ctx, a, 0), a));
}

TEST_CASE("q_root inverts q_power; odd support rejected") {
  std::mt19937_64 rng(3);
  F2Fixture f;
  for (int rep = 0; rep < 20; ++rep) {
    LocalSeries a = random_series(f.ctx, 0, 0, 12, rng);
    LocalSeries back = q_root(f.ctx, q_power(f.ctx, a, 1));
    CHECK(agree_to(f.ctx, back, a, a.prec));
  }
  CHECK(q_root(f.ctx, q_power(f.ctx, f.pi(), 1)).val == 1);
  CHECK_THROWS_AS(q_root(f.ctx, f.pi()), QRootError);
}

TEST_CASE("truncate, valuation, is_zero") {
  F2Fixture f;
  LocalSeries a = f.from_indices({0, 1, 9}, 16);
  LocalSeries t = truncate_to(a, 4);
  CHECK(t.prec == 4);
  CHECK(t.digits.size() == 2);
  LocalSeries z = series_zero(0, 1, 16);
  CHECK(is_zero(z));
  Valuation v = z.valuation();
  CHECK(!v.exact);
  CHECK(v.value == 16);
  Valuation va = a.valuation();
  CHECK(va.exact);
  CHECK(va.value == 0);
}

TEST_CASE("ultrametric valuation laws") {
  std::mt19937_64 rng(17);
  for (uint32_t p : {2u, 3u}) {
    FieldCtx ctx = make_field(p, 1);
    for (int rep = 0; rep < 40; ++rep) {
      LocalSeries a = random_series(ctx, 0, 0, 20, rng);
      LocalSeries b = random_series(ctx, 0, 0, 20, rng);
      if (a.zero() || b.zero()) continue;
      LocalSeries s = add(ctx, a, b);
      CHECK(s.v_lower_bound() >= std::min(a.val, b.val));
      if (a.val != b.val) {
        REQUIRE(!s.zero());
        CHECK(s.val == std::min(a.val, b.val));
      }
      LocalSeries m = mul(ctx, a, b);
      REQUIRE(!m.zero());
      CHECK(m.val == a.val + b.val);
      LocalSeries qp = q_power(ctx, a, 2);
      CHECK(qp.val == a.val * static_cast<int64_t>(q_pow_int(p, 2)));
    }
  }
}

TEST_CASE("precision soundness: digits beyond N never affect claimed digits") {
  std::mt19937_64 rng(29);
  FieldCtx ctx = make_field(2, 1);
  const int64_t N = 12;
  for (int rep = 0; rep < 40; ++rep) {
    // same value to precision N, different junk beyond
    LocalSeries wide1 = random_series(ctx, 0, 0, N + 6, rng);
    LocalSeries junk = shift(random_series(ctx, 0, 0, 6, rng), N);
    LocalSeries wide2 = add(ctx, wide1, junk);
    LocalSeries a1 = truncate_to(wide1, N);
    LocalSeries a2 = truncate_to(wide2, N);
    LocalSeries other = random_series(ctx, 0, 0, N, rng);
    auto same_to_claimed = [&](const LocalSeries& r1, const LocalSeries& r2) {
      const int64_t through = std::min(r1.prec, r2.prec);
      CHECK(agree_to(ctx, r1, r2, through));
    };
    same_to_claimed(add(ctx, a1, other), add(ctx, a2, other));
    same_to_claimed(mul(ctx, a1, other), mul(ctx, a2, other));
    same_to_claimed(q_power(ctx, a1, 1), q_power(ctx, a2, 1));
    if (!a1.zero() && !a2.zero() && !other.zero()) {
      same_to_claimed(div(ctx, other, a1), div(ctx, other, a2));
    }
  }
}

TEST_CASE("series with digits in an extension level") {
  FieldCtx ctx = extend(make_field(2, 1), 2);
  LocalSeries omega = series_const(ctx, ctx.element_from_code(1, 2), 1, 8);
  LocalSeries sq = mul(ctx, omega, omega);
  // omega^2 = omega + 1
  CHECK(ctx.element_code(digit_at(ctx, sq, 0)) == 3);
  LocalSeries qp = q_power(ctx, omega, 1);
  CHECK(ctx.element_code(digit_at(ctx, qp, 0)) == 3);
}
