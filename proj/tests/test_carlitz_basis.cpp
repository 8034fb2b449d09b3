#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "carlitz/carlitz_basis.hpp"
#include "carlitz/polylog.hpp"

using namespace carlitz;

namespace {

LocalSeries random_integral(const PlaceCtx& pc, std::mt19937_64& rng, int64_t val = 0) {
  std::vector<FFElement> digits;
  const uint64_t card = pc.field.level_card(pc.residue_level);
  for (int64_t i = val; i < pc.prec; ++i)
    digits.push_back(pc.field.element_from_code(pc.residue_level, rng() % card));
  return series_from_digits(pc.field, pc.residue_level, pc.delta, val, std::move(digits),
                            kPrecMax);
}

// The explicit alternating sum for f_i(t); cancellative, so only used at
// small i as the independent route.
LocalSeries eval_f_alternating(const PlaceCtx& pc, uint32_t i, const LocalSeries& t) {
  LocalSeries acc = series_zero(pc.residue_level, pc.delta, kPrecMax);
  for (uint32_t j = 0; j <= i; ++j) {
    LocalSeries denom = mul(pc.field, pc.d_factorial(j), q_power_rel(pc, pc.l_factorial(i - j), j));
    LocalSeries term = mul(pc.field, q_power_rel(pc, t, j), inverse(pc.field, denom));
    acc = add(pc.field, acc, pc.with_sign(term, i - j));
  }
  return acc;
}

CarlitzFunction basis_function(const PlaceCtx& pc, uint32_t i) {
  CarlitzFunction u;
  u.coeffs.assign(i + 1, series_zero(pc.residue_level, pc.delta, kPrecMax));
  u.v_lb.assign(i + 1, kPrecMax);
  u.coeffs[i] = pc.one_series();
  u.v_lb[i] = 0;
  u.tail = TailBound{TailBound::Kind::finite, 0, 0, 1};
  return u;
}

}  // namespace

TEST_CASE("f_0 is the identity and f_i(1) = 0 for i >= 1") {
  for (auto codes : {std::vector<uint64_t>{0, 1}, std::vector<uint64_t>{1, 1, 1}}) {
    PlaceCtx pc = make_place(2, 1, codes, 96, 10);
    std::mt19937_64 rng(2);
    LocalSeries t = random_integral(pc, rng);
    CHECK(equal_series(pc.field, eval_f(pc, 0, t), t));
    auto chain = eval_f_chain(pc, 6, pc.one_series());
    for (uint32_t i = 1; i <= 6; ++i) {
      CHECK(is_zero(chain[i]));
      CHECK(chain[i].prec >= pc.prec - 12);
    }
  }
}

TEST_CASE("f_1(x) = 1 at pi = x, q = 2") {
  PlaceCtx pc = make_place(2, 1, {0, 1}, 64, 6);
  LocalSeries fx = eval_f(pc, 1, pc.chi);
  CHECK(agree_to(pc.field, fx, pc.one_series(), fx.prec));
}

TEST_CASE("recursion route matches the alternating-sum route at small i") {
  std::mt19937_64 rng(3);
  for (auto codes : {std::vector<uint64_t>{0, 1}, std::vector<uint64_t>{1, 1, 1}}) {
    PlaceCtx pc = make_place(2, 1, codes, 96, 10);
    for (int rep = 0; rep < 5; ++rep) {
      LocalSeries t = random_integral(pc, rng);
      auto chain = eval_f_chain(pc, 5, t);
      for (uint32_t i = 0; i <= 5; ++i) {
        LocalSeries alt = eval_f_alternating(pc, i, t);
        const int64_t through = std::min(chain[i].prec, alt.prec);
        CHECK(through > 32);
        CHECK(agree_to(pc.field, chain[i], alt, through));
      }
    }
  }
  PlaceCtx p3 = make_place(3, 1, {0, 1}, 96, 10);
  for (int rep = 0; rep < 3; ++rep) {
    LocalSeries t = random_integral(p3, rng);
    for (uint32_t i = 0; i <= 4; ++i) {
      LocalSeries alt = eval_f_alternating(p3, i, t);
      LocalSeries rec = eval_f(p3, i, t);
      CHECK(agree_to(p3.field, rec, alt, std::min(rec.prec, alt.prec)));
    }
  }
}

TEST_CASE("f_i is F_q-linear") {
  std::mt19937_64 rng(5);
  PlaceCtx pc = make_place(3, 1, {0, 1}, 80, 8);
  for (int rep = 0; rep < 5; ++rep) {
    LocalSeries s = random_integral(pc, rng);
    LocalSeries t = random_integral(pc, rng);
    for (uint64_t alpha_code = 0; alpha_code < 3; ++alpha_code) {
      FFElement alpha = pc.field.element_from_code(pc.q_level(), alpha_code);
      LocalSeries lhs_arg = add(pc.field, scalar_mul(pc.field, s, alpha), t);
      for (uint32_t i : {1u, 3u}) {
        LocalSeries lhs = eval_f(pc, i, lhs_arg);
        LocalSeries rhs =
            add(pc.field, scalar_mul(pc.field, eval_f(pc, i, s), alpha), eval_f(pc, i, t));
        CHECK(agree_to(pc.field, lhs, rhs, std::min(lhs.prec, rhs.prec)));
      }
    }
  }
}

TEST_CASE("delta of the identity vanishes") {
  PlaceCtx pc = make_place(2, 1, {0, 1}, 64, 6);
  std::mt19937_64 rng(7);
  FunctionHandle id = make_identity_handle(pc);
  for (int rep = 0; rep < 5; ++rep) {
    LocalSeries t = random_integral(pc, rng);
    CHECK(is_zero(delta_point(pc, id, t)));
  }
}

TEST_CASE("basis relation: Delta f_i = [i] f_i + f_{i-1} pointwise") {
  std::mt19937_64 rng(11);
  for (auto codes : {std::vector<uint64_t>{0, 1}, std::vector<uint64_t>{1, 1, 1}}) {
    PlaceCtx pc = make_place(2, 1, codes, 96, 10);
    for (uint32_t i = 1; i <= 6; ++i) {
      FunctionHandle fi{[&pc, i](const LocalSeries& s) { return eval_f(pc, i, s); }, nullptr};
      for (int rep = 0; rep < 3; ++rep) {
        LocalSeries t = random_integral(pc, rng);
        LocalSeries lhs = delta_point(pc, fi, t);
        auto chain = eval_f_chain(pc, i, t);
        LocalSeries rhs = add(pc.field, mul(pc.field, pc.bracket(i), chain[i]), chain[i - 1]);
        const int64_t through = std::min(lhs.prec, rhs.prec);
        CHECK(through > 48);
        CHECK(agree_to(pc.field, lhs, rhs, through));
      }
    }
  }
}

TEST_CASE("delta_n with n = 1 is delta") {
  PlaceCtx pc = make_place(2, 1, {0, 1}, 64, 6);
  std::mt19937_64 rng(13);
  FunctionHandle f2{[&pc](const LocalSeries& s) { return eval_f(pc, 2, s); }, nullptr};
  for (int rep = 0; rep < 5; ++rep) {
    LocalSeries t = random_integral(pc, rng);
    LocalSeries a = delta_point(pc, f2, t);
    LocalSeries b = delta_n_point(pc, f2, 1, t);
    CHECK(agree_to(pc.field, a, b, std::min(a.prec, b.prec)));
  }
}

TEST_CASE("delta_on_carlitz coefficient forms") {
  PlaceCtx pc = make_place(2, 1, {0, 1}, 64, 8);
  // u = c_0 f_0 only: Delta u = 0 since [0] = 0
  CarlitzFunction u0 = basis_function(pc, 0);
  CarlitzFunction d0 = delta_on_carlitz(pc, u0);
  CHECK(is_zero(d0.coeffs[0]));
  // u = f_1: Delta f_1 = 1 f_0 + [1] f_1
  CarlitzFunction u1 = basis_function(pc, 1);
  u1.coeffs.push_back(series_zero(pc.residue_level, pc.delta, kPrecMax));
  u1.v_lb.push_back(kPrecMax);  // store c_2 = 0 so the output reaches index 1
  CarlitzFunction d1 = delta_on_carlitz(pc, u1);
  REQUIRE(d1.i_max() >= 1);
  CHECK(agree_to(pc.field, d1.coeffs[0], pc.one_series(), pc.prec));
  CHECK(agree_to(pc.field, d1.coeffs[1], pc.bracket(1), pc.prec));
}

TEST_CASE("coefficient-level and pointwise delta agree on samples") {
  std::mt19937_64 rng(17);
  PlaceCtx pc0 = make_place(2, 1, {0, 1}, 160, 14);
  PolylogSet set = build_polylog_set(pc0, {0}, 12, 1);
  const PlaceCtx& pc = *set.place;
  CarlitzFunction dl = delta_on_carlitz(pc, set.l(1));
  FunctionHandle h = make_ln_handle(set, 1);
  for (int rep = 0; rep < 4; ++rep) {
    LocalSeries t = random_integral(pc, rng);
    LocalSeries a = eval_cf(pc, dl, t);
    LocalSeries b = delta_point(pc, h, t);
    const int64_t through = std::min(a.prec, b.prec);
    CHECK(through > 100);
    CHECK(agree_to(pc.field, a, b, through));
  }
}

TEST_CASE("Delta_n = sum_r A_{n,r} Delta^r pointwise on l_1") {
  std::mt19937_64 rng(19);
  PlaceCtx pc0 = make_place(2, 1, {0, 1}, 160, 14);
  PolylogSet set = build_polylog_set(pc0, {0}, 12, 1);
  const PlaceCtx& pc = *set.place;
  FunctionHandle u = make_ln_handle(set, 1);
  for (uint32_t n = 1; n <= 5; ++n) {
    LocalSeries t = random_integral(pc, rng);
    LocalSeries lhs = delta_n_point(pc, u, n, t);
    LocalSeries rhs = series_zero(pc.residue_level, pc.delta, kPrecMax);
    for (uint32_t r = 1; r <= n; ++r)
      rhs = add(pc.field, rhs, mul(pc.field, pc.a_coeff(n, r), delta_pow_point(pc, u, r, t)));
    const int64_t through = std::min(lhs.prec, rhs.prec);
    CHECK(through > 64);
    CHECK(agree_to(pc.field, lhs, rhs, through));
  }
}
