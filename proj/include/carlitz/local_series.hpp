#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "carlitz/field_tower.hpp"

namespace carlitz {

// Largest representable index/precision; arithmetic on precisions saturates here.
inline constexpr int64_t kPrecMax = int64_t{1} << 60;

struct Valuation {
  bool exact = false;
  int64_t value = 0;  // when !exact, the true valuation is >= value (interval answer)
};

// Truncated Laurent series sum a_i pi^i in a uniformizer pi, digits a_i in a
// tower level, "zealous" absolute precision semantics: digits are known for
// all indices < prec and nothing is claimed beyond. |t|_pi = q^{-delta v(t)}.
//
// Invariants: stored digits cover indices val .. val+digits.size()-1 with
// digits.front() and digits.back() nonzero; indices between the stored window
// and prec are known to be zero. The zero-to-precision element stores no
// digits and has val == prec.
struct LocalSeries {
  uint32_t level = 0;
  uint32_t delta = 1;
  int64_t val = 0;
  int64_t prec = 0;
  std::vector<FFElement> digits;

  bool zero() const { return digits.empty(); }
  int64_t v_lower_bound() const { return zero() ? prec : val; }
  Valuation valuation() const {
    return zero() ? Valuation{false, prec} : Valuation{true, val};
  }
};

LocalSeries series_zero(uint32_t level, uint32_t delta, int64_t prec);
LocalSeries series_const(const FieldCtx& ctx, const FFElement& c, uint32_t delta, int64_t prec);
LocalSeries series_one(const FieldCtx& ctx, uint32_t level, uint32_t delta, int64_t prec);
LocalSeries series_uniformizer(const FieldCtx& ctx, uint32_t level, uint32_t delta, int64_t prec);
// Digits indexed from `val`; window clamped to prec, then normalized.
LocalSeries series_from_digits(const FieldCtx& ctx, uint32_t level, uint32_t delta, int64_t val,
                               std::vector<FFElement> digits, int64_t prec);

// Digit at absolute index i (zero when outside the stored window); throws
// Error when i >= prec, i.e. when the digit is not known.
FFElement digit_at(const FieldCtx& ctx, const LocalSeries& s, int64_t i);

LocalSeries add(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b);
LocalSeries sub(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b);
LocalSeries neg(const FieldCtx& ctx, const LocalSeries& a);
LocalSeries mul(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b);
// Series inverse of a nonzero element; N_inv = N - 2 v. Throws
// IndeterminateValuationError when the operand is zero to its precision.
LocalSeries inverse(const FieldCtx& ctx, const LocalSeries& a);
LocalSeries div(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b);

// a^{q^n}, digit-wise Frobenius and index dilation; exact: N' = N q^n,
// optionally capped at prec_cap to keep windows small.
LocalSeries q_power(const FieldCtx& ctx, const LocalSeries& a, int64_t n,
                    int64_t prec_cap = kPrecMax);
// Digit-wise inverse Frobenius and index division; requires every nonzero
// digit index divisible by q, else QRootError. N' = ceil(N/q).
LocalSeries q_root(const FieldCtx& ctx, const LocalSeries& a);

LocalSeries truncate_to(const LocalSeries& a, int64_t new_prec);
// Multiply by pi^k (exact).
LocalSeries shift(const LocalSeries& a, int64_t k);
LocalSeries scalar_mul(const FieldCtx& ctx, const LocalSeries& a, const FFElement& c);
// Multiply by m in F_p (used for integer coefficients like binomials).
LocalSeries int_mul(const FieldCtx& ctx, const LocalSeries& a, uint32_t m);

inline bool is_zero(const LocalSeries& a) { return a.zero(); }

// Valuation of a - b: exact if the difference has a visible digit, otherwise
// the interval answer ">= min precision".
Valuation defect_valuation(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b);
// True iff a - b is zero to precision at least `through` (requires both
// known that far).
bool agree_to(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b, int64_t through);
bool equal_series(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b);

// Canonical byte key (level, delta, val, prec, digit codes) for memo tables.
std::string series_key(const FieldCtx& ctx, const LocalSeries& s);

int64_t sat_add(int64_t a, int64_t b);
int64_t sat_mul(int64_t a, int64_t b);
// q^n with saturation at kPrecMax.
int64_t q_pow_int(uint64_t q, int64_t n);
int64_t ceil_div(int64_t a, int64_t b);

}  // namespace carlitz
