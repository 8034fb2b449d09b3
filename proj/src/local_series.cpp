#include "carlitz/local_series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace carlitz {

int64_t sat_add(int64_t a, int64_t b) {
  if (a >= kPrecMax || b >= kPrecMax) return kPrecMax;
  if (a <= -kPrecMax || b <= -kPrecMax) return -kPrecMax;
  int64_t s = a + b;
  return std::clamp(s, -kPrecMax, kPrecMax);
}

int64_t sat_mul(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  __int128 r = static_cast<__int128>(a) * b;
  if (r >= kPrecMax) return kPrecMax;
  if (r <= -kPrecMax) return -kPrecMax;
  return static_cast<int64_t>(r);
}

int64_t q_pow_int(uint64_t q, int64_t n) {
  int64_t r = 1;
  for (int64_t i = 0; i < n; ++i) {
    r = sat_mul(r, static_cast<int64_t>(q));
    if (r >= kPrecMax) return kPrecMax;
  }
  return r;
}

int64_t ceil_div(int64_t a, int64_t b) {
  // b > 0
  int64_t q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

namespace {

bool ff_is_zero(const FFElement& a) {
  for (uint32_t c : a.coords)
    if (c) return false;
  return true;
}

LocalSeries normalized(const FieldCtx& ctx, LocalSeries s) {
  // clamp the stored window to prec
  if (!s.digits.empty()) {
    const int64_t stored_end = sat_add(s.val, static_cast<int64_t>(s.digits.size()));
    if (stored_end > s.prec) {
      const int64_t keep = s.prec - s.val;
      if (keep <= 0)
        s.digits.clear();
      else
        s.digits.resize(static_cast<size_t>(keep));
    }
  }
  size_t lead = 0;
  while (lead < s.digits.size() && ctx.is_zero(s.digits[lead])) ++lead;
  if (lead == s.digits.size()) {
    s.digits.clear();
    s.val = s.prec;
    return s;
  }
  if (lead) {
    s.digits.erase(s.digits.begin(), s.digits.begin() + static_cast<std::ptrdiff_t>(lead));
    s.val += static_cast<int64_t>(lead);
  }
  size_t last = s.digits.size();
  while (last > 0 && ctx.is_zero(s.digits[last - 1])) --last;
  s.digits.resize(last);
  return s;
}

void check_compatible(const LocalSeries& a, const LocalSeries& b) {
  if (a.delta != b.delta) throw Error("series from different uniformizer contexts");
}

constexpr size_t kWindowGuard = 50'000'000;

}  // namespace

LocalSeries series_zero(uint32_t level, uint32_t delta, int64_t prec) {
  LocalSeries s;
  s.level = level;
  s.delta = delta;
  s.val = prec;
  s.prec = prec;
  return s;
}

LocalSeries series_const(const FieldCtx& ctx, const FFElement& c, uint32_t delta, int64_t prec) {
  LocalSeries s;
  s.level = c.level;
  s.delta = delta;
  s.val = 0;
  s.prec = prec;
  s.digits = {c};
  return normalized(ctx, std::move(s));
}

LocalSeries series_one(const FieldCtx& ctx, uint32_t level, uint32_t delta, int64_t prec) {
  return series_const(ctx, ctx.one(level), delta, prec);
}

LocalSeries series_uniformizer(const FieldCtx& ctx, uint32_t level, uint32_t delta, int64_t prec) {
  LocalSeries s;
  s.level = level;
  s.delta = delta;
  s.val = 1;
  s.prec = prec;
  s.digits = {ctx.one(level)};
  return normalized(ctx, std::move(s));
}

LocalSeries series_from_digits(const FieldCtx& ctx, uint32_t level, uint32_t delta, int64_t val,
                               std::vector<FFElement> digits, int64_t prec) {
  LocalSeries s;
  s.level = level;
  s.delta = delta;
  s.val = val;
  s.prec = prec;
  s.digits = std::move(digits);
  for (auto& d : s.digits)
    if (d.level != level) d = ctx.embed(d, level);
  return normalized(ctx, std::move(s));
}

FFElement digit_at(const FieldCtx& ctx, const LocalSeries& s, int64_t i) {
  if (i >= s.prec) throw Error("digit_at: index beyond precision");
  if (s.zero() || i < s.val || i >= s.val + static_cast<int64_t>(s.digits.size()))
    return ctx.zero(s.level);
  return s.digits[static_cast<size_t>(i - s.val)];
}

LocalSeries add(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b) {
  check_compatible(a, b);
  const uint32_t level = std::max(a.level, b.level);
  const int64_t prec = std::min(a.prec, b.prec);
  if (a.zero() && b.zero()) return series_zero(level, a.delta, prec);
  int64_t lo = kPrecMax;
  int64_t hi = -kPrecMax;  // stored digits end; beyond it digits are known zero
  if (!a.zero()) {
    lo = std::min(lo, a.val);
    hi = std::max(hi, a.val + static_cast<int64_t>(a.digits.size()));
  }
  if (!b.zero()) {
    lo = std::min(lo, b.val);
    hi = std::max(hi, b.val + static_cast<int64_t>(b.digits.size()));
  }
  lo = std::min(lo, prec);
  const int64_t n = std::min(hi, prec) - lo;
  if (n <= 0) return series_zero(level, a.delta, prec);
  if (static_cast<uint64_t>(n) > kWindowGuard) throw Error("series window too large");
  std::vector<FFElement> out(static_cast<size_t>(n), ctx.zero(level));
  auto accumulate = [&](const LocalSeries& s) {
    if (s.zero()) return;
    for (size_t k = 0; k < s.digits.size(); ++k) {
      const int64_t idx = s.val + static_cast<int64_t>(k);
      if (idx >= prec) break;
      ctx.add_assign(out[static_cast<size_t>(idx - lo)], s.digits[k]);
    }
  };
  accumulate(a);
  accumulate(b);
  return series_from_digits(ctx, level, a.delta, lo, std::move(out), prec);
}

LocalSeries neg(const FieldCtx& ctx, const LocalSeries& a) {
  LocalSeries r = a;
  for (auto& d : r.digits) d = ctx.neg(d);
  return r;
}

LocalSeries sub(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b) {
  return add(ctx, a, neg(ctx, b));
}

LocalSeries mul(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b) {
  check_compatible(a, b);
  const uint32_t level = std::max(a.level, b.level);
  const int64_t prec = std::min(sat_add(a.prec, b.v_lower_bound()),
                                sat_add(b.prec, a.v_lower_bound()));
  if (a.zero() || b.zero()) return series_zero(level, a.delta, prec);
  const int64_t val = sat_add(a.val, b.val);
  const int64_t window = prec - val;
  if (window <= 0) return series_zero(level, a.delta, prec);
  const int64_t conv_len = static_cast<int64_t>(a.digits.size() + b.digits.size()) - 1;
  const int64_t n = std::min(window, conv_len);
  if (static_cast<uint64_t>(n) > kWindowGuard) throw Error("series window too large");
  std::vector<FFElement> out(static_cast<size_t>(n), ctx.zero(level));
  for (size_t i = 0; i < a.digits.size(); ++i) {
    if (static_cast<int64_t>(i) >= n) break;
    if (ctx.is_zero(a.digits[i])) continue;
    const size_t jmax = std::min(b.digits.size(), static_cast<size_t>(n - static_cast<int64_t>(i)));
    for (size_t j = 0; j < jmax; ++j) {
      if (ctx.is_zero(b.digits[j])) continue;
      ctx.addmul_assign(out[i + j], a.digits[i], b.digits[j]);
    }
  }
  return series_from_digits(ctx, level, a.delta, val, std::move(out), prec);
}

LocalSeries inverse(const FieldCtx& ctx, const LocalSeries& a) {
  if (a.zero())
    throw IndeterminateValuationError("inverse of an element that is zero to its precision");
  const int64_t rel = a.prec - a.val;  // relative precision, >= 1
  if (static_cast<uint64_t>(rel) > kWindowGuard) throw Error("series window too large");
  const FFElement u0_inv = ctx.inv(a.digits[0]);
  std::vector<FFElement> w(static_cast<size_t>(rel), ctx.zero(a.level));
  w[0] = u0_inv;
  for (int64_t k = 1; k < rel; ++k) {
    FFElement s = ctx.zero(a.level);
    const size_t imax = std::min(a.digits.size() - 1, static_cast<size_t>(k));
    for (size_t i = 1; i <= imax; ++i) {
      if (ctx.is_zero(a.digits[i])) continue;
      ctx.addmul_assign(s, a.digits[i], w[static_cast<size_t>(k) - i]);
    }
    w[static_cast<size_t>(k)] = ctx.neg(ctx.mul(u0_inv, s));
  }
  return series_from_digits(ctx, a.level, a.delta, -a.val, std::move(w), a.prec - 2 * a.val);
}

LocalSeries div(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b) {
  return mul(ctx, a, inverse(ctx, b));
}

LocalSeries q_power(const FieldCtx& ctx, const LocalSeries& a, int64_t n, int64_t prec_cap) {
  if (n < 0) throw std::invalid_argument("q_power: n must be >= 0");
  const int64_t qn = q_pow_int(ctx.config().q, n);
  const int64_t prec = std::min(sat_mul(a.prec, qn), prec_cap);
  if (a.zero()) return series_zero(a.level, a.delta, prec);
  const int64_t val = sat_mul(a.val, qn);
  if (val >= prec) return series_zero(a.level, a.delta, prec);
  const int64_t e = n * static_cast<int64_t>(ctx.config().upsilon);
  std::vector<FFElement> out;
  for (size_t k = 0; k < a.digits.size(); ++k) {
    if (ctx.is_zero(a.digits[k])) continue;
    const int64_t idx = sat_mul(a.val + static_cast<int64_t>(k), qn);
    if (idx >= prec) break;
    const int64_t offset = idx - val;
    if (static_cast<uint64_t>(offset) > kWindowGuard) throw Error("series window too large");
    if (offset >= static_cast<int64_t>(out.size()))
      out.resize(static_cast<size_t>(offset) + 1, ctx.zero(a.level));
    out[static_cast<size_t>(offset)] = ctx.frobenius(a.digits[k], e);
  }
  return series_from_digits(ctx, a.level, a.delta, val, std::move(out), prec);
}

LocalSeries q_root(const FieldCtx& ctx, const LocalSeries& a) {
  const int64_t q = static_cast<int64_t>(ctx.config().q);
  const int64_t prec = ceil_div(a.prec, q);
  if (a.zero()) return series_zero(a.level, a.delta, prec);
  std::vector<FFElement> out;
  const int64_t val = a.val / q;  // a.val holds a nonzero digit, checked below
  for (size_t k = 0; k < a.digits.size(); ++k) {
    if (ctx.is_zero(a.digits[k])) continue;
    const int64_t idx = a.val + static_cast<int64_t>(k);
    if (idx % q != 0) throw QRootError("not a q-th power in the unramified model");
    const int64_t offset = idx / q - val;
    if (offset >= static_cast<int64_t>(out.size()))
      out.resize(static_cast<size_t>(offset) + 1, ctx.zero(a.level));
    out[static_cast<size_t>(offset)] =
        ctx.frobenius(a.digits[k], -static_cast<int64_t>(ctx.config().upsilon));
  }
  return series_from_digits(ctx, a.level, a.delta, val, std::move(out), prec);
}

LocalSeries truncate_to(const LocalSeries& a, int64_t new_prec) {
  if (new_prec > a.prec) throw std::invalid_argument("truncate_to: cannot raise precision");
  LocalSeries r = a;
  r.prec = new_prec;
  if (r.zero() || r.val >= new_prec) {
    r.digits.clear();
    r.val = new_prec;
    return r;
  }
  const int64_t keep = new_prec - r.val;
  if (keep < static_cast<int64_t>(r.digits.size())) r.digits.resize(static_cast<size_t>(keep));
  while (!r.digits.empty() && ff_is_zero(r.digits.back())) r.digits.pop_back();
  if (r.digits.empty()) r.val = new_prec;
  return r;
}

LocalSeries shift(const LocalSeries& a, int64_t k) {
  LocalSeries r = a;
  r.val = sat_add(r.val, k);
  r.prec = sat_add(r.prec, k);
  return r;
}

LocalSeries scalar_mul(const FieldCtx& ctx, const LocalSeries& a, const FFElement& c) {
  if (ctx.is_zero(c)) return series_zero(std::max(a.level, c.level), a.delta, a.prec);
  LocalSeries r = a;
  if (c.level > r.level) r.level = c.level;
  for (auto& d : r.digits) d = ctx.mul(d, c);
  return normalized(ctx, std::move(r));
}

LocalSeries int_mul(const FieldCtx& ctx, const LocalSeries& a, uint32_t m) {
  m %= ctx.config().p;
  if (m == 0) return series_zero(a.level, a.delta, a.prec);
  LocalSeries r = a;
  for (auto& d : r.digits) d = ctx.mul_scalar(d, m);
  return normalized(ctx, std::move(r));
}

Valuation defect_valuation(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b) {
  return sub(ctx, a, b).valuation();
}

bool agree_to(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b, int64_t through) {
  return sub(ctx, a, b).v_lower_bound() >= through;
}

bool equal_series(const FieldCtx& ctx, const LocalSeries& a, const LocalSeries& b) {
  if (a.prec != b.prec) return false;
  return sub(ctx, a, b).zero();
}

std::string series_key(const FieldCtx& ctx, const LocalSeries& s) {
  std::string k;
  k.reserve(32 + 8 * s.digits.size());
  k += std::to_string(s.level);
  k += '|';
  k += std::to_string(s.delta);
  k += '|';
  k += std::to_string(s.val);
  k += '|';
  k += std::to_string(s.prec);
  for (const auto& d : s.digits) {
    k += ',';
    k += std::to_string(ctx.element_code(d));
  }
  return k;
}

}  // namespace carlitz
