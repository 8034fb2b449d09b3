#include "carlitz/hyperdiff.hpp"

#include <stdexcept>

namespace carlitz {
namespace {

void require_x_place(const PlaceCtx& place) {
  if (!place.is_x_place())
    throw std::invalid_argument("hyperdifferentiations are defined for pi = x only");
}

}  // namespace

bool is_base_digit_series(const PlaceCtx& place, const LocalSeries& s) {
  const uint32_t ql = place.q_level();
  for (const auto& d : s.digits)
    if (!place.field.lies_in_level(d, ql)) return false;
  return true;
}

LocalSeries as_base_digit_series(const PlaceCtx& place, const LocalSeries& s) {
  if (!is_base_digit_series(place, s))
    throw Error("series has digits outside F_q");
  LocalSeries r = s;
  const uint32_t ql = place.q_level();
  for (auto& d : r.digits) d = place.field.relevel_down(d, ql);
  r.level = ql;
  return r;
}

LocalSeries hyperdiff(const PlaceCtx& place, uint64_t k, const LocalSeries& t) {
  require_x_place(place);
  const LocalSeries s = as_base_digit_series(place, t);
  if (s.v_lower_bound() < 0)
    throw std::invalid_argument("hyperdiff: argument must lie in O_x");
  const int64_t prec_out = s.prec - static_cast<int64_t>(k);
  if (s.zero() || prec_out <= s.val - static_cast<int64_t>(k))
    return series_zero(s.level, s.delta, prec_out);
  std::vector<FFElement> out;
  const int64_t lo = std::max<int64_t>(0, s.val - static_cast<int64_t>(k));
  for (size_t idx = 0; idx < s.digits.size(); ++idx) {
    const int64_t n = s.val + static_cast<int64_t>(idx);
    if (n < static_cast<int64_t>(k)) continue;
    const uint32_t b = lucas_binomial_mod(static_cast<uint64_t>(n), k, place.config().p);
    if (b == 0) continue;
    const int64_t m = n - static_cast<int64_t>(k) - lo;
    if (m >= static_cast<int64_t>(out.size()))
      out.resize(static_cast<size_t>(m) + 1, place.field.zero(s.level));
    out[static_cast<size_t>(m)] = place.field.mul_scalar(s.digits[idx], b);
  }
  return series_from_digits(place.field, s.level, s.delta, lo, std::move(out), prec_out);
}

LocalSeries hat_transform(const PlaceCtx& place, const LocalSeries& alpha) {
  require_x_place(place);
  LocalSeries r = as_base_digit_series(place, alpha);
  if (r.v_lower_bound() < 0)
    throw std::invalid_argument("hat_transform: argument must lie in O_x");
  for (size_t idx = 0; idx < r.digits.size(); ++idx) {
    const int64_t n = r.val + static_cast<int64_t>(idx);
    if (n % 2 != 0) r.digits[idx] = place.field.neg(r.digits[idx]);
  }
  return r;
}

LocalSeries frac_delta(const PlaceCtx& place, const LocalSeries& alpha, const FunctionHandle& u,
                       const LocalSeries& t, int64_t target_prec) {
  require_x_place(place);
  if (!u.modulus_lb) throw Error("frac_delta: handle carries no modulus bound");
  if (t.v_lower_bound() < 0 || alpha.v_lower_bound() < 0)
    throw std::invalid_argument("frac_delta: alpha and t must lie in O_x");
  const LocalSeries alpha_hat = hat_transform(place, alpha);
  const int64_t vt = t.v_lower_bound();
  LocalSeries acc = series_zero(place.residue_level, place.delta, kPrecMax);
  LocalSeries arg = t;
  for (int64_t k = 0;; ++k) {
    if (u.modulus_lb(sat_add(k, vt)) >= target_prec) break;
    if (k >= alpha_hat.prec)
      throw Error("frac_delta: alpha precision exhausted before the certified cutoff");
    if (k > 100000) throw Error("frac_delta: cutoff not reached (internal)");
    const LocalSeries dk = hyperdiff(place, static_cast<uint64_t>(k), alpha_hat);
    // zero dk still bounds the result's precision (alpha is only known mod x^N)
    LocalSeries term = mul(place.field, dk, u.eval(arg));
    acc = add(place.field, acc, place.with_sign(term, static_cast<uint64_t>(k)));
    arg = mul(place.field, arg, place.chi);
  }
  if (acc.prec > target_prec) acc = truncate_to(acc, target_prec);
  return acc;
}

}  // namespace carlitz
