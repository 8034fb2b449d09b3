#include "carlitz/zeta.hpp"

#include <algorithm>
#include <stdexcept>

namespace carlitz {

ZetaEvaluator::ZetaEvaluator(PolylogSet set) : set_(std::move(set)) {
  if (!set_.place->is_x_place())
    throw std::invalid_argument("zeta is defined on K_x (build the polylogs at pi = x)");
  for (uint32_t n = 1; n <= set_.n_max; ++n) handles_.push_back(make_ln_handle(set_, n));
  one_ = set_.place->one_series();
}

LocalSeries ZetaEvaluator::zeta_with_depth(const LocalSeries& t, uint32_t n) const {
  const PlaceCtx& pc = place();
  if (t.zero()) return pc.zero_series();
  if (n < 1 || n > set_.n_max)
    throw DepthExceededError("polylog depth exceeded; rebuild with larger n_max");
  const LocalSeries alpha = as_base_digit_series(pc, shift(t, static_cast<int64_t>(n)));
  if (alpha.v_lower_bound() < 0)
    throw std::invalid_argument("zeta_with_depth: depth too small for v(t)");
  return frac_delta(pc, alpha, handles_[n - 1], one_, pc.prec);
}

LocalSeries ZetaEvaluator::zeta(const LocalSeries& t) const {
  const PlaceCtx& pc = place();
  if (t.zero()) return pc.zero_series();
  const std::string key = series_key(pc.field, t);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const uint32_t n = static_cast<uint32_t>(std::max<int64_t>(1, -t.val));
  LocalSeries v = zeta_with_depth(t, n);
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, std::move(v)).first->second;
}

LocalSeries ZetaEvaluator::zeta_xpow(int64_t k) const {
  return zeta(shift(one_, k));
}

LocalSeries ZetaEvaluator::zeta_special_pos(uint32_t m) const {
  return delta_pow_point(place(), handles_[0], m + 1, one_);
}

VerifyDefect ZetaEvaluator::verify_expansion_25(uint32_t n, const LocalSeries& t,
                                                uint32_t i_cut) const {
  const PlaceCtx& pc = place();
  if (n < 1 || n > set_.n_max) throw DepthExceededError("polylog depth exceeded");
  const LocalSeries targ = as_base_digit_series(pc, t);
  if (targ.v_lower_bound() < 0)
    throw std::invalid_argument("verify_expansion_25: t must lie in O_x");
  // positive powers go through the independent Delta-iteration route
  auto zeta_arg = [this](int64_t k) {
    return k > 0 ? zeta_special_pos(static_cast<uint32_t>(k)) : zeta_xpow(k);
  };
  const LocalSeries lhs = eval_cf(pc, set_.l(n), targ);
  LocalSeries rhs = series_zero(pc.residue_level, pc.delta, kPrecMax);
  for (uint32_t i = 0; i <= i_cut; ++i) {
    const LocalSeries zi = zeta_arg(static_cast<int64_t>(i) - static_cast<int64_t>(n));
    rhs = add(pc.field, rhs, mul(pc.field, zi, hyperdiff(pc, i, targ)));
  }
  VerifyDefect out;
  out.defect = defect_valuation(pc.field, lhs, rhs);
  // evidence bound: the next few omitted terms, capped at what the finite
  // precision of the two sides can certify at all
  out.certified_lb = std::min(lhs.prec, rhs.prec);
  for (uint32_t i = i_cut + 1; i <= i_cut + 4; ++i) {
    const LocalSeries zi = zeta_arg(static_cast<int64_t>(i) - static_cast<int64_t>(n));
    const LocalSeries di = hyperdiff(pc, i, targ);
    out.certified_lb =
        std::min(out.certified_lb, sat_add(zi.v_lower_bound(), di.v_lower_bound()));
  }
  return out;
}

ZetaEvaluator::Defect28 ZetaEvaluator::verify_c_identity_28(uint32_t i, uint32_t n) const {
  const PlaceCtx& pc = place();
  if (n < 1 || n > set_.n_max) throw DepthExceededError("polylog depth exceeded");
  if (i < 1 || i > set_.i_max) throw std::invalid_argument("verify_c_identity_28: i out of range");
  const LocalSeries& stored = set_.l(n).coeffs[i];
  LocalSeries sum = series_zero(pc.residue_level, pc.delta, kPrecMax);
  for (uint32_t r = 1; r <= i; ++r) {
    const LocalSeries zr = zeta_xpow(static_cast<int64_t>(r) - static_cast<int64_t>(n));
    sum = add(pc.field, sum, mul(pc.field, pc.a_coeff(i, r), zr));
  }
  Defect28 out;
  out.defect_sum = defect_valuation(pc.field, stored, sum);
  out.defect_pointwise =
      defect_valuation(pc.field, stored, delta_n_point(pc, handles_[n - 1], i, one_));
  return out;
}

VerifyDefect ZetaEvaluator::verify_functional_eq_29(uint32_t n, uint32_t i_cut) const {
  const PlaceCtx& pc = place();
  if (n < 1 || n > set_.n_max) throw DepthExceededError("polylog depth exceeded");
  const LocalSeries lhs = zeta_xpow(-static_cast<int64_t>(n));
  LocalSeries acc = series_zero(pc.residue_level, pc.delta, kPrecMax);
  for (uint32_t i = 1; i <= i_cut; ++i) {
    // inner sum first, then the outer weight: the order is part of the claim
    LocalSeries inner = series_zero(pc.residue_level, pc.delta, kPrecMax);
    for (uint32_t r = 1; r <= i; ++r) {
      const LocalSeries zr = zeta_xpow(static_cast<int64_t>(r) - static_cast<int64_t>(n));
      inner = add(pc.field, inner, mul(pc.field, pc.a_coeff(i, r), zr));
    }
    acc = add(pc.field, acc, pc.with_sign(mul(pc.field, pc.l_factorial_inv(i), inner), i + 1));
  }
  VerifyDefect out;
  out.defect = defect_valuation(pc.field, lhs, acc);
  // tail terms are c_i^{(n)}/L_i; the kappa certificate bounds them, capped
  // at what the finite precision of the two sides can certify at all
  const int64_t i1 = static_cast<int64_t>(i_cut) + 1;
  out.certified_lb =
      sat_add(sat_add(q_pow_int(pc.config().q, i1 - pc.delta), -(static_cast<int64_t>(n) - 1)),
              -(i1 / pc.delta));
  out.certified_lb = std::min({out.certified_lb, lhs.prec, acc.prec});
  return out;
}

FormalDirichlet fd_unit() { return fd_term(1, 1); }

FormalDirichlet fd_term(uint64_t j, uint32_t coeff) {
  if (j < 1) throw std::invalid_argument("formal Dirichlet indices start at 1");
  FormalDirichlet fd;
  if (coeff) fd.kappa[j] = coeff;
  return fd;
}

FormalDirichlet otimes(const FormalDirichlet& a, const FormalDirichlet& b, uint32_t p) {
  FormalDirichlet out;
  for (const auto& [ia, ka] : a.kappa) {
    for (const auto& [ib, kb] : b.kappa) {
      if (ia > (uint64_t{1} << 40) / ib) throw Error("otimes: index overflow");
      const uint64_t idx = ia * ib;
      uint32_t& c = out.kappa[idx];
      c = (c + ka * kb) % p;
      if (c == 0) out.kappa.erase(idx);
    }
  }
  return out;
}

FormalDirichlet euler_factor(uint64_t prime, uint64_t depth) {
  FormalDirichlet fd;
  for (uint64_t pe = 1; pe <= depth; pe *= prime) {
    fd.kappa[pe] = 1;
    if (pe > depth / prime) break;
  }
  return fd;
}

LocalSeries fd_evaluate(const PlaceCtx& place, const FormalDirichlet& fd, const LocalSeries& z) {
  if (z.v_lower_bound() < 1)
    throw ConvergenceDiskError("formal Dirichlet series need |z| < 1");
  LocalSeries acc = series_zero(z.level, place.delta, place.prec);
  for (const auto& [j, coeff] : fd.kappa) {
    if (sat_mul(q_pow_int(place.config().q, static_cast<int64_t>(j)), z.v_lower_bound()) >=
        place.prec)
      continue;
    LocalSeries term = q_power(place.field, z, static_cast<int64_t>(j), place.prec);
    acc = add(place.field, acc, int_mul(place.field, term, coeff));
  }
  return acc;
}

LocalSeries euler_z(const ZetaEvaluator& ev, uint32_t i) {
  if (i < 2) throw std::invalid_argument("euler_z: i must be >= 2");
  const PlaceCtx& pc = ev.place();
  const CarlitzFunction& l1 = ev.polylogs().l(1);
  if (i - 1 > l1.i_max()) throw std::invalid_argument("euler_z: i exceeds i_max");
  return q_power_rel(pc, mul(pc.field, l1.coeffs[i - 1], pc.bracket(i - 1)), 1);
}

LocalSeries euler_partial(const ZetaEvaluator& ev, uint32_t i, uint64_t primes_up_to,
                          uint64_t depth) {
  const PlaceCtx& pc = ev.place();
  FormalDirichlet prod = fd_unit();
  for (uint64_t p = 2; p <= primes_up_to; ++p) {
    bool prime = p >= 2;
    for (uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    prod = otimes(prod, euler_factor(p, depth), pc.config().p);
  }
  return fd_evaluate(pc, prod, euler_z(ev, i));
}

LocalSeries euler_direct_sum(const ZetaEvaluator& ev, uint32_t i) {
  const PlaceCtx& pc = ev.place();
  const LocalSeries z = euler_z(ev, i);
  LocalSeries acc = series_zero(z.level, pc.delta, pc.prec);
  for (int64_t j = 1;; ++j) {
    if (sat_mul(q_pow_int(pc.config().q, j), z.v_lower_bound()) >= pc.prec) break;
    acc = add(pc.field, acc, q_power(pc.field, z, j, pc.prec));
  }
  return acc;
}

}  // namespace carlitz
