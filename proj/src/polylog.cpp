#include "carlitz/polylog.hpp"

#include <algorithm>
#include <stdexcept>

namespace carlitz {
namespace {

LocalSeries exact_zero(const PlaceCtx& place) {
  return series_zero(place.residue_level, place.delta, kPrecMax);
}

// sum_{j>=0} base^{q^{j+1}}, the principal solution of (z^q - z) = -base^q.
LocalSeries principal_sum(const PlaceCtx& place, const LocalSeries& base) {
  LocalSeries acc = series_zero(base.level, place.delta, place.prec);
  const int64_t v = base.v_lower_bound();
  if (v <= 0) throw Error("principal_sum: base must have positive valuation");
  for (int64_t j = 1;; ++j) {
    if (sat_mul(v, q_pow_int(place.config().q, j)) >= place.prec) break;
    acc = add(place.field, acc, q_power(place.field, base, j, place.prec));
  }
  return acc;
}

int64_t bracket_valuation(const PlaceCtx& place, uint32_t n) {
  return n % place.delta == 0 ? 1 : 0;
}

// c_0 = sum_{i>=1} (-1)^{i+1} c_i / L_i with the certified remainder.
LocalSeries head_coefficient(const PlaceCtx& place, const std::vector<LocalSeries>& c,
                             const std::vector<int64_t>& v_lb, const TailBound& tail) {
  const uint32_t i_max = static_cast<uint32_t>(c.size()) - 1;
  LocalSeries acc = exact_zero(place);
  int64_t omitted = sat_add(tail.lower_bound(place, i_max + 1),
                            -static_cast<int64_t>((i_max + 1) / place.delta));
  for (uint32_t i = 1; i <= i_max; ++i) {
    const int64_t term_lb = sat_add(v_lb[i], -static_cast<int64_t>(i / place.delta));
    if (term_lb >= place.prec) {
      omitted = std::min(omitted, term_lb);
      continue;
    }
    LocalSeries term = mul(place.field, c[i], place.l_factorial_inv(i));
    acc = add(place.field, acc, place.with_sign(term, i + 1));
  }
  if (omitted < acc.prec) acc = truncate_to(acc, omitted);
  return acc;
}

}  // namespace

LinearPowerSeries build_l1_series(const PlaceCtx& place, uint32_t j_max) {
  return build_ln_series(place, 1, j_max);
}

LinearPowerSeries build_ln_series(const PlaceCtx& place, uint32_t n, uint32_t j_max) {
  if (j_max < 1) throw std::invalid_argument("build_ln_series: j_max must be >= 1");
  LinearPowerSeries lps;
  lps.coeffs.push_back(exact_zero(place));  // a_0 = 0
  for (uint32_t j = 1; j <= j_max; ++j) {
    LocalSeries a = place.bracket_inv(j);
    LocalSeries an = a;
    for (uint32_t k = 1; k < n; ++k) an = mul(place.field, an, a);
    lps.coeffs.push_back(an);
  }
  return lps;
}

CarlitzFunction build_l1_carlitz(PlaceCtx& place, const std::vector<uint32_t>& branch,
                                 uint32_t i_max) {
  const uint32_t delta = place.delta;
  const uint64_t q = place.config().q;
  if (branch.size() != delta)
    throw BranchRangeError("branch must have delta entries");
  for (uint32_t b : branch)
    if (b >= q) throw BranchRangeError("branch index out of range");
  if (i_max < delta) throw std::invalid_argument("build_l1_carlitz: i_max < delta");

  CarlitzFunction u;
  u.coeffs.assign(i_max + 1, exact_zero(place));
  u.v_lb.assign(i_max + 1, 0);
  u.tail = TailBound{TailBound::Kind::kappa, 0, 0, 1};

  // c_1: the branch-selected root of c^q - c = -1 (right-hand side taken
  // literally; the sign matters for odd p)
  {
    auto r = artin_schreier_solve(place.field, neg(place.field, place.one_series()));
    place.field = r.field;
    u.coeffs[1] = r.roots.at(branch[0]);
    u.v_lb[1] = 0;
  }
  // c_2..c_delta: unit roots of c_{i+1}^q - c_{i+1} = -[i]^q c_i^q
  for (uint32_t i = 1; i + 1 <= delta; ++i) {
    LocalSeries base = mul(place.field, place.bracket(i), u.coeffs[i]);
    LocalSeries xi = neg(place.field, q_power_rel(place, base, 1));
    auto r = artin_schreier_solve(place.field, xi);
    place.field = r.field;
    u.coeffs[i + 1] = r.roots.at(branch[i]);
    u.v_lb[i + 1] = 0;
  }
  // higher coefficients by the convergent series (principal roots throughout)
  for (uint32_t n = delta + 1; n <= i_max; ++n) {
    LocalSeries base = mul(place.field, place.bracket(n - 1), u.coeffs[n - 1]);
    const int64_t vbase = sat_add(u.v_lb[n - 1], bracket_valuation(place, n - 1));
    if (vbase < place.prec)
      u.coeffs[n] = principal_sum(place, base);
    else
      u.coeffs[n] = series_zero(base.level, place.delta, place.prec);
    u.v_lb[n] = sat_mul(static_cast<int64_t>(q), vbase);
    u.v_lb[n] = std::max(u.v_lb[n], u.coeffs[n].v_lower_bound());
  }
  u.coeffs[0] = head_coefficient(place, u.coeffs, u.v_lb, u.tail);
  u.v_lb[0] = u.coeffs[0].v_lower_bound();
  // decay certificate for the stored range
  for (uint32_t n = delta + 1; n <= i_max; ++n)
    if (u.v_lb[n] < q_pow_int(q, static_cast<int64_t>(n) - delta))
      throw Error("build_l1_carlitz: decay certificate violated (internal)");
  return u;
}

CarlitzFunction build_ln(const PlaceCtx& place, const CarlitzFunction& l_prev, uint32_t n) {
  if (l_prev.tail.kind != TailBound::Kind::kappa)
    throw std::invalid_argument("build_ln: previous polylog must carry a kappa tail bound");
  if (n < 2 || l_prev.tail.kappa != static_cast<int64_t>(n) - 2)
    throw std::invalid_argument("build_ln: l_prev is not l_{n-1}");
  const uint32_t i_max = l_prev.i_max();
  const uint32_t delta = place.delta;
  const int64_t kappa_prev = l_prev.tail.kappa;

  // backward partial sums S_m = sum_{j>=m} (-1)^j c_j / L_j with certificates
  const int64_t tail_term_lb =
      sat_add(l_prev.tail.lower_bound(place, i_max + 1),
              -static_cast<int64_t>((i_max + 1) / delta));
  LocalSeries S = series_zero(place.residue_level, delta, std::max(tail_term_lb, place.prec));
  int64_t S_lb = tail_term_lb;
  CarlitzFunction out;
  out.tail = TailBound{TailBound::Kind::kappa, kappa_prev + 1, 0, 1};
  std::vector<LocalSeries> c(i_max + 1, exact_zero(place));
  std::vector<int64_t> lb(i_max + 1, 0);
  for (uint32_t m = i_max; m >= 1; --m) {
    const int64_t term_lb = sat_add(l_prev.v_lb[m], -static_cast<int64_t>(m / delta));
    if (term_lb >= place.prec) {
      S_lb = std::min(S_lb, term_lb);
      if (S.prec > term_lb) S = truncate_to(S, term_lb);
    } else {
      LocalSeries term =
          place.with_sign(mul(place.field, l_prev.coeffs[m], place.l_factorial_inv(m)), m);
      S = add(place.field, S, term);
      S_lb = std::min(S_lb, term_lb);
    }
    c[m] = place.with_sign(mul(place.field, place.l_factorial(m - 1), S), m);
    lb[m] = std::max(c[m].v_lower_bound(),
                     sat_add(static_cast<int64_t>((m - 1) / delta), S_lb));
  }
  out.coeffs = std::move(c);
  out.v_lb = std::move(lb);
  out.coeffs[0] = head_coefficient(place, out.coeffs, out.v_lb, out.tail);
  out.v_lb[0] = out.coeffs[0].v_lower_bound();
  // decay certificate with the computed constant
  for (uint32_t i = delta + 1; i <= i_max; ++i) {
    const int64_t need =
        sat_add(q_pow_int(place.config().q, static_cast<int64_t>(i) - delta), -out.tail.kappa);
    if (out.v_lb[i] < need) throw Error("build_ln: decay certificate violated (internal)");
  }
  return out;
}

LocalSeries eval_ln_series(const PlaceCtx& place, uint32_t n, const LocalSeries& t) {
  const int64_t v = t.v_lower_bound();
  if (v < 1) throw ConvergenceDiskError("outside disk of convergence");
  const uint64_t q = place.config().q;
  LocalSeries acc = exact_zero(place);
  for (int64_t j = 1;; ++j) {
    const int64_t qjv = sat_mul(q_pow_int(q, j), v);
    const int64_t term_lb = sat_add(qjv, -static_cast<int64_t>(n) * (j / place.delta));
    const bool tail_monotone =
        sat_mul(qjv, static_cast<int64_t>(q) - 1) > static_cast<int64_t>(n);
    if (term_lb >= place.prec && tail_monotone) break;
    LocalSeries term = q_power(place.field, t, j, place.prec);
    for (uint32_t k = 0; k < n; ++k) term = mul(place.field, term, place.bracket_inv(j));
    acc = add(place.field, acc, term);
  }
  if (acc.prec > place.prec) acc = truncate_to(acc, place.prec);
  return acc;
}

CarlitzFunction build_alternative_branch(PlaceCtx& place, uint32_t n_branch, uint32_t i_max) {
  const uint32_t delta = place.delta;
  if (n_branch < 2) throw std::invalid_argument("build_alternative_branch: N must be >= 2");
  if (static_cast<uint64_t>(n_branch) * delta > i_max)
    throw std::invalid_argument("build_alternative_branch: N*delta exceeds i_max");
  const uint32_t unit_through = n_branch * delta;

  CarlitzFunction u;
  u.coeffs.assign(i_max + 1, exact_zero(place));
  u.v_lb.assign(i_max + 1, 0);

  for (uint32_t n = 1; n <= unit_through; ++n) {
    LocalSeries xi;
    if (n == 1) {
      xi = neg(place.field, place.one_series());
    } else {
      LocalSeries base = mul(place.field, place.bracket(n - 1), u.coeffs[n - 1]);
      xi = neg(place.field, q_power_rel(place, base, 1));
    }
    auto r = artin_schreier_solve(place.field, xi);
    place.field = r.field;
    // a unit root: skip the principal one when it exists
    const size_t pick = r.principal_index ? (*r.principal_index == 0 ? 1 : 0) : 0;
    u.coeffs[n] = r.roots.at(pick);
    if (u.coeffs[n].v_lower_bound() != 0)
      throw Error("build_alternative_branch: expected a unit root (internal)");
    u.v_lb[n] = 0;
  }
  for (uint32_t n = unit_through + 1; n <= i_max; ++n) {
    LocalSeries base = mul(place.field, place.bracket(n - 1), u.coeffs[n - 1]);
    const int64_t vbase = sat_add(u.v_lb[n - 1], bracket_valuation(place, n - 1));
    if (vbase < place.prec)
      u.coeffs[n] = principal_sum(place, base);
    else
      u.coeffs[n] = series_zero(base.level, place.delta, place.prec);
    u.v_lb[n] = sat_mul(static_cast<int64_t>(place.config().q), vbase);
    u.v_lb[n] = std::max(u.v_lb[n], u.coeffs[n].v_lower_bound());
  }
  u.tail = TailBound{TailBound::Kind::geometric, 0, static_cast<int64_t>(i_max),
                     u.v_lb[i_max]};
  u.coeffs[0] = head_coefficient(place, u.coeffs, u.v_lb, u.tail);
  u.v_lb[0] = u.coeffs[0].v_lower_bound();
  return u;
}

PolylogSet build_polylog_set(PlaceCtx place, std::vector<uint32_t> branch, uint32_t i_max,
                             uint32_t n_max) {
  if (branch.empty()) branch.assign(place.delta, 0);
  if (n_max < 1) throw std::invalid_argument("build_polylog_set: n_max must be >= 1");
  PolylogSet set;
  set.branch = branch;
  set.i_max = i_max;
  set.n_max = n_max;
  set.carlitz_rep.push_back(build_l1_carlitz(place, branch, i_max));
  for (uint32_t n = 2; n <= n_max; ++n)
    set.carlitz_rep.push_back(build_ln(place, set.carlitz_rep.back(), n));
  uint32_t j_max = 1;
  while (q_pow_int(place.config().q, j_max) < place.prec + 4 * static_cast<int64_t>(n_max))
    ++j_max;
  for (uint32_t n = 1; n <= n_max; ++n)
    set.series_rep.push_back(build_ln_series(place, n, j_max));
  set.place = std::make_shared<const PlaceCtx>(std::move(place));
  return set;
}

FunctionHandle make_ln_handle(const PolylogSet& set, uint32_t n) {
  if (n < 1 || n > set.n_max) throw DepthExceededError("polylog depth exceeded");
  const CarlitzFunction& cf = set.l(n);
  std::shared_ptr<const PlaceCtx> place = set.place;
  int64_t m0 = cf.tail.lower_bound(*place, cf.i_max() + 1);
  for (int64_t b : cf.v_lb) m0 = std::min(m0, b);
  const uint32_t delta = place->delta;
  const uint64_t q = place->config().q;
  // the min over j is attained at small j (exponential beats linear)
  auto modulus = [m0, delta, q, n](int64_t s) -> int64_t {
    if (s <= 0) return m0;
    int64_t best = kPrecMax;
    for (int64_t j = 1; j <= 64; ++j) {
      const int64_t qjs = sat_mul(q_pow_int(q, j), s);
      best = std::min(best, sat_add(qjs, -static_cast<int64_t>(n) * (j / delta)));
      if (qjs >= kPrecMax / 2) break;
    }
    return std::max(best, m0);
  };
  return memoized(place, make_cf_handle(place, cf, modulus));
}

}  // namespace carlitz
