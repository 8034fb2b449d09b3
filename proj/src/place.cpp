#include "carlitz/place.hpp"

#include <algorithm>
#include <stdexcept>

namespace carlitz {
namespace {

LocalSeries eval_poly_at_series(const FieldCtx& field, const std::vector<FFElement>& f,
                                const LocalSeries& x, uint32_t delta) {
  LocalSeries r = series_zero(x.level, delta, x.prec);
  for (size_t i = f.size(); i-- > 0;) {
    r = mul(field, r, x);
    r = add(field, r, series_const(field, f[i], delta, x.prec));
  }
  return r;
}

std::vector<FFElement> poly_derivative(const FieldCtx& field, const std::vector<FFElement>& f) {
  std::vector<FFElement> d;
  for (size_t i = 1; i < f.size(); ++i)
    d.push_back(field.mul_scalar(f[i], static_cast<uint32_t>(i % field.config().p)));
  return d;
}

// Smallest-code root of pi in the residue level (pi splits there).
FFElement find_residue_root(const FieldCtx& field, const std::vector<FFElement>& pi,
                            uint32_t residue_level) {
  const uint64_t card = field.level_card(residue_level);
  if (card > 1u << 20) throw Error("residue field too large for root search");
  for (uint64_t code = 0; code < card; ++code) {
    FFElement cand = field.element_from_code(residue_level, code);
    FFElement acc = field.zero(residue_level);
    for (size_t i = pi.size(); i-- > 0;) {
      acc = field.mul(acc, cand);
      field.add_assign(acc, pi[i]);
    }
    if (field.is_zero(acc)) return cand;
  }
  throw Error("pi has no root in its residue field (broken construction)");
}

LocalSeries newton_chi(const FieldCtx& field, const std::vector<FFElement>& pi,
                       const FFElement& xbar, uint32_t residue_level, uint32_t delta,
                       int64_t prec) {
  const std::vector<FFElement> dpi = poly_derivative(field, pi);
  LocalSeries x = series_const(field, field.embed(xbar, residue_level), delta, 1);
  int64_t cur = 1;
  while (cur < prec) {
    const int64_t next = std::min(cur * 2, prec);
    // lift: treat the stored digits as a polynomial known to the next precision
    x = series_from_digits(field, residue_level, delta, x.zero() ? 0 : x.val, x.digits, next);
    const LocalSeries t = series_uniformizer(field, residue_level, delta, next);
    LocalSeries f = sub(field, eval_poly_at_series(field, pi, x, delta), t);
    LocalSeries g = eval_poly_at_series(field, dpi, x, delta);
    x = sub(field, x, div(field, f, g));
    cur = next;
  }
  // self-check: pi(chi) must equal the uniformizer to full precision
  const LocalSeries t = series_uniformizer(field, residue_level, delta, prec);
  if (!agree_to(field, eval_poly_at_series(field, pi, x, delta), t, prec))
    throw Error("Newton iteration for chi failed to converge");
  return x;
}

}  // namespace

bool PlaceCtx::is_x_place() const {
  return delta == 1 && field.is_zero(pi[0]) && field.equal(pi[1], field.one(q_level()));
}

LocalSeries q_power_rel(const PlaceCtx& place, const LocalSeries& a, int64_t n) {
  const int64_t qn = q_pow_int(place.config().q, n);
  const int64_t cap = sat_add(sat_mul(a.v_lower_bound(), qn), place.prec);
  return q_power(place.field, a, n, cap);
}

LocalSeries PlaceCtx::bracket(uint32_t n) const {
  if (n < 1) throw std::invalid_argument("bracket: n must be >= 1");
  if (n <= cache_bound) return brackets_[n - 1];
  return sub(field, q_power_rel(*this, chi, n), chi);
}

LocalSeries PlaceCtx::bracket_inv(uint32_t n) const {
  if (n < 1) throw std::invalid_argument("bracket_inv: n must be >= 1");
  if (n <= cache_bound) return bracket_invs_[n - 1];
  return inverse(field, bracket(n));
}

LocalSeries PlaceCtx::d_factorial(uint32_t i) const {
  if (i <= cache_bound) return d_facts_[i];
  return mul(field, bracket(i), q_power_rel(*this, d_factorial(i - 1), 1));
}

LocalSeries PlaceCtx::l_factorial(uint32_t i) const {
  if (i <= cache_bound) return l_facts_[i];
  return mul(field, bracket(i), l_factorial(i - 1));
}

LocalSeries PlaceCtx::l_factorial_inv(uint32_t i) const {
  if (i <= cache_bound) return l_fact_invs_[i];
  return inverse(field, l_factorial(i));
}

LocalSeries PlaceCtx::with_sign(const LocalSeries& s, uint64_t parity) const {
  return (parity % 2 == 0) ? s : neg(field, s);
}

namespace {

// One DP row extension: with E = elementary symmetric functions of
// {1/[1],...,1/[m-1]}, fold in 1/[m].
void fold_symmetric(const PlaceCtx& place, std::vector<LocalSeries>& E, const LocalSeries& g) {
  E.push_back(series_zero(E.front().level, place.delta, kPrecMax));
  for (size_t k = E.size() - 1; k >= 1; --k)
    E[k] = add(place.field, E[k], mul(place.field, E[k - 1], g));
}

std::vector<LocalSeries> a_row_from_scratch(const PlaceCtx& place, uint32_t n) {
  std::vector<LocalSeries> E{place.one_series()};
  for (uint32_t m = 1; m + 1 <= n; ++m) fold_symmetric(place, E, place.bracket_inv(m));
  std::vector<LocalSeries> row;
  const LocalSeries ln1 = place.l_factorial(n - 1);
  for (uint32_t r = 1; r <= n; ++r)
    row.push_back(place.with_sign(mul(place.field, ln1, E[r - 1]), n + r));
  return row;
}

}  // namespace

LocalSeries PlaceCtx::a_coeff(uint32_t n, uint32_t r) const {
  if (r < 1 || r > n) throw std::invalid_argument("a_coeff: need 1 <= r <= n");
  if (n <= cache_bound) return a_table_[n - 1][r - 1];
  return a_row_from_scratch(*this, n)[r - 1];
}

std::vector<LocalSeries> PlaceCtx::a_row(uint32_t n) const {
  if (n < 1) throw std::invalid_argument("a_row: n must be >= 1");
  if (n <= cache_bound) return a_table_[n - 1];
  return a_row_from_scratch(*this, n);
}

LocalSeries PlaceCtx::embed_poly(const std::vector<FFElement>& f) const {
  LocalSeries r = zero_series();
  for (size_t i = f.size(); i-- > 0;) {
    r = mul(field, r, chi);
    r = add(field, r, const_series(field.embed(f[i], residue_level)));
  }
  return r;
}

LocalSeries PlaceCtx::embed_poly_codes(const std::vector<uint64_t>& codes) const {
  std::vector<FFElement> f;
  f.reserve(codes.size());
  for (uint64_t c : codes) f.push_back(field.element_from_code(q_level(), c));
  return embed_poly(f);
}

LocalSeries PlaceCtx::embed_rational(const std::vector<FFElement>& num,
                                     const std::vector<FFElement>& den) const {
  const LocalSeries d = embed_poly(den);
  if (d.zero())
    throw IndeterminateValuationError("denominator is divisible by pi to full precision");
  return div(field, embed_poly(num), d);
}

PlaceCtx make_place(uint32_t p, uint32_t upsilon, const std::vector<uint64_t>& pi_codes,
                    int64_t prec, uint32_t cache_bound) {
  if (prec < 2) throw std::invalid_argument("make_place: precision must be >= 2");
  PlaceCtx pc;
  pc.field = make_field(p, upsilon);
  pc.prec = prec;
  pc.pi_codes = pi_codes;
  const uint32_t ql = pc.field.q_level();
  for (uint64_t c : pi_codes) pc.pi.push_back(pc.field.element_from_code(ql, c));
  while (!pc.pi.empty() && pc.field.is_zero(pc.pi.back())) pc.pi.pop_back();
  if (pc.pi.size() < 2) throw std::invalid_argument("pi must have degree >= 1");
  if (!pc.field.equal(pc.pi.back(), pc.field.one(ql)))
    throw std::invalid_argument("pi must be monic");
  pc.delta = static_cast<uint32_t>(pc.pi.size() - 1);
  if (!poly_is_irreducible(pc.field, pc.pi)) throw ReduciblePolynomialError("reducible pi");
  if (pc.delta == 1) {
    pc.residue_level = ql;
  } else {
    pc.field = extend(pc.field, pc.delta);
    pc.residue_level = pc.field.top_level();
  }
  const FFElement xbar = find_residue_root(pc.field, pc.pi, pc.residue_level);
  pc.chi = newton_chi(pc.field, pc.pi, xbar, pc.residue_level, pc.delta, prec);

  PlaceCtx& c = pc;
  for (uint32_t n = 1; n <= cache_bound; ++n) {
    c.brackets_.push_back(sub(c.field, q_power_rel(c, c.chi, n), c.chi));
    c.bracket_invs_.push_back(inverse(c.field, c.brackets_.back()));
  }
  c.d_facts_.push_back(c.one_series());
  c.l_facts_.push_back(c.one_series());
  c.l_fact_invs_.push_back(c.one_series());
  for (uint32_t i = 1; i <= cache_bound; ++i) {
    c.d_facts_.push_back(mul(c.field, c.brackets_[i - 1], q_power_rel(c, c.d_facts_[i - 1], 1)));
    c.l_facts_.push_back(mul(c.field, c.brackets_[i - 1], c.l_facts_[i - 1]));
    c.l_fact_invs_.push_back(inverse(c.field, c.l_facts_[i]));
  }
  std::vector<LocalSeries> E{c.one_series()};
  for (uint32_t n = 1; n <= cache_bound; ++n) {
    std::vector<LocalSeries> row;
    for (uint32_t r = 1; r <= n; ++r)
      row.push_back(c.with_sign(mul(c.field, c.l_facts_[n - 1], E[r - 1]), n + r));
    c.a_table_.push_back(std::move(row));
    fold_symmetric(c, E, c.bracket_invs_[n - 1]);
  }
  c.cache_bound = cache_bound;
  return pc;
}

}  // namespace carlitz
