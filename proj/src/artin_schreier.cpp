#include "carlitz/artin_schreier.hpp"

namespace carlitz {
namespace {

// z with z^q - z = xi and v(z) = v(xi), for v(xi) > 0 (or xi zero to precision).
LocalSeries principal_root(const FieldCtx& field, const LocalSeries& xi) {
  LocalSeries acc = series_zero(xi.level, xi.delta, xi.prec);
  const int64_t v = xi.v_lower_bound();
  for (int64_t j = 0;; ++j) {
    const int64_t term_v = sat_mul(v, q_pow_int(field.config().q, j));
    if (term_v >= xi.prec) break;
    acc = add(field, acc, q_power(field, xi, j, xi.prec));
  }
  return neg(field, acc);
}

}  // namespace

ArtinSchreierResult artin_schreier_solve(const FieldCtx& field0, const LocalSeries& xi) {
  const Valuation v = xi.valuation();
  if (v.exact && v.value < 0)
    throw UnramifiedSolveError("no unramified solution: v(xi) < 0");

  ArtinSchreierResult out;
  out.field = field0;
  const uint32_t ups = field0.config().upsilon;

  if (!v.exact || v.value > 0) {
    LocalSeries z1 = principal_root(out.field, xi);
    out.roots.push_back(z1);
    out.principal_index = 0;
    for (const auto& gamma : out.field.fq_elements(std::max(xi.level, out.field.q_level()))) {
      if (out.field.is_zero(gamma)) continue;
      out.roots.push_back(add(out.field, z1, series_const(out.field, gamma, xi.delta, xi.prec)));
    }
    return out;
  }

  // unit branch: constant part first, then the positive-valuation residual
  const FFElement xi_bar = digit_at(out.field, xi, 0);
  auto res = artin_schreier_residue(out.field, xi_bar);
  out.field = std::move(res.ctx);
  const FFElement z0 = res.roots.front();  // smallest-code residue root
  const LocalSeries z0s = series_const(out.field, z0, xi.delta, xi.prec);
  // z0^q - z0 equals xi_bar exactly, so the residual has positive valuation
  const LocalSeries residual =
      sub(out.field, xi, series_const(out.field, out.field.sub(out.field.frobenius(z0, ups), z0),
                                      xi.delta, xi.prec));
  if (!residual.zero() && residual.val <= 0)
    throw Error("artin_schreier_solve: residual not positive (internal)");
  const LocalSeries w = principal_root(out.field, residual);
  const LocalSeries base = add(out.field, z0s, w);
  for (const auto& gamma : out.field.fq_elements(base.level)) {
    out.roots.push_back(add(out.field, base, series_const(out.field, gamma, xi.delta, xi.prec)));
  }
  out.principal_index = std::nullopt;
  return out;
}

}  // namespace carlitz
