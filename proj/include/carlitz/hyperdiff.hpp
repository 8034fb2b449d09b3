#pragma once

#include "carlitz/carlitz_basis.hpp"

namespace carlitz {

// Hyperdifferentiations and the fractional derivative live on K_x only
// (pi = x, delta = 1); arguments are series with digits in the base field F_q.

bool is_base_digit_series(const PlaceCtx& place, const LocalSeries& s);
// Checks digit membership in F_q and relevels the digits to the F_q level.
LocalSeries as_base_digit_series(const PlaceCtx& place, const LocalSeries& s);

// D_k(sum theta_n x^n) = sum theta_n binom(n,k) x^{n-k}; the result is known
// to precision N - k (surfaced, never hidden).
LocalSeries hyperdiff(const PlaceCtx& place, uint64_t k, const LocalSeries& t);

// hat: digit-wise sign flip at odd indices; an F_q-linear isometric involution.
LocalSeries hat_transform(const PlaceCtx& place, const LocalSeries& alpha);

// (Delta^{(alpha)} u)(t) = sum_{k>=0} (-1)^k D_k(hat alpha) u(x^k t).
// The sum is truncated at the first k with modulus_lb(k + v(t)) >= target_prec
// (the handle's certified bound makes every omitted term at least that small).
LocalSeries frac_delta(const PlaceCtx& place, const LocalSeries& alpha, const FunctionHandle& u,
                       const LocalSeries& t, int64_t target_prec);

}  // namespace carlitz
