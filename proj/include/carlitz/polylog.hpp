#pragma once

#include <memory>
#include <vector>

#include "carlitz/artin_schreier.hpp"
#include "carlitz/carlitz_basis.hpp"

namespace carlitz {

// The polylogarithms l_1..l_n_max at one place, one fixed branch: both the
// small-disk power series and the Carlitz expansions valid on all of O_pi.
struct PolylogSet {
  std::shared_ptr<const PlaceCtx> place;
  std::vector<uint32_t> branch;
  uint32_t i_max = 0;
  uint32_t n_max = 0;
  std::vector<LinearPowerSeries> series_rep;  // [n-1] for l_n
  std::vector<CarlitzFunction> carlitz_rep;   // [n-1] for l_n

  const CarlitzFunction& l(uint32_t n) const { return carlitz_rep.at(n - 1); }
};

// Power-series coefficients a_0 = 0, a_j = 1/[j]^n.
LinearPowerSeries build_l1_series(const PlaceCtx& place, uint32_t j_max);
LinearPowerSeries build_ln_series(const PlaceCtx& place, uint32_t n, uint32_t j_max);

// The continuous extension of l_1: c_1..c_delta are the branch-selected
// Artin-Schreier roots, higher coefficients come from the convergent series,
// c_0 from the alternating sum over c_i/L_i. May deepen place.field.
CarlitzFunction build_l1_carlitz(PlaceCtx& place, const std::vector<uint32_t>& branch,
                                 uint32_t i_max);

// l_n from l_{n-1} by the tail-sum closed form: c_m = (-1)^m L_{m-1}
// sum_{j>=m} (-1)^j c_j^{prev}/L_j, with the decay certificate
// v(c_i) >= q^{i-delta} - (n-1).
CarlitzFunction build_ln(const PlaceCtx& place, const CarlitzFunction& l_prev, uint32_t n);

// Direct evaluation of the small-disk series; requires v(t) >= 1.
LocalSeries eval_ln_series(const PlaceCtx& place, uint32_t n, const LocalSeries& t);

// Continuous solution that picks unit roots through index n_branch*delta and
// principal roots after; its valuation profile is in the returned v_lb.
CarlitzFunction build_alternative_branch(PlaceCtx& place, uint32_t n_branch, uint32_t i_max);

PolylogSet build_polylog_set(PlaceCtx place, std::vector<uint32_t> branch, uint32_t i_max,
                             uint32_t n_max);

// Memoized evaluator for l_n with the certified modulus bound
// v(l_n(t)) >= min_{j>=1}(q^j v(t) - n floor(j/delta)) on v(t) >= 1.
FunctionHandle make_ln_handle(const PolylogSet& set, uint32_t n);

}  // namespace carlitz
