#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "carlitz/place.hpp"

namespace carlitz {

// Certified lower bounds on v(c_i) for coefficient indices beyond i_max.
struct TailBound {
  enum class Kind {
    finite,     // coefficients beyond i_max are exactly zero
    kappa,      // v(c_i) >= q^{i-delta} - kappa    (principal / l_n builds)
    geometric,  // v(c_i) >= anchor_v q^{i-anchor_i} (alternative branches)
  };
  Kind kind = Kind::finite;
  int64_t kappa = 0;
  int64_t anchor_i = 0;
  int64_t anchor_v = 1;
  int64_t lower_bound(const PlaceCtx& place, int64_t i) const;
};

// Continuous F_q-linear function u = sum c_i f_i on O_pi. v_lb[i] is a
// certified lower bound on the true valuation of c_i (the builder's
// recurrence can certify far more than the stored digits show once the
// coefficients vanish below working precision).
struct CarlitzFunction {
  std::vector<LocalSeries> coeffs;
  std::vector<int64_t> v_lb;
  TailBound tail;
  uint32_t i_max() const { return static_cast<uint32_t>(coeffs.size()) - 1; }
};

// F_q-linear power series sum a_j t^{q^j}, valid on |t|_pi <= q^{-delta}.
struct LinearPowerSeries {
  std::vector<LocalSeries> coeffs;  // a_0, a_1, ...
};

// Normalized Carlitz polynomial values f_0(t)..f_{i_max}(t) for t in O_pi,
// by the recursion f_0(t) = t, f_i(t) = (f_{i-1}(t)^q - f_{i-1}(t)) / [i]
// (the alternating-sum form is cancellative in fixed precision).
std::vector<LocalSeries> eval_f_chain(const PlaceCtx& place, uint32_t i_max,
                                      const LocalSeries& t);
LocalSeries eval_f(const PlaceCtx& place, uint32_t i, const LocalSeries& t);

// u(t) = sum c_i f_i(t); terms certified below working precision are folded
// into the result's precision bound instead of being summed.
LocalSeries eval_cf(const PlaceCtx& place, const CarlitzFunction& u, const LocalSeries& t);

// Coefficients of Delta u from those of u: b_i = c_{i+1} + [i] c_i.
CarlitzFunction delta_on_carlitz(const PlaceCtx& place, const CarlitzFunction& u);

// A continuous F_q-linear function as an evaluator plus (optionally) a
// certified modulus bound: modulus_lb(k) <= v(u(t)) whenever v(t) >= k.
struct FunctionHandle {
  std::function<LocalSeries(const LocalSeries&)> eval;
  std::function<int64_t(int64_t)> modulus_lb;
};

FunctionHandle make_identity_handle(const PlaceCtx& place);
FunctionHandle make_cf_handle(std::shared_ptr<const PlaceCtx> place, CarlitzFunction u,
                              std::function<int64_t(int64_t)> modulus_lb = nullptr);
// Wraps a handle with an internally synchronized value memo (hit by the
// operator evaluations, which revisit the grid {x^k t}).
FunctionHandle memoized(std::shared_ptr<const PlaceCtx> place, FunctionHandle h);

// (Delta u)(t) = u(xt) - x u(t)
LocalSeries delta_point(const PlaceCtx& place, const FunctionHandle& u, const LocalSeries& t);
// Delta^r by iterating the pointwise recursion over the grid {x^k t}.
LocalSeries delta_pow_point(const PlaceCtx& place, const FunctionHandle& u, uint32_t r,
                            const LocalSeries& t);
// (Delta_n u)(t) = (Delta_{n-1} u)(xt) - x^{q^{n-1}} (Delta_{n-1} u)(t)
LocalSeries delta_n_point(const PlaceCtx& place, const FunctionHandle& u, uint32_t n,
                          const LocalSeries& t);

}  // namespace carlitz
