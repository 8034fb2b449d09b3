#pragma once

#include <map>
#include <mutex>

#include "carlitz/hyperdiff.hpp"
#include "carlitz/polylog.hpp"

namespace carlitz {

// Quantified verification outcome: the defect's valuation plus the bound the
// omitted tail is certified (or evidenced) to respect.
struct VerifyDefect {
  Valuation defect;
  int64_t certified_lb = 0;
};

// The F_q-linear zeta on K_x: zeta(x^{-n}) = l_n(1), general arguments via
// the fractional derivative, special values x^m via iterated Delta.
class ZetaEvaluator {
 public:
  explicit ZetaEvaluator(PolylogSet set);

  const PolylogSet& polylogs() const { return set_; }
  const PlaceCtx& place() const { return *set_.place; }
  const FunctionHandle& l_handle(uint32_t n) const { return handles_.at(n - 1); }

  // zeta(t) through the canonical decomposition t = x^{-n} alpha,
  // n = max(1, -v(t)).
  LocalSeries zeta(const LocalSeries& t) const;
  // Same value through an explicitly chosen depth n (the composition law
  // admissible choices agree; tests exercise that).
  LocalSeries zeta_with_depth(const LocalSeries& t, uint32_t n) const;
  LocalSeries zeta_xpow(int64_t k) const;
  // zeta(x^m) = (Delta^{m+1} l_1)(1), the independent evaluation path.
  LocalSeries zeta_special_pos(uint32_t m) const;

  // l_n(t) vs sum_{i<=i_cut} zeta(x^{-n+i}) D_i(t); certified_lb is the
  // computed bound of the next few omitted terms (evidence, not a rate).
  VerifyDefect verify_expansion_25(uint32_t n, const LocalSeries& t, uint32_t i_cut) const;

  struct Defect28 {
    Valuation defect_sum;        // c_i^{(n)} vs sum_r A_{i,r} zeta(x^{r-n})
    Valuation defect_pointwise;  // c_i^{(n)} vs (Delta_i l_n)(1)
  };
  Defect28 verify_c_identity_28(uint32_t i, uint32_t n) const;

  // Partial sums with the outer index summed first (the order must not be
  // exchanged). certified_lb comes from the decay of c_i^{(n)}/L_i.
  VerifyDefect verify_functional_eq_29(uint32_t n, uint32_t i_cut) const;

 private:
  PolylogSet set_;
  std::vector<FunctionHandle> handles_;
  LocalSeries one_;
  mutable std::mutex mu_;
  mutable std::map<std::string, LocalSeries> cache_;
};

// Formal sums sum kappa_j z^{q^j} (j >= 1, kappa_j in F_p) with the
// index-multiplicative product z^{q^i} (x) z^{q^j} = z^{q^{ij}}.
struct FormalDirichlet {
  std::map<uint64_t, uint32_t> kappa;
};

FormalDirichlet fd_unit();  // z^{q^1}
FormalDirichlet fd_term(uint64_t j, uint32_t coeff = 1);
FormalDirichlet otimes(const FormalDirichlet& a, const FormalDirichlet& b, uint32_t p);
// sum_{e>=0, prime^e <= depth} z^{q^{prime^e}}
FormalDirichlet euler_factor(uint64_t prime, uint64_t depth);
LocalSeries fd_evaluate(const PlaceCtx& place, const FormalDirichlet& fd, const LocalSeries& z);

// z_i = (c_{i-1} [i-1])^q from l_1's coefficients; requires i >= 2.
LocalSeries euler_z(const ZetaEvaluator& ev, uint32_t i);
// The (x)-product over primes <= primes_up_to of the truncated factors,
// evaluated at z_i.
LocalSeries euler_partial(const ZetaEvaluator& ev, uint32_t i, uint64_t primes_up_to,
                          uint64_t depth);
// The direct sum sum_{j>=1} z_i^{q^j} (note: the Euler product generates
// exactly the j >= 1 terms; the j = 0 term of the coefficient series is
// reported separately by callers, not folded in).
LocalSeries euler_direct_sum(const ZetaEvaluator& ev, uint32_t i);

}  // namespace carlitz
