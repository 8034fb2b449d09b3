#pragma once

#include <cstdint>
#include <vector>

#include "carlitz/field_tower.hpp"
#include "carlitz/local_series.hpp"

namespace carlitz {

// A finite place of F_q(x): the completion K_pi realized concretely as
// F_{q^delta}((pi)) for a monic irreducible pi in F_q[x]. `chi` is the image
// of x under the isomorphism, computed by Newton iteration so that
// pi(chi) == uniformizer to the working precision.
//
// Immutable after construction apart from `field`, which a caller may replace
// with a deepened tower (levels are append-only, so cached series stay valid).
struct PlaceCtx {
  FieldCtx field;
  std::vector<FFElement> pi;        // coefficients at q_level, constant first, monic
  std::vector<uint64_t> pi_codes;   // as given (reporting)
  uint32_t delta = 1;
  uint32_t residue_level = 0;
  int64_t prec = 0;                 // working absolute precision
  LocalSeries chi;

  uint32_t cache_bound = 0;
  std::vector<LocalSeries> brackets_;      // [n], n = 1..cache_bound
  std::vector<LocalSeries> bracket_invs_;
  std::vector<LocalSeries> d_facts_;       // D_i, i = 0..cache_bound
  std::vector<LocalSeries> l_facts_;       // L_i
  std::vector<LocalSeries> l_fact_invs_;
  std::vector<std::vector<LocalSeries>> a_table_;  // a_table_[n][r-1], n = 1..cache_bound

  const FqConfig& config() const { return field.config(); }
  uint32_t q_level() const { return field.q_level(); }
  bool is_x_place() const;

  LocalSeries zero_series() const { return series_zero(residue_level, delta, prec); }
  LocalSeries one_series() const { return series_one(field, residue_level, delta, prec); }
  LocalSeries uniformizer() const { return series_uniformizer(field, residue_level, delta, prec); }
  LocalSeries const_series(const FFElement& c) const { return series_const(field, c, delta, prec); }

  // [n] = x^{q^n} - x
  LocalSeries bracket(uint32_t n) const;
  LocalSeries bracket_inv(uint32_t n) const;
  // D_0 = 1, D_i = [i] D_{i-1}^q
  LocalSeries d_factorial(uint32_t i) const;
  // L_0 = 1, L_i = [i] L_{i-1}
  LocalSeries l_factorial(uint32_t i) const;
  LocalSeries l_factorial_inv(uint32_t i) const;
  // Connection coefficients A_{n,r} = (-1)^{n+r} L_{n-1} e_{r-1}(1/[1],...,1/[n-1]),
  // by the elementary-symmetric-function dynamic program.
  LocalSeries a_coeff(uint32_t n, uint32_t r) const;
  std::vector<LocalSeries> a_row(uint32_t n) const;

  // f(chi) for f in F_q[x] (coefficients at q_level or below, constant first).
  LocalSeries embed_poly(const std::vector<FFElement>& f) const;
  LocalSeries embed_poly_codes(const std::vector<uint64_t>& codes) const;
  LocalSeries embed_rational(const std::vector<FFElement>& num,
                             const std::vector<FFElement>& den) const;

  // (-1)^parity * s in the coefficient field.
  LocalSeries with_sign(const LocalSeries& s, uint64_t parity) const;
};

// q_power with the window capped to the place's working relative precision.
LocalSeries q_power_rel(const PlaceCtx& place, const LocalSeries& a, int64_t n);

PlaceCtx make_place(uint32_t p, uint32_t upsilon, const std::vector<uint64_t>& pi_codes,
                    int64_t prec, uint32_t cache_bound = 16);

}  // namespace carlitz
