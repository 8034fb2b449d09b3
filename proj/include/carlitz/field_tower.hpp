#pragma once

#include <cstdint>
#include <vector>

#include "carlitz/errors.hpp"

namespace carlitz {

// Parameters of the coefficient field F_q, q = p^upsilon.
struct FqConfig {
  uint32_t p = 2;
  uint32_t upsilon = 1;
  uint64_t q = 2;
};

FqConfig make_fq_config(uint32_t p, uint32_t upsilon);

// An element of one level of the extension tower: a coordinate vector over
// F_p in the standard monomial basis of its level. Basis ordering is
// mixed-radix with the lowest level minor, so an element of a lower level
// embeds into a higher one by zero-padding.
struct FFElement {
  uint32_t level = 0;
  std::vector<uint32_t> coords = {0};
};

struct TowerLevel {
  uint32_t rel_degree = 1;  // degree over the previous level
  uint32_t abs_degree = 1;  // degree over F_p
  // Monic defining polynomial over the previous level, constant term first,
  // rel_degree coefficients (the leading 1 is implicit). Empty at level 0.
  std::vector<FFElement> modulus;
};

// A tower F_p = L_0 subset L_1 subset ... with explicit defining polynomials.
// Append-only value type: extension returns a new context whose levels extend
// the old ones, so elements created under the old context remain valid.
class FieldCtx {
 public:
  FieldCtx() = default;

  const FqConfig& config() const { return cfg_; }
  const std::vector<TowerLevel>& levels() const { return levels_; }
  uint32_t top_level() const { return static_cast<uint32_t>(levels_.size()) - 1; }
  // Level realizing F_q itself (0 when upsilon == 1, else 1).
  uint32_t q_level() const { return cfg_.upsilon == 1 ? 0u : 1u; }
  uint32_t abs_degree(uint32_t level) const { return levels_.at(level).abs_degree; }
  uint64_t level_card(uint32_t level) const;  // p^abs_degree, throws if > 2^62

  FFElement zero(uint32_t level) const;
  FFElement one(uint32_t level) const;
  FFElement from_fp(uint32_t level, uint32_t value) const;  // constant embedding
  FFElement element_from_code(uint32_t level, uint64_t code) const;
  uint64_t element_code(const FFElement& a) const;  // coords as base-p integer

  FFElement embed(const FFElement& a, uint32_t to_level) const;
  // Exact relevel to a lower level; throws Error if a is not in it.
  FFElement relevel_down(const FFElement& a, uint32_t to_level) const;
  bool lies_in_level(const FFElement& a, uint32_t to_level) const;

  bool is_zero(const FFElement& a) const;
  bool equal(const FFElement& a, const FFElement& b) const;

  FFElement add(const FFElement& a, const FFElement& b) const;
  FFElement sub(const FFElement& a, const FFElement& b) const;
  FFElement neg(const FFElement& a) const;
  FFElement mul(const FFElement& a, const FFElement& b) const;
  FFElement inv(const FFElement& a) const;
  FFElement div(const FFElement& a, const FFElement& b) const;
  FFElement pow(const FFElement& a, uint64_t e) const;
  FFElement mul_scalar(const FFElement& a, uint32_t s) const;  // s in F_p

  // In-place helpers for hot loops (no reallocation when levels match).
  void add_assign(FFElement& a, const FFElement& b) const;
  void sub_assign(FFElement& a, const FFElement& b) const;
  void addmul_assign(FFElement& acc, const FFElement& a, const FFElement& b) const;

  // a^{p^e}; e is interpreted modulo the absolute degree of a's level, so
  // negative e (inverse Frobenius / p-th roots) is exact.
  FFElement frobenius(const FFElement& a, int64_t e) const;

  uint32_t absolute_trace(const FFElement& a) const;  // to F_p

  // The q elements of F_q inside `level`, ordered by coordinate code.
  std::vector<FFElement> fq_elements(uint32_t level) const;

  friend FieldCtx make_field(uint32_t p, uint32_t upsilon);
  friend FieldCtx extend(const FieldCtx& ctx, uint32_t m);

 private:
  FqConfig cfg_;
  std::vector<TowerLevel> levels_;
};

// F_p base level, plus the F_q level when upsilon > 1.
FieldCtx make_field(uint32_t p, uint32_t upsilon);

// Appends one level of relative degree m >= 2 over the current top level,
// defined by the lexicographically smallest monic irreducible polynomial
// (coefficient order: constant term first; coefficients ordered by their
// coordinate vector read as a base-p integer). Deterministic.
FieldCtx extend(const FieldCtx& ctx, uint32_t m);

// Polynomials over a tower level: coefficient vectors, constant term first.
// Irreducibility by root absence up to half the degree (gcd with X^{card^k}-X).
bool poly_is_irreducible(const FieldCtx& ctx, const std::vector<FFElement>& poly);

struct ArtinSchreierResidueResult {
  FieldCtx ctx;  // possibly deepened
  std::vector<FFElement> roots;  // all q roots of z^q - z = xi, sorted by code
};

// Solves z^q - z = xi in the smallest tower extension of xi's level that
// contains a root, extending the tower by degree p as needed. The roots
// differ pairwise by elements of F_q.
ArtinSchreierResidueResult artin_schreier_residue(const FieldCtx& ctx, const FFElement& xi);

// binom(n, k) mod p by Lucas' theorem; binom(n, k) = 0 for k > n.
uint32_t lucas_binomial_mod(uint64_t n, uint64_t k, uint32_t p);
FFElement lucas_binomial(const FieldCtx& ctx, uint64_t n, uint64_t k);

}  // namespace carlitz
