#include "carlitz/field_tower.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace carlitz {
namespace {

inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
  uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}
uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p) {
  uint32_t r = 1 % p;
  uint32_t base = a % p;
  while (e) {
    if (e & 1) r = fp_mul(r, base, p);
    base = fp_mul(base, base, p);
    e >>= 1;
  }
  return r;
}
inline uint32_t fp_inv(uint32_t a, uint32_t p) { return fp_pow(a, p - 2, p); }

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Per-level scratch for the recursive multiplication; thread-local so all
// element operations stay pure and concurrently callable.
struct Scratch {
  std::vector<std::vector<uint32_t>> prod;
  std::vector<std::vector<uint32_t>> tmp;
  void ensure(size_t nlevels) {
    if (prod.size() < nlevels) {
      prod.resize(nlevels);
      tmp.resize(nlevels);
    }
  }
};
thread_local Scratch g_scratch;

bool span_is_zero(const uint32_t* a, uint32_t n) {
  for (uint32_t i = 0; i < n; ++i)
    if (a[i]) return false;
  return true;
}

// out = a * b at level `lev`; out must not alias a or b.
void el_mul_core(const FieldCtx& ctx, uint32_t lev, const uint32_t* a, const uint32_t* b,
                 uint32_t* out) {
  const uint32_t p = ctx.config().p;
  if (lev == 0) {
    out[0] = fp_mul(a[0], b[0], p);
    return;
  }
  const TowerLevel& L = ctx.levels()[lev];
  const uint32_t m = L.rel_degree;
  const uint32_t d = ctx.levels()[lev - 1].abs_degree;
  g_scratch.ensure(lev + 1);
  auto& prod = g_scratch.prod[lev];
  auto& tmp = g_scratch.tmp[lev];
  prod.assign(static_cast<size_t>(2 * m - 1) * d, 0);
  tmp.resize(d);
  for (uint32_t i = 0; i < m; ++i) {
    if (span_is_zero(a + static_cast<size_t>(i) * d, d)) continue;
    for (uint32_t j = 0; j < m; ++j) {
      if (span_is_zero(b + static_cast<size_t>(j) * d, d)) continue;
      el_mul_core(ctx, lev - 1, a + static_cast<size_t>(i) * d, b + static_cast<size_t>(j) * d,
                  tmp.data());
      uint32_t* dst = prod.data() + static_cast<size_t>(i + j) * d;
      for (uint32_t t = 0; t < d; ++t) dst[t] = fp_add(dst[t], tmp[t], p);
    }
  }
  // reduce modulo the monic defining polynomial: X^m = -sum mod_j X^j
  for (uint32_t k = 2 * m - 2; k >= m; --k) {
    uint32_t* ck = prod.data() + static_cast<size_t>(k) * d;
    if (!span_is_zero(ck, d)) {
      for (uint32_t j = 0; j < m; ++j) {
        const auto& mj = L.modulus[j].coords;
        if (span_is_zero(mj.data(), d)) continue;
        el_mul_core(ctx, lev - 1, ck, mj.data(), tmp.data());
        uint32_t* dst = prod.data() + static_cast<size_t>(k - m + j) * d;
        for (uint32_t t = 0; t < d; ++t) dst[t] = fp_sub(dst[t], tmp[t], p);
      }
    }
    if (k == m) break;
  }
  std::copy(prod.begin(), prod.begin() + static_cast<size_t>(m) * d, out);
}

void el_pow_core(const FieldCtx& ctx, uint32_t lev, const uint32_t* a, uint64_t e, uint32_t* out) {
  const uint32_t D = ctx.abs_degree(lev);
  std::vector<uint32_t> base(a, a + D);
  std::vector<uint32_t> acc(D, 0);
  std::vector<uint32_t> t(D);
  acc[0] = 1 % ctx.config().p;
  while (e) {
    if (e & 1) {
      el_mul_core(ctx, lev, acc.data(), base.data(), t.data());
      acc.swap(t);
    }
    e >>= 1;
    if (e) {
      el_mul_core(ctx, lev, base.data(), base.data(), t.data());
      base.swap(t);
    }
  }
  std::copy(acc.begin(), acc.end(), out);
}

}  // namespace

FqConfig make_fq_config(uint32_t p, uint32_t upsilon) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (upsilon < 1) throw std::invalid_argument("upsilon must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < upsilon; ++i) {
    if (q > (uint64_t{1} << 31)) throw std::invalid_argument("q too large");
    q *= p;
  }
  return FqConfig{p, upsilon, q};
}

uint64_t FieldCtx::level_card(uint32_t level) const {
  const uint32_t D = abs_degree(level);
  uint64_t card = 1;
  for (uint32_t i = 0; i < D; ++i) {
    if (card > (uint64_t{1} << 62) / cfg_.p) throw Error("field level too large to enumerate");
    card *= cfg_.p;
  }
  return card;
}

FFElement FieldCtx::zero(uint32_t level) const {
  return FFElement{level, std::vector<uint32_t>(abs_degree(level), 0)};
}

FFElement FieldCtx::one(uint32_t level) const { return from_fp(level, 1); }

FFElement FieldCtx::from_fp(uint32_t level, uint32_t value) const {
  FFElement r = zero(level);
  r.coords[0] = value % cfg_.p;
  return r;
}

FFElement FieldCtx::element_from_code(uint32_t level, uint64_t code) const {
  FFElement r = zero(level);
  for (uint32_t i = 0; i < r.coords.size() && code; ++i) {
    r.coords[i] = static_cast<uint32_t>(code % cfg_.p);
    code /= cfg_.p;
  }
  if (code) throw std::invalid_argument("element code out of range for level");
  return r;
}

uint64_t FieldCtx::element_code(const FFElement& a) const {
  uint64_t code = 0;
  for (size_t i = a.coords.size(); i-- > 0;) code = code * cfg_.p + a.coords[i];
  return code;
}

FFElement FieldCtx::embed(const FFElement& a, uint32_t to_level) const {
  if (a.level == to_level) return a;
  if (a.level > to_level) throw Error("embed: target level below element level");
  FFElement r = zero(to_level);
  std::copy(a.coords.begin(), a.coords.end(), r.coords.begin());
  return r;
}

bool FieldCtx::lies_in_level(const FFElement& a, uint32_t to_level) const {
  if (a.level <= to_level) return true;
  const uint32_t d = abs_degree(to_level);
  for (size_t i = d; i < a.coords.size(); ++i)
    if (a.coords[i]) return false;
  return true;
}

FFElement FieldCtx::relevel_down(const FFElement& a, uint32_t to_level) const {
  if (a.level <= to_level) return embed(a, to_level);
  if (!lies_in_level(a, to_level)) throw Error("relevel_down: element not in subfield");
  FFElement r{to_level, std::vector<uint32_t>(a.coords.begin(), a.coords.begin() + abs_degree(to_level))};
  return r;
}

bool FieldCtx::is_zero(const FFElement& a) const {
  return span_is_zero(a.coords.data(), static_cast<uint32_t>(a.coords.size()));
}

bool FieldCtx::equal(const FFElement& a, const FFElement& b) const {
  const uint32_t lev = std::max(a.level, b.level);
  FFElement ea = embed(a, lev), eb = embed(b, lev);
  return ea.coords == eb.coords;
}

FFElement FieldCtx::add(const FFElement& a, const FFElement& b) const {
  const uint32_t lev = std::max(a.level, b.level);
  FFElement r = embed(a, lev);
  add_assign(r, b);
  return r;
}

FFElement FieldCtx::sub(const FFElement& a, const FFElement& b) const {
  const uint32_t lev = std::max(a.level, b.level);
  FFElement r = embed(a, lev);
  sub_assign(r, b);
  return r;
}

FFElement FieldCtx::neg(const FFElement& a) const {
  FFElement r = a;
  for (auto& c : r.coords) c = c ? cfg_.p - c : 0;
  return r;
}

void FieldCtx::add_assign(FFElement& a, const FFElement& b) const {
  if (b.level > a.level) a = embed(a, b.level);
  for (size_t i = 0; i < b.coords.size(); ++i) a.coords[i] = fp_add(a.coords[i], b.coords[i], cfg_.p);
}

void FieldCtx::sub_assign(FFElement& a, const FFElement& b) const {
  if (b.level > a.level) a = embed(a, b.level);
  for (size_t i = 0; i < b.coords.size(); ++i) a.coords[i] = fp_sub(a.coords[i], b.coords[i], cfg_.p);
}

FFElement FieldCtx::mul(const FFElement& a, const FFElement& b) const {
  const uint32_t lev = std::max(a.level, b.level);
  FFElement ea = embed(a, lev), eb = embed(b, lev);
  FFElement r = zero(lev);
  el_mul_core(*this, lev, ea.coords.data(), eb.coords.data(), r.coords.data());
  return r;
}

void FieldCtx::addmul_assign(FFElement& acc, const FFElement& a, const FFElement& b) const {
  const uint32_t lev = std::max({acc.level, a.level, b.level});
  if (acc.level != lev) acc = embed(acc, lev);
  FFElement ea = embed(a, lev), eb = embed(b, lev);
  g_scratch.ensure(static_cast<size_t>(lev) + 2);
  auto& t = g_scratch.tmp[lev + 1];  // one slot above el_mul_core's own use
  t.resize(acc.coords.size());
  el_mul_core(*this, lev, ea.coords.data(), eb.coords.data(), t.data());
  for (size_t i = 0; i < acc.coords.size(); ++i) acc.coords[i] = fp_add(acc.coords[i], t[i], cfg_.p);
}

FFElement FieldCtx::pow(const FFElement& a, uint64_t e) const {
  FFElement r = zero(a.level);
  el_pow_core(*this, a.level, a.coords.data(), e, r.coords.data());
  return r;
}

FFElement FieldCtx::inv(const FFElement& a) const {
  if (is_zero(a)) throw Error("inverse of zero field element");
  if (a.level == 0) return FFElement{0, {fp_inv(a.coords[0], cfg_.p)}};
  return pow(a, level_card(a.level) - 2);
}

FFElement FieldCtx::div(const FFElement& a, const FFElement& b) const {
  const uint32_t lev = std::max(a.level, b.level);
  return mul(embed(a, lev), inv(embed(b, lev)));
}

FFElement FieldCtx::mul_scalar(const FFElement& a, uint32_t s) const {
  s %= cfg_.p;
  FFElement r = a;
  for (auto& c : r.coords) c = fp_mul(c, s, cfg_.p);
  return r;
}

FFElement FieldCtx::frobenius(const FFElement& a, int64_t e) const {
  const int64_t D = abs_degree(a.level);
  int64_t em = ((e % D) + D) % D;
  FFElement r = a;
  for (int64_t i = 0; i < em; ++i) r = pow(r, cfg_.p);
  return r;
}

uint32_t FieldCtx::absolute_trace(const FFElement& a) const {
  const uint32_t D = abs_degree(a.level);
  FFElement acc = a;
  FFElement cur = a;
  for (uint32_t i = 1; i < D; ++i) {
    cur = pow(cur, cfg_.p);
    add_assign(acc, cur);
  }
  for (size_t i = 1; i < acc.coords.size(); ++i)
    if (acc.coords[i]) throw Error("absolute_trace: non-constant trace (broken tower)");
  return acc.coords[0];
}

std::vector<FFElement> FieldCtx::fq_elements(uint32_t level) const {
  const uint32_t ql = q_level();
  if (level < ql) throw Error("fq_elements: level does not contain F_q");
  std::vector<FFElement> out;
  out.reserve(cfg_.q);
  for (uint64_t code = 0; code < cfg_.q; ++code)
    out.push_back(embed(element_from_code(ql, code), level));
  return out;
}

// ---------- polynomials over a level (small degrees) ----------
namespace {

using Poly = std::vector<FFElement>;  // constant term first

Poly poly_trim(const FieldCtx& ctx, Poly f) {
  while (!f.empty() && ctx.is_zero(f.back())) f.pop_back();
  return f;
}

Poly poly_mul(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  const uint32_t lev = std::max(a[0].level, b[0].level);
  Poly r(a.size() + b.size() - 1, ctx.zero(lev));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) ctx.addmul_assign(r[i + j], a[i], b[j]);
  return poly_trim(ctx, r);
}

// remainder of a modulo monic-after-normalization b
Poly poly_rem(const FieldCtx& ctx, Poly a, const Poly& b) {
  a = poly_trim(ctx, a);
  Poly bb = poly_trim(ctx, const_cast<Poly&>(b));
  if (bb.empty()) throw Error("poly_rem: division by zero polynomial");
  const FFElement lead_inv = ctx.inv(bb.back());
  while (a.size() >= bb.size()) {
    FFElement c = ctx.mul(a.back(), lead_inv);
    const size_t shift = a.size() - bb.size();
    for (size_t j = 0; j < bb.size(); ++j) {
      FFElement t = ctx.mul(c, bb[j]);
      a[shift + j] = ctx.sub(a[shift + j], t);
    }
    a = poly_trim(ctx, a);
  }
  return a;
}

Poly poly_mulmod(const FieldCtx& ctx, const Poly& a, const Poly& b, const Poly& g) {
  return poly_rem(ctx, poly_mul(ctx, a, b), g);
}

Poly poly_powmod(const FieldCtx& ctx, Poly base, uint64_t e, const Poly& g) {
  const uint32_t lev = g[0].level;
  Poly acc{ctx.one(lev)};
  while (e) {
    if (e & 1) acc = poly_mulmod(ctx, acc, base, g);
    e >>= 1;
    if (e) base = poly_mulmod(ctx, base, base, g);
  }
  return acc;
}

Poly poly_gcd(const FieldCtx& ctx, Poly a, Poly b) {
  a = poly_trim(ctx, a);
  b = poly_trim(ctx, b);
  while (!b.empty()) {
    Poly r = poly_rem(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FFElement poly_eval(const FieldCtx& ctx, const Poly& f, const FFElement& x) {
  FFElement r = ctx.zero(x.level);
  for (size_t i = f.size(); i-- > 0;) {
    r = ctx.mul(r, x);
    ctx.add_assign(r, f[i]);
  }
  return r;
}

}  // namespace

bool poly_is_irreducible(const FieldCtx& ctx, const std::vector<FFElement>& poly) {
  Poly f = poly_trim(ctx, poly);
  if (f.size() < 2) return false;
  const size_t deg = f.size() - 1;
  if (deg == 1) return true;
  const uint32_t lev = f[0].level;
  if (ctx.is_zero(f[0])) return false;  // root at 0
  // degree <= 3: reducible iff it has a root; brute force small levels
  const uint64_t card = ctx.level_card(lev);
  if (deg <= 3 && card <= 65536) {
    for (uint64_t code = 0; code < card; ++code) {
      if (ctx.is_zero(poly_eval(ctx, f, ctx.element_from_code(lev, code)))) return false;
    }
    return true;
  }
  // no irreducible factor of degree <= deg/2  <=>  irreducible
  Poly x{ctx.zero(lev), ctx.one(lev)};
  Poly h = x;
  for (size_t k = 1; k <= deg / 2; ++k) {
    h = poly_powmod(ctx, h, card, f);
    Poly hx = h;
    if (hx.size() < 2) hx.resize(2, ctx.zero(lev));
    hx[1] = ctx.sub(hx[1], ctx.one(lev));
    Poly g = poly_gcd(ctx, f, poly_trim(ctx, hx));
    if (g.size() != 1) return false;
  }
  return true;
}

FieldCtx make_field(uint32_t p, uint32_t upsilon) {
  FieldCtx ctx;
  ctx.cfg_ = make_fq_config(p, upsilon);
  ctx.levels_.push_back(TowerLevel{1, 1, {}});
  if (upsilon > 1) ctx = extend(ctx, upsilon);
  return ctx;
}

FieldCtx extend(const FieldCtx& ctx, uint32_t m) {
  if (m < 2) throw std::invalid_argument("extend: relative degree must be >= 2");
  const uint32_t top = ctx.top_level();
  const uint64_t card = ctx.level_card(top);
  // lexicographically smallest monic irreducible of degree m over the top
  // level; constant term is the most significant comparison key.
  std::vector<uint64_t> codes(m, 0);
  std::vector<FFElement> coeffs(m, ctx.zero(top));
  const uint64_t guard_total = 4'000'000;
  uint64_t tried = 0;
  for (codes[0] = 1; codes[0] < card; ++codes[0]) {  // constant 0 is always reducible
    bool found = false;
    // odometer over codes[1..m-1], least significant last
    std::fill(codes.begin() + 1, codes.end(), 0);
    while (true) {
      if (++tried > guard_total) throw Error("extend: irreducible search exceeded guard");
      for (uint32_t i = 0; i < m; ++i) coeffs[i] = ctx.element_from_code(top, codes[i]);
      std::vector<FFElement> candidate = coeffs;
      candidate.push_back(ctx.one(top));
      if (poly_is_irreducible(ctx, candidate)) {
        found = true;
        break;
      }
      // increment positions m-1, m-2, ..., 1
      uint32_t pos = m;
      while (pos-- > 1) {
        if (++codes[pos] < card) break;
        codes[pos] = 0;
        if (pos == 1) {
          pos = 0;
          break;
        }
      }
      if (pos == 0) break;  // exhausted this constant term
    }
    if (found) break;
    if (codes[0] + 1 == card) throw Error("extend: no irreducible found (impossible)");
  }
  FieldCtx out = ctx;
  TowerLevel lvl;
  lvl.rel_degree = m;
  lvl.abs_degree = ctx.abs_degree(top) * m;
  lvl.modulus = coeffs;
  out.levels_.push_back(std::move(lvl));
  return out;
}

ArtinSchreierResidueResult artin_schreier_residue(const FieldCtx& ctx0, const FFElement& xi0) {
  FieldCtx ctx = ctx0;
  const uint32_t p = ctx.config().p;
  uint32_t lev = std::max(xi0.level, ctx.q_level());
  uint32_t extensions = 0;
  while (true) {
    const FFElement xi = ctx.embed(xi0, lev);
    const uint32_t D = ctx.abs_degree(lev);
    // matrix of z -> z^q - z over F_p in the monomial basis
    std::vector<std::vector<uint32_t>> M(D, std::vector<uint32_t>(D, 0));
    for (uint32_t j = 0; j < D; ++j) {
      FFElement e = ctx.zero(lev);
      e.coords[j] = 1;
      FFElement img = ctx.sub(ctx.frobenius(e, ctx.config().upsilon), e);
      for (uint32_t i = 0; i < D; ++i) M[i][j] = img.coords[i];
    }
    // gaussian elimination with the augmented column
    std::vector<uint32_t> rhs = xi.coords;
    std::vector<int64_t> pivot_of_col(D, -1);
    uint32_t row = 0;
    for (uint32_t col = 0; col < D && row < D; ++col) {
      uint32_t sel = row;
      while (sel < D && M[sel][col] == 0) ++sel;
      if (sel == D) continue;
      std::swap(M[sel], M[row]);
      std::swap(rhs[sel], rhs[row]);
      const uint32_t piv_inv = fp_inv(M[row][col], p);
      for (uint32_t j = 0; j < D; ++j) M[row][j] = fp_mul(M[row][j], piv_inv, p);
      rhs[row] = fp_mul(rhs[row], piv_inv, p);
      for (uint32_t r = 0; r < D; ++r) {
        if (r == row || M[r][col] == 0) continue;
        const uint32_t f = M[r][col];
        for (uint32_t j = 0; j < D; ++j) M[r][j] = fp_sub(M[r][j], fp_mul(f, M[row][j], p), p);
        rhs[r] = fp_sub(rhs[r], fp_mul(f, rhs[row], p), p);
      }
      pivot_of_col[col] = row;
      ++row;
    }
    bool consistent = true;
    for (uint32_t r = row; r < D; ++r)
      if (rhs[r] != 0) {
        consistent = false;
        break;
      }
    if (consistent) {
      FFElement z = ctx.zero(lev);
      for (uint32_t col = 0; col < D; ++col)
        if (pivot_of_col[col] >= 0) z.coords[col] = rhs[pivot_of_col[col]];
      // roots = z + F_q
      std::vector<FFElement> roots;
      for (const auto& gamma : ctx.fq_elements(lev)) roots.push_back(ctx.add(z, gamma));
      std::sort(roots.begin(), roots.end(), [&](const FFElement& a, const FFElement& b) {
        return ctx.element_code(a) < ctx.element_code(b);
      });
      for (const auto& r : roots) {
        FFElement chk = ctx.sub(ctx.frobenius(r, ctx.config().upsilon), r);
        if (!ctx.equal(chk, xi)) throw Error("artin_schreier_residue: root verification failed");
      }
      return ArtinSchreierResidueResult{std::move(ctx), std::move(roots)};
    }
    if (lev == ctx.top_level()) {
      if (++extensions > ctx.config().upsilon + 2)
        throw Error("artin_schreier_residue: no solution after maximal extension (impossible)");
      ctx = extend(ctx, p);
    }
    ++lev;
  }
}

uint32_t lucas_binomial_mod(uint64_t n, uint64_t k, uint32_t p) {
  if (k > n) return 0;
  uint32_t result = 1;
  while (k > 0 || n > 0) {
    const uint32_t nd = static_cast<uint32_t>(n % p);
    const uint32_t kd = static_cast<uint32_t>(k % p);
    if (kd > nd) return 0;
    // binom(nd, kd) mod p with nd, kd < p
    uint32_t num = 1, den = 1;
    for (uint32_t i = 0; i < kd; ++i) {
      num = fp_mul(num, nd - i, p);
      den = fp_mul(den, i + 1, p);
    }
    result = fp_mul(result, fp_mul(num, fp_inv(den, p), p), p);
    n /= p;
    k /= p;
  }
  return result;
}

FFElement lucas_binomial(const FieldCtx& ctx, uint64_t n, uint64_t k) {
  return ctx.from_fp(0, lucas_binomial_mod(n, k, ctx.config().p));
}

}  // namespace carlitz
