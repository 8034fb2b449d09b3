#include "carlitz/carlitz_basis.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace carlitz {

int64_t TailBound::lower_bound(const PlaceCtx& place, int64_t i) const {
  switch (kind) {
    case Kind::finite:
      return kPrecMax;
    case Kind::kappa: {
      if (i <= static_cast<int64_t>(place.delta)) return 0;
      return sat_add(q_pow_int(place.config().q, i - place.delta), -kappa);
    }
    case Kind::geometric: {
      if (i < anchor_i || anchor_v <= 0) return 0;
      return sat_mul(anchor_v, q_pow_int(place.config().q, i - anchor_i));
    }
  }
  return 0;
}

std::vector<LocalSeries> eval_f_chain(const PlaceCtx& place, uint32_t i_max,
                                      const LocalSeries& t) {
  if (t.v_lower_bound() < 0)
    throw std::invalid_argument("eval_f: argument must lie in O_pi (v >= 0)");
  std::vector<LocalSeries> out;
  out.reserve(i_max + 1);
  out.push_back(t);
  for (uint32_t i = 1; i <= i_max; ++i) {
    const LocalSeries& y = out.back();
    LocalSeries num = sub(place.field, q_power_rel(place, y, 1), y);
    out.push_back(mul(place.field, num, place.bracket_inv(i)));
  }
  return out;
}

LocalSeries eval_f(const PlaceCtx& place, uint32_t i, const LocalSeries& t) {
  return eval_f_chain(place, i, t).back();
}

LocalSeries eval_cf(const PlaceCtx& place, const CarlitzFunction& u, const LocalSeries& t) {
  const std::vector<LocalSeries> f = eval_f_chain(place, u.i_max(), t);
  LocalSeries acc = series_zero(t.level, place.delta, kPrecMax);
  int64_t omitted_lb = u.tail.lower_bound(place, u.i_max() + 1);
  for (uint32_t i = 0; i <= u.i_max(); ++i) {
    if (u.v_lb[i] >= place.prec) {
      // |f_i(t)| <= 1 on O_pi, so the omitted term's valuation is >= v_lb
      omitted_lb = std::min(omitted_lb, u.v_lb[i]);
      continue;
    }
    acc = add(place.field, acc, mul(place.field, u.coeffs[i], f[i]));
  }
  if (omitted_lb < acc.prec) acc = truncate_to(acc, omitted_lb);
  return acc;
}

CarlitzFunction delta_on_carlitz(const PlaceCtx& place, const CarlitzFunction& u) {
  if (u.i_max() < 1) {
    CarlitzFunction r;
    r.coeffs = {series_zero(u.coeffs[0].level, place.delta, u.coeffs[0].prec)};
    r.v_lb = {kPrecMax};
    r.tail = u.tail;
    return r;
  }
  CarlitzFunction r;
  r.tail = u.tail;
  for (uint32_t i = 0; i + 1 <= u.i_max(); ++i) {
    const int64_t vbr = (i >= 1 && i % place.delta == 0) ? 1 : 0;
    LocalSeries b = u.coeffs[i + 1];
    int64_t lb = u.v_lb[i + 1];
    if (i >= 1) {
      b = add(place.field, b, mul(place.field, place.bracket(i), u.coeffs[i]));
      lb = std::min(lb, sat_add(u.v_lb[i], vbr));
    }
    r.coeffs.push_back(b);
    r.v_lb.push_back(std::max(b.v_lower_bound(), lb));
  }
  return r;
}

FunctionHandle make_identity_handle(const PlaceCtx&) {
  FunctionHandle h;
  h.eval = [](const LocalSeries& t) { return t; };
  h.modulus_lb = [](int64_t k) { return k; };
  return h;
}

FunctionHandle make_cf_handle(std::shared_ptr<const PlaceCtx> place, CarlitzFunction u,
                              std::function<int64_t(int64_t)> modulus_lb) {
  FunctionHandle h;
  h.eval = [place, u = std::move(u)](const LocalSeries& t) { return eval_cf(*place, u, t); };
  h.modulus_lb = std::move(modulus_lb);
  return h;
}

FunctionHandle memoized(std::shared_ptr<const PlaceCtx> place, FunctionHandle h) {
  struct Memo {
    std::mutex m;
    std::map<std::string, LocalSeries> values;
  };
  auto memo = std::make_shared<Memo>();
  FunctionHandle out;
  out.modulus_lb = h.modulus_lb;
  out.eval = [place, memo, inner = std::move(h.eval)](const LocalSeries& t) {
    const std::string key = series_key(place->field, t);
    {
      std::lock_guard<std::mutex> lock(memo->m);
      auto it = memo->values.find(key);
      if (it != memo->values.end()) return it->second;
    }
    LocalSeries v = inner(t);
    std::lock_guard<std::mutex> lock(memo->m);
    return memo->values.emplace(key, std::move(v)).first->second;
  };
  return out;
}

namespace {

// u(x^k t) for k = 0..count-1
std::vector<LocalSeries> grid_values(const PlaceCtx& place, const FunctionHandle& u,
                                     const LocalSeries& t, uint32_t count) {
  std::vector<LocalSeries> vals;
  vals.reserve(count);
  LocalSeries arg = t;
  for (uint32_t k = 0; k < count; ++k) {
    vals.push_back(u.eval(arg));
    if (k + 1 < count) arg = mul(place.field, arg, place.chi);
  }
  return vals;
}

}  // namespace

LocalSeries delta_point(const PlaceCtx& place, const FunctionHandle& u, const LocalSeries& t) {
  return delta_pow_point(place, u, 1, t);
}

LocalSeries delta_pow_point(const PlaceCtx& place, const FunctionHandle& u, uint32_t r,
                            const LocalSeries& t) {
  std::vector<LocalSeries> row = grid_values(place, u, t, r + 1);
  for (uint32_t j = 1; j <= r; ++j) {
    for (uint32_t k = 0; k + j <= r; ++k)
      row[k] = sub(place.field, row[k + 1], mul(place.field, place.chi, row[k]));
  }
  return row[0];
}

LocalSeries delta_n_point(const PlaceCtx& place, const FunctionHandle& u, uint32_t n,
                          const LocalSeries& t) {
  std::vector<LocalSeries> row = grid_values(place, u, t, n + 1);
  for (uint32_t j = 1; j <= n; ++j) {
    const LocalSeries xq = q_power_rel(place, place.chi, j - 1);
    for (uint32_t k = 0; k + j <= n; ++k)
      row[k] = sub(place.field, row[k + 1], mul(place.field, xq, row[k]));
  }
  return row[0];
}

}  // namespace carlitz
