#include "carlitz/json_io.hpp"

namespace carlitz {

Json series_to_json(const FieldCtx& ctx, const LocalSeries& s) {
  Json j;
  j["valuation"] = s.zero() ? s.prec : s.val;
  j["precision"] = s.prec;
  Json digits = Json::array();
  for (const auto& d : s.digits) {
    FFElement e = ctx.embed(d, s.level);
    digits.push_back(e.coords);
  }
  j["digits"] = std::move(digits);
  j["level"] = s.level;
  return j;
}

LocalSeries series_from_json(const FieldCtx& ctx, const Json& j, uint32_t delta) {
  const int64_t val = j.at("valuation").get<int64_t>();
  const int64_t prec = j.at("precision").get<int64_t>();
  const uint32_t level = j.at("level").get<uint32_t>();
  std::vector<FFElement> digits;
  for (const auto& dj : j.at("digits")) {
    FFElement e = ctx.zero(level);
    const auto coords = dj.get<std::vector<uint32_t>>();
    if (coords.size() != e.coords.size()) throw Error("series_from_json: wrong digit width");
    for (size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] >= ctx.config().p) throw Error("series_from_json: coordinate out of range");
      e.coords[i] = coords[i];
    }
    digits.push_back(std::move(e));
  }
  return series_from_digits(ctx, level, delta, val, std::move(digits), prec);
}

Json field_tower_to_json(const FieldCtx& ctx) {
  Json levels = Json::array();
  for (const auto& lvl : ctx.levels()) {
    Json lj;
    lj["rel_degree"] = lvl.rel_degree;
    lj["abs_degree"] = lvl.abs_degree;
    Json mod = Json::array();
    for (const auto& c : lvl.modulus) mod.push_back(c.coords);
    lj["modulus"] = std::move(mod);
    levels.push_back(std::move(lj));
  }
  Json j;
  j["p"] = ctx.config().p;
  j["upsilon"] = ctx.config().upsilon;
  j["levels"] = std::move(levels);
  return j;
}

Json valuation_to_json(const Valuation& v) {
  Json j;
  j["exact"] = v.exact;
  j["value"] = v.value;
  return j;
}

}  // namespace carlitz
