#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carlitz/json_io.hpp"

using namespace carlitz;

namespace {

LocalSeries random_series(const FieldCtx& ctx, uint32_t level, uint32_t delta, int64_t val,
                          int64_t prec, std::mt19937_64& rng) {
  std::vector<FFElement> digits;
  const uint64_t card = ctx.level_card(level);
  for (int64_t i = val; i < prec; ++i)
    digits.push_back(ctx.element_from_code(level, rng() % card));
  return series_from_digits(ctx, level, delta, val, std::move(digits), prec);
}

}  // namespace

TEST_CASE("series round-trip through the JSON schema") {
  std::mt19937_64 rng(71);
  FieldCtx ctx = extend(make_field(2, 1), 2);
  for (int rep = 0; rep < 50; ++rep) {
    const uint32_t level = rep % 2;
    const uint32_t delta = 1 + rep % 2;
    const int64_t val = -3 + static_cast<int64_t>(rng() % 6);
    LocalSeries s = random_series(ctx, level, delta, val, val + 12, rng);
    Json j = series_to_json(ctx, s);
    LocalSeries back = series_from_json(ctx, j, delta);
    CHECK(equal_series(ctx, back, s));
    CHECK(back.val == s.val);
    CHECK(back.prec == s.prec);
    CHECK(back.level == s.level);
  }
}

TEST_CASE("zero element round-trips with its precision") {
  FieldCtx ctx = make_field(3, 1);
  LocalSeries z = series_zero(0, 1, 17);
  Json j = series_to_json(ctx, z);
  CHECK(j["digits"].empty());
  CHECK(j["valuation"] == 17);
  LocalSeries back = series_from_json(ctx, j, 1);
  CHECK(is_zero(back));
  CHECK(back.prec == 17);
}

TEST_CASE("negative valuations and extension digits survive") {
  FieldCtx ctx = extend(make_field(2, 1), 2);
  LocalSeries s = shift(series_const(ctx, ctx.element_from_code(1, 2), 1, 8), -2);
  Json j = series_to_json(ctx, s);
  CHECK(j["valuation"] == -2);
  LocalSeries back = series_from_json(ctx, j, 1);
  CHECK(equal_series(ctx, back, s));
}

TEST_CASE("malformed digits are rejected") {
  FieldCtx ctx = make_field(2, 1);
  Json j;
  j["valuation"] = 0;
  j["precision"] = 4;
  j["digits"] = Json::array({Json::array({7})});  // 7 is not an F_2 coordinate
  j["level"] = 0;
  CHECK_THROWS_AS(series_from_json(ctx, j, 1), Error);
}

TEST_CASE("tower serialization carries the defining polynomials") {
  FieldCtx ctx = extend(extend(make_field(2, 1), 2), 2);
  Json j = field_tower_to_json(ctx);
  REQUIRE(j["levels"].size() == 3);
  CHECK(j["levels"][1]["modulus"].size() == 2);
  CHECK(j["levels"][2]["abs_degree"] == 4);
}
