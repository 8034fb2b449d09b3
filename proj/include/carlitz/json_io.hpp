#pragma once

#include <json.hpp>

#include "carlitz/local_series.hpp"
#include "carlitz/place.hpp"

namespace carlitz {

using Json = nlohmann::ordered_json;

// {"valuation": v, "precision": N, "digits": [[F_p coords per digit]...],
//  "level": tower-level id}; the zero element has digits [] and valuation N.
Json series_to_json(const FieldCtx& ctx, const LocalSeries& s);
LocalSeries series_from_json(const FieldCtx& ctx, const Json& j, uint32_t delta);

// Tower levels with their defining polynomials, for reproducibility.
Json field_tower_to_json(const FieldCtx& ctx);

Json valuation_to_json(const Valuation& v);

}  // namespace carlitz
