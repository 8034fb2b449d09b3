#pragma once

#include <optional>
#include <vector>

#include "carlitz/local_series.hpp"

namespace carlitz {

struct ArtinSchreierResult {
  FieldCtx field;  // possibly deepened; callers must thread it
  std::vector<LocalSeries> roots;  // all q roots of z^q - z = xi
  // Set iff v(xi) > 0: index of the unique root with v(z) = v(xi). The other
  // roots (all unit) follow, ordered by the F_q offset's coordinate code.
  std::optional<size_t> principal_index;
};

// All q solutions of z^q - z = xi for v(xi) >= 0, to the precision of xi.
// v(xi) > 0: principal root by the geometric series -sum xi^{q^j}, remaining
// roots differ by the nonzero elements of F_q. v(xi) = 0: residue-level solve
// (possibly extending the tower), then the positive-valuation correction is
// folded in through the same series. v(xi) < 0 is outside the unramified
// model and throws UnramifiedSolveError.
ArtinSchreierResult artin_schreier_solve(const FieldCtx& field, const LocalSeries& xi);

}  // namespace carlitz
