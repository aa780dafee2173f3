#pragma once

#include "spz/interval.hpp"
#include "spz/reach.hpp"
#include "spz/sparse_poly_zonotope.hpp"
#include "spz/zonotope.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace spz {

nlohmann::json toJson(const SparsePolyZonotope& pz);
nlohmann::json toJson(const IntervalVector& iv);
IntervalVector intervalVectorFromJson(const nlohmann::json& j);

/// Ordered boundary vertices of a zonotope projected onto dimensions
/// (dx, dy); the first vertex is repeated at the end so the polygon is
/// explicitly closed. A degenerate projection yields a single vertex.
std::vector<Vector> zonotopePolygon(const Zonotope& z, Index dx, Index dy);

/// Newline-delimited records of a reachability run: per step one
/// time-interval record, one time-point record and one diagnostic record,
/// each carrying the serialized set and the projected enclosure polygon.
/// The stream content is deterministic for identical runs.
void writeReachRecords(std::ostream& out, const ReachResult& result, Index projX, Index projY);

/// Demo data for the printed example sets; selector is one of
/// example1 | enclosure | quadmap | convexhull. Throws std::invalid_argument
/// for anything else.
void writeDemoRecords(const std::string& selector, std::ostream& out);

}  // namespace spz
