#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polarmax/configuration.hpp"
#include "polarmax/continuous.hpp"
#include "polarmax/domain.hpp"
#include "polarmax/polarization.hpp"

namespace polarmax {

using Json = nlohmann::ordered_json;

std::string tool_version();

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
/// 16 hex digits of fnv1a(config.dump()).
std::string config_hash(const Json& config);

Json to_json(const Point& x);
Json to_json(const PointSet& points);
Json to_json(const PolarizationReport& report);
Json to_json(const DiscreteMeasure& measure);

/// Shape descriptor, e.g. {"shape":"sphere","p":3,"radius":1.0,"center":[0,0,0]}.
/// Cubes carry "side" and "corner", intervals "a" and "b", clouds "points".
Json to_json(const Domain& domain);
/// Inverse of to_json(Domain); omitted radius/side/center/corner take the
/// Domain defaults. Throws std::invalid_argument on unknown shapes or fields.
Domain domain_from_json(const Json& j);

/// Inverse of to_json(PointSet); every row must have the same length.
PointSet points_from_json(const Json& rows);

/// One point per line, coordinates separated by commas or whitespace; blank
/// lines and lines starting with '#' are skipped.
PointSet read_points_csv(std::istream& in);
PointSet load_points_csv(const std::string& path);
void write_points_csv(std::ostream& out, const PointSet& points);

/// "2,2" -> (2, 2).
Point parse_point(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace polarmax
