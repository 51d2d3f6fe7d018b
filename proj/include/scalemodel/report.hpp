#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scalemodel/graph_partition.hpp"
#include "scalemodel/speedup.hpp"

namespace scalemodel {

inline constexpr std::string_view kCurveCsvHeader = "n,t_cp,t_cm,t_total,speedup";
inline constexpr std::string_view kPartitionCsvHeader =
    "n,trials,seed,e_dup,mean_max_edges,min_max_edges,max_max_edges";

// Shortest locale-independent rendering with 12 significant digits.
std::string format_number(double value);

// Header plus one row per point, in curve order.
std::string emit_curve_csv(const SpeedupCurve& curve);

// Reads the rows of emit_curve_csv output back. Throws ConfigError on a
// wrong header or malformed row.
std::vector<CurvePoint> parse_curve_csv(std::string_view text);

// Standalone 800x500 SVG with one polyline of (n, speedup) over linear axes.
// Byte-deterministic. Throws ModelError for fewer than two points.
std::string emit_curve_svg(const SpeedupCurve& curve);

std::string emit_partition_csv(std::span<const PartitionEstimate> estimates);

}  // namespace scalemodel
