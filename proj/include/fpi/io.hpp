#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fpi/point_set.hpp"

namespace fpi {

/// Point-set file format:
///   {"d": 2, "mode": "float" | "rational", "points": [[s, ...], ...]}
/// with s a JSON number or a "p/q" string. Rational-mode sets whose
/// coordinates are irrational carry an extra "gram": [[s, ...], ...] of exact
/// scalar products next to float coordinates.
nlohmann::json point_set_to_json(const PointSet& ps);
PointSet point_set_from_json(const nlohmann::json& j);

/// One point per row, d columns; blank lines and '#' comments are skipped and
/// a non-numeric first row is treated as a header.
PointSet point_set_from_csv(const std::string& text, NumericMode mode);

/// Dispatches on the extension (.json or .csv).
PointSet load_point_set(const std::filesystem::path& path, NumericMode csv_mode = NumericMode::Float);
void save_point_set(const std::filesystem::path& path, const PointSet& ps);

/// %.17g, locale independent.
std::string format_double(double x);

}  // namespace fpi
