#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dimspect/carpet.hpp"
#include "dimspect/core.hpp"

namespace dimspect {

/// One point per line, coordinates split by whitespace and/or commas. Lines
/// starting with '#' and blank lines are skipped. Every point must have the
/// same number of coordinates (1 to 3). An input without points is an error.
PointCloud read_points(std::istream& in);
PointCloud read_points_file(const std::string& path);

/// Writes one point per line with 17 significant digits.
void write_points(std::ostream& out, const PointCloud& points);

/// "a:b:step" (inclusive, count = round((b-a)/step) + 1) or a comma list.
/// Values must lie in [0, 1] and increase strictly.
std::vector<Theta> parse_theta_grid(std::string_view text);

/// Comma list, strictly decreasing, every entry in (0, 1).
std::vector<double> parse_delta_list(std::string_view text);

/// printf "%.10g".
std::string format_real(double value);

/// Metadata lines "# key=value" (if any), then "theta,lower,upper,method".
void write_spectrum_csv(std::ostream& out, const DimensionSpectrum& spectrum);

nlohmann::json spectrum_to_json(const DimensionSpectrum& spectrum);
DimensionSpectrum spectrum_from_json(const nlohmann::json& j);

/// {"m":2,"n":3,"digits":[[0,0],[0,2],[1,1]]}
CarpetSpec carpet_from_json(const nlohmann::json& j);
nlohmann::json carpet_to_json(const CarpetSpec& spec);

/// {"atoms":[{"x":[...],"mass":m},...]}
nlohmann::json measure_to_json(const AtomicMeasure& measure);
AtomicMeasure measure_from_json(const nlohmann::json& j);

/// Parses JSON text, mapping syntax errors to InvalidArgument.
nlohmann::json parse_json(std::string_view text);
nlohmann::json read_json_file(const std::string& path);

}  // namespace dimspect
