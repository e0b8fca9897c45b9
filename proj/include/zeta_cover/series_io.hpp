#pragma once

#include <string>
#include <string_view>

#include "zeta_cover/zeta.hpp"

namespace zeta_cover {

enum class SeriesFormat { Json, Csv };

/// CSV: header `N,density,abs_error`, values with 17 significant digits.
/// JSON: {"entries": [{"N", "density", "abs_error"}...], "limit", "limit_error"}
/// with shortest round-trip floats. Throws InvalidArgument on an empty series.
std::string emit_series(const ConvergenceSeries& series, SeriesFormat format);
/// Throws IoError if the file cannot be written.
void write_series(const ConvergenceSeries& series, SeriesFormat format, const std::string& path);

/// Inverse of the JSON form. Throws ParseError.
ConvergenceSeries parse_series_json(std::string_view text);

}  // namespace zeta_cover
