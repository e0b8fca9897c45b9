#include "zeta_cover/series_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "zeta_cover/error.hpp"

namespace zeta_cover {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string emit_series(const ConvergenceSeries& series, SeriesFormat format) {
  if (series.entries.empty()) throw Error(ErrorKind::InvalidArgument, "cannot emit an empty series");
  if (format == SeriesFormat::Csv) {
    std::string out = "N,density,abs_error\n";
    for (const auto& e : series.entries)
      out += std::to_string(e.n) + "," + g17(e.density) + "," + g17(e.abs_error) + "\n";
    return out;
  }
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : series.entries)
    j["entries"].push_back({{"N", e.n}, {"density", e.density}, {"abs_error", e.abs_error}});
  j["limit"] = series.limit;
  j["limit_error"] = series.limit_error;
  return j.dump(2) + "\n";
}

void write_series(const ConvergenceSeries& series, SeriesFormat format, const std::string& path) {
  const std::string text = emit_series(series, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

ConvergenceSeries parse_series_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ConvergenceSeries s;
    for (const auto& e : j.at("entries"))
      s.entries.push_back({e.at("N").get<std::size_t>(), e.at("density").get<double>(),
                           e.at("abs_error").get<double>()});
    s.limit = j.at("limit").get<double>();
    s.limit_error = j.at("limit_error").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("series JSON: ") + e.what());
  }
}

}  // namespace zeta_cover
