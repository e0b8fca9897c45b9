#include <algorithm>
#include <cmath>

#include "zeta_cover/error.hpp"
#include "zeta_cover/numerics.hpp"

namespace zeta_cover {

PowerFit fit_power_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 8)
    throw Error(ErrorKind::DegenerateSamples, "fit_power_exponent: need at least 8 samples");
  double xmin = samples.front().first, xmax = xmin;
  for (const auto& [x, y] : samples) {
    if (!(x > 0.0) || !(y > 0.0))
      throw Error(ErrorKind::DegenerateSamples, "fit_power_exponent: samples must be positive");
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  if (xmin == xmax)
    throw Error(ErrorKind::DegenerateSamples, "fit_power_exponent: all abscissae are equal");
  if (xmax < 10.0 * xmin * (1.0 - 1e-12))
    throw Error(ErrorKind::DegenerateSamples, "fit_power_exponent: samples span less than a decade");

  const double n = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : samples) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : samples) {
    const double dx = std::log(x) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  PowerFit fit;
  fit.exponent = sxy / sxx;
  fit.amplitude = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace zeta_cover
