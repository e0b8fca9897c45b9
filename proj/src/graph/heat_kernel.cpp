#include <cmath>

#include "zeta_cover/error.hpp"
#include "zeta_cover/graph.hpp"

namespace zeta_cover {

double infinite_cover_heat_kernel(const VoltageGraph& g, double t, std::size_t x, std::size_t y,
                                  std::int64_t m, double tol) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "heat kernel needs t > 0");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "heat kernel needs tol > 0");
  if (x >= g.vertex_count() || y >= g.vertex_count())
    throw Error(ErrorKind::InvalidArgument, "heat kernel vertex out of range");

  auto integrand = [&](double theta) {
    const auto es = hermitian_eigensystem(twisted_laplacian(g, TwistParameter(theta)));
    Complex k = 0.0;
    for (std::size_t j = 0; j < es.dim; ++j)
      k += es.vector_entry(x, j) * std::conj(es.vector_entry(y, j)) * std::exp(-t * es.values[j]);
    return (std::polar(1.0, static_cast<double>(m) * theta) * k).real();
  };

  // Periodic trapezoid rule; each doubling reuses the previous nodes.
  const std::size_t abs_m = static_cast<std::size_t>(m < 0 ? -m : m);
  std::size_t points = 16;
  while (points < 2 * abs_m + 16) points *= 2;
  double sum = 0.0;
  for (std::size_t j = 0; j < points; ++j) sum += integrand(kTwoPi * j / points);
  double estimate = sum / points;
  constexpr std::size_t kMaxPoints = std::size_t{1} << 20;
  while (points < kMaxPoints) {
    double extra = 0.0;
    for (std::size_t j = 0; j < points; ++j) extra += integrand(kTwoPi * (j + 0.5) / points);
    sum += extra;
    points *= 2;
    const double refined = sum / points;
    const bool done = std::abs(refined - estimate) < 0.1 * tol;
    estimate = refined;
    if (done) return estimate;
  }
  throw Error(ErrorKind::ToleranceNotMet, "infinite_cover_heat_kernel: trapezoid rule did not settle");
}

}  // namespace zeta_cover
