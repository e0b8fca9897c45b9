#pragma once

// Zeta-regularized determinants: det' of finite spectra, heat traces, the
// Mellin formula for zeta'(0), and the large-N density of cyclic covers.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "zeta_cover/graph.hpp"
#include "zeta_cover/numerics.hpp"

namespace zeta_cover {

struct ZetaResult {
  double log_det_prime = 0.0;
  std::size_t zero_count = 0;
  double volume = 0.0;
  double density = 0.0;  // log_det_prime / volume; the pair is stored so the product is exact
  double error_estimate = 0.0;
};

struct SeriesEntry {
  std::size_t n = 0;
  double density = 0.0;
  double abs_error = 0.0;  // |density - limit|
};

struct ConvergenceSeries {
  std::vector<SeriesEntry> entries;
  double limit = 0.0;
  double limit_error = 0.0;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Sum of log(lambda) over lambda > zero_tol. Throws AllZero.
double log_det_prime(const Spectrum& s);

/// Packs log det' with the given volume. error_estimate is the first-order
/// effect of a rounding-level eigenvalue perturbation, sum eps * lambda_max / lambda.
ZetaResult zeta_result(const Spectrum& s, double volume);

/// sum exp(-t lambda); t >= 0. Eigenvalues within zero_tol count as exact zeros.
double heat_trace(const Spectrum& s, double t);
/// heat_trace minus the kernel dimension.
double heat_trace_reduced(const Spectrum& s, double t);

/// Spectrum of the N-sheeted cover assembled fiber by fiber from Delta_{2 pi p / N}.
/// Each fiber keeps its own zero threshold (relative to its own dimension).
Spectrum cover_spectrum_twisted(const VoltageGraph& g, std::size_t n, std::size_t jobs = 1);

/// Spectrum of the cover from one eigensolve of its full Laplacian.
Spectrum cover_spectrum_direct(const VoltageGraph& g, std::size_t n);

/// Density log det'(Delta_N) / (N |V|) via the twisted decomposition.
ZetaResult cover_zeta(const VoltageGraph& g, std::size_t n, std::size_t jobs = 1);

/// (1 / (2 pi |V|)) * integral_0^{2pi} log det Delta_theta dtheta.
Estimate theta_integral_limit(const VoltageGraph& g, double tol);

/// f_N for each N in n_list (increasing, each >= 2) against theta_integral_limit.
ConvergenceSeries convergence_series(const VoltageGraph& g, std::span<const std::size_t> n_list,
                                     double tol, std::size_t jobs = 1);

/// zeta'(0) from a reduced heat trace with small-t expansion c_minus1 / t + c0 + O(t):
///   zeta'(0) = int_0^T (Tr' - c_minus1/t - c0) dt/t + int_T^inf Tr' dt/t
///              - c_minus1 / T + c0 (gamma + log T)
/// with T = split. Throws NonDecaying if Tr'(10) > Tr'(1), ToleranceNotMet.
Estimate zeta_prime_at_zero_mellin(const std::function<double(double)>& reduced_trace,
                                   double c_minus1, double c0, double tol, double split = 1.0);

/// (k-1)^{k-1} / (k^2 - 2k)^{k/2 - 1}, k >= 3.
double mckay_constant(int k);

/// Spanning-tree entropy of the square lattice,
/// (1 / 4 pi^2) double integral of log(4 - 2 cos a - 2 cos b).
/// Throws ToleranceNotMet, or InvalidArgument if the result leaves (0, log c_4).
Estimate lattice2d_limit(double tol);

}  // namespace zeta_cover
