#pragma once

// Verification instruments: bottom-of-spectrum scans, bundle zero loci, the
// deck-orbit heat-trace identity, and brute-force spanning-tree oracles.

#include <cstddef>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "zeta_cover/graph.hpp"

namespace zeta_cover {

struct GapSample {
  double theta = 0.0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;  // NaN on one-vertex graphs
};

struct FitWindow {
  double lo = 1e-3;
  double hi = 1e-1;
};

struct GapReport {
  std::vector<GapSample> grid;  // uniform on [0, pi]
  double epsilon0 = 0.0;        // 0.9 * min(min lambda1, min_{theta >= 0.5} lambda0)
  int p = 0;                    // lambda0 ~ a theta^{2p}
  double exponent = 0.0;        // fitted slope before rounding
  double amplitude = 0.0;       // a, refitted with the exponent fixed at 2p
  double lower = 0.0;           // b: b theta^{2p} <= lambda0 on the grid, with a 0.9 margin
  double eta = 0.0;             // radius on which the lower bound was checked
  double r_squared = 0.0;
};

inline constexpr double kGapScanMinTheta = 0.5;

/// grid_size >= 256. The exponent is fitted on grid_size / 4 log-spaced angles
/// in the window (inside (0, 0.3], at least one decade wide).
/// Throws NonEvenExponent, GapCollapse, InvalidArgument.
GapReport gap_scan(const VoltageGraph& g, std::size_t grid_size, FitWindow window = {},
                   std::size_t jobs = 1);

/// C4 t^{-1/2p} + C5 e^{-epsilon0 t} bound on (1/N)(Tr e^{-t Delta_N} - 1).
struct LongTimeConstants {
  int p = 1;
  double lower = 0.0;
  double epsilon0 = 0.0;
  double c4 = 0.0;  // Gamma(1/2p) / (p b^{1/2p})
  double c5 = 0.0;
  double bound(double t) const;
};

/// (1/N)(Tr e^{-t Delta_N} - 1) from the twisted decomposition.
double normalized_reduced_trace(const VoltageGraph& g, std::size_t n, double t);

/// C5 is the smallest constant making the bound hold at every t in fit_times
/// for the cover of degree fit_n (never negative).
LongTimeConstants fit_long_time_constants(const VoltageGraph& g, const GapReport& gap,
                                          std::size_t fit_n, std::span<const double> fit_times);

struct ZeroLocus {
  std::vector<double> angles;  // ascending in [0, 2pi)
  double epsilon0 = 0.0;       // 0.9 * min over the grid of lambda1
  std::vector<double> lambda0_at_zero;
  std::vector<double> lambda1_at_zero;
};

/// Angles where the bottom eigenvalue of the bundle Laplacian vanishes:
/// grid minima refined by bisection on the sign of d lambda0 / d theta to
/// 1e-10, kept when lambda0 < 1e-8. Throws NonSimpleMonodromy, CountMismatch.
ZeroLocus monodromy_zero_locus(const VoltageGraph& g, const Monodromy& m, std::size_t grid_size);

struct DeckSumReport {
  double direct = 0.0;
  double orbit_sum = 0.0;
  double residual = 0.0;
  std::size_t orbit_terms = 0;  // largest |k| used
};

/// Tr e^{-t Delta_N} from the cover spectrum against
/// N sum_k sum_x K_inf((x, 0), (x, kN)), truncated once a +-k pair is below tol/10.
DeckSumReport verify_deck_sum(const VoltageGraph& g, std::size_t n, double t, double tol);

/// Enumerates (|V| - 1)-edge subsets. Throws TooLarge above 24 edges.
mpz_class brute_force_spanning_trees(const Graph& g);

struct MatrixTreeReport {
  mpz_class trees;            // brute force
  mpz_class det_prime_exact;  // |V| K
  double det_prime = 0.0;     // product of nonzero eigenvalues
  bool float_ok = false;      // relative error <= 1e-7
  bool exact_ok = false;      // Kirchhoff count and principal minors both match
  bool ok() const { return float_ok && exact_ok; }
};

/// Throws Disconnected, TooLarge.
MatrixTreeReport verify_matrix_tree(const Graph& g);

}  // namespace zeta_cover
