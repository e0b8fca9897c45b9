#include "zeta_cover/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "../parallel.hpp"
#include "zeta_cover/error.hpp"
#include "zeta_cover/zeta.hpp"

namespace zeta_cover {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::pair<double, double> bottom_two(const VoltageGraph& g, double theta) {
  const auto s = hermitian_eigenvalues(twisted_laplacian(g, TwistParameter(theta)));
  return {s.values()[0], s.size() > 1 ? s.values()[1] : kNaN};
}

}  // namespace

GapReport gap_scan(const VoltageGraph& g, std::size_t grid_size, FitWindow window,
                   std::size_t jobs) {
  if (grid_size < 256) throw Error(ErrorKind::InvalidArgument, "gap_scan: grid_size must be >= 256");
  if (!(window.lo > 0.0 && window.hi <= 0.3 && window.hi >= 10.0 * window.lo))
    throw Error(ErrorKind::InvalidArgument,
                "gap_scan: fit window must lie in (0, 0.3] and span at least one decade");
  if (!g.surjective())
    throw Error(ErrorKind::NonSurjective, "gap_scan needs a connected surjective graph",
                g.cycle_gcd());

  GapReport r;
  r.grid.resize(grid_size);
  detail::parallel_for(grid_size, jobs, [&](std::size_t j) {
    const double th = kPi * static_cast<double>(j) / static_cast<double>(grid_size - 1);
    const auto [l0, l1] = bottom_two(g, th);
    r.grid[j] = {th, l0, l1};
  });

  double min_l1 = std::numeric_limits<double>::infinity();
  double min_far_l0 = std::numeric_limits<double>::infinity();
  for (const auto& s : r.grid) {
    if (!std::isnan(s.lambda1)) min_l1 = std::min(min_l1, s.lambda1);
    if (s.theta >= kGapScanMinTheta) min_far_l0 = std::min(min_far_l0, s.lambda0);
  }
  if (min_l1 < 1e-8)
    throw Error(ErrorKind::GapCollapse, "gap_scan: lambda1 approaches 0 on the grid");
  r.epsilon0 = 0.9 * std::min(min_l1, min_far_l0);

  const std::size_t fit_count = grid_size / 4;
  std::vector<std::pair<double, double>> samples(fit_count);
  detail::parallel_for(fit_count, jobs, [&](std::size_t i) {
    const double th =
        window.lo * std::pow(window.hi / window.lo, static_cast<double>(i) / (fit_count - 1.0));
    samples[i] = {th, bottom_two(g, th).first};
  });
  const auto fit = fit_power_exponent(samples);
  r.exponent = fit.exponent;
  r.r_squared = fit.r_squared;
  const double even = 2.0 * std::round(0.5 * fit.exponent);
  if (even < 2.0 || std::abs(fit.exponent - even) > 0.1)
    throw Error(ErrorKind::NonEvenExponent,
                "gap_scan: fitted exponent " + std::to_string(fit.exponent) +
                    " is not within 0.1 of an even integer");
  r.p = static_cast<int>(even / 2.0);

  double log_a = 0.0;
  for (const auto& [th, y] : samples) log_a += std::log(y) - even * std::log(th);
  r.amplitude = std::exp(log_a / static_cast<double>(samples.size()));

  double ratio = std::numeric_limits<double>::infinity();
  for (const auto& s : r.grid)
    if (s.theta > 0.0) ratio = std::min(ratio, s.lambda0 / std::pow(s.theta, even));
  for (const auto& [th, y] : samples) ratio = std::min(ratio, y / std::pow(th, even));
  r.lower = 0.9 * ratio;
  r.eta = kPi;
  return r;
}

double LongTimeConstants::bound(double t) const {
  return c4 * std::pow(t, -1.0 / (2.0 * p)) + c5 * std::exp(-epsilon0 * t);
}

double normalized_reduced_trace(const VoltageGraph& g, std::size_t n, double t) {
  const auto s = cover_spectrum_twisted(g, n);
  return heat_trace_reduced(s, t) / static_cast<double>(n);
}

LongTimeConstants fit_long_time_constants(const VoltageGraph& g, const GapReport& gap,
                                          std::size_t fit_n, std::span<const double> fit_times) {
  LongTimeConstants c;
  c.p = gap.p;
  c.lower = gap.lower;
  c.epsilon0 = gap.epsilon0;
  const double inv = 1.0 / (2.0 * gap.p);
  c.c4 = std::tgamma(inv) / (gap.p * std::pow(gap.lower, inv));
  const auto s = cover_spectrum_twisted(g, fit_n);
  for (double t : fit_times) {
    const double lhs = heat_trace_reduced(s, t) / static_cast<double>(fit_n);
    const double excess = (lhs - c.c4 * std::pow(t, -inv)) * std::exp(c.epsilon0 * t);
    c.c5 = std::max(c.c5, excess);
  }
  return c;
}

namespace {

struct BundleBottom {
  double lambda0, lambda1, slope;
};

BundleBottom bundle_bottom(const VoltageGraph& g, const Monodromy& m, double theta) {
  const TwistParameter tp(theta);
  const auto es = hermitian_eigensystem(bundle_twisted_laplacian(g, m, tp));
  const auto d = bundle_twisted_laplacian_derivative(g, m, tp);
  Complex slope = 0.0;
  for (std::size_t i = 0; i < es.dim; ++i)
    for (std::size_t j = 0; j < es.dim; ++j)
      slope += std::conj(es.vector_entry(i, 0)) * d(i, j) * es.vector_entry(j, 0);
  return {es.values[0], es.dim > 1 ? es.values[1] : kNaN, slope.real()};
}

}  // namespace

ZeroLocus monodromy_zero_locus(const VoltageGraph& g, const Monodromy& m, std::size_t grid_size) {
  if (!m.simple())
    throw Error(ErrorKind::NonSimpleMonodromy, "monodromy has a repeated eigenvalue");
  if (grid_size < 8) throw Error(ErrorKind::InvalidArgument, "zero locus grid needs >= 8 points");

  std::vector<BundleBottom> grid(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j)
    grid[j] = bundle_bottom(g, m, kTwoPi * static_cast<double>(j) / grid_size);

  ZeroLocus out;
  double min_l1 = std::numeric_limits<double>::infinity();
  for (const auto& b : grid)
    if (!std::isnan(b.lambda1)) min_l1 = std::min(min_l1, b.lambda1);
  out.epsilon0 = std::isfinite(min_l1) ? 0.9 * min_l1 : kNaN;

  const double h = kTwoPi / grid_size;
  for (std::size_t j = 0; j < grid_size; ++j) {
    const auto& prev = grid[(j + grid_size - 1) % grid_size];
    const auto& next = grid[(j + 1) % grid_size];
    const double here = grid[j].lambda0;
    if (here > prev.lambda0 || here >= next.lambda0) continue;  // one hit per plateau
    double a = kTwoPi * static_cast<double>(j) / grid_size - h;
    double b = a + 2.0 * h;
    if (bundle_bottom(g, m, a).slope > 0.0 || bundle_bottom(g, m, b).slope < 0.0) continue;
    while (b - a > 1e-10) {
      const double mid = 0.5 * (a + b);
      if (bundle_bottom(g, m, mid).slope < 0.0) a = mid;
      else b = mid;
    }
    double theta = TwistParameter(0.5 * (a + b)).value();
    if (kTwoPi - theta < 1e-10) theta = 0.0;
    const auto at = bundle_bottom(g, m, theta);
    if (at.lambda0 >= 1e-8) continue;
    out.angles.push_back(theta);
    out.lambda0_at_zero.push_back(at.lambda0);
    out.lambda1_at_zero.push_back(at.lambda1);
  }

  // sort the three arrays together
  std::vector<std::size_t> order(out.angles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return out.angles[x] < out.angles[y]; });
  ZeroLocus sorted{{}, out.epsilon0, {}, {}};
  for (std::size_t i : order) {
    sorted.angles.push_back(out.angles[i]);
    sorted.lambda0_at_zero.push_back(out.lambda0_at_zero[i]);
    sorted.lambda1_at_zero.push_back(out.lambda1_at_zero[i]);
  }

  if (sorted.angles.size() != m.rank())
    throw Error(ErrorKind::CountMismatch,
                "found " + std::to_string(sorted.angles.size()) + " zeros, expected " +
                    std::to_string(m.rank()),
                static_cast<std::int64_t>(sorted.angles.size()));
  for (double l1 : sorted.lambda1_at_zero)
    if (!std::isnan(l1) && !(l1 > sorted.epsilon0))
      throw Error(ErrorKind::CountMismatch, "zero of the bundle Laplacian is not simple");
  return sorted;
}

DeckSumReport verify_deck_sum(const VoltageGraph& g, std::size_t n, double t, double tol) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "verify_deck_sum needs t > 0");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "verify_deck_sum needs tol > 0");
  DeckSumReport r;
  r.direct = heat_trace(cover_spectrum_direct(g, n), t);

  const std::size_t nv = g.vertex_count();
  const double kernel_tol = tol / (100.0 * static_cast<double>(n * nv));
  auto fundamental = [&](std::int64_t m) {
    double s = 0.0;
    for (std::size_t x = 0; x < nv; ++x) s += infinite_cover_heat_kernel(g, t, x, x, m, kernel_tol);
    return s;
  };
  const auto step = static_cast<std::int64_t>(n);
  double sum = fundamental(0);
  for (std::int64_t k = 1;; ++k) {
    const double pair = fundamental(k * step) + fundamental(-k * step);
    sum += pair;
    r.orbit_terms = static_cast<std::size_t>(k);
    if (std::abs(pair) < 0.1 * tol) break;
    if (k > 10000) throw Error(ErrorKind::ToleranceNotMet, "deck orbit sum did not settle");
  }
  r.orbit_sum = static_cast<double>(n) * sum;
  r.residual = std::abs(r.direct - r.orbit_sum);
  return r;
}

mpz_class brute_force_spanning_trees(const Graph& g) {
  const std::size_t n = g.vertex_count, m = g.edges.size();
  if (m > 24) throw Error(ErrorKind::TooLarge, "brute force needs at most 24 edges",
                          static_cast<std::int64_t>(m));
  if (n == 0) return 0;
  if (n == 1) return 1;
  const std::size_t k = n - 1;
  if (k > m) return 0;

  std::vector<std::size_t> parent(n);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  mpz_class count = 0;
  // Gosper's hack walks the k-subsets of the m edges.
  std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  const std::uint32_t limit = std::uint32_t{1} << m;
  while (mask < limit) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    bool forest = true;
    for (std::size_t e = 0; e < m && forest; ++e) {
      if (!(mask >> e & 1u)) continue;
      const auto a = find(g.edges[e].u), b = find(g.edges[e].v);
      if (a == b) forest = false;
      else parent[a] = b;
    }
    if (forest) ++count;  // k acyclic edges on n vertices span
    const std::uint32_t c = mask & -mask;
    const std::uint32_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return count;
}

MatrixTreeReport verify_matrix_tree(const Graph& g) {
  if (!g.is_connected()) throw Error(ErrorKind::Disconnected, "matrix-tree check needs a connected graph");
  MatrixTreeReport r;
  r.trees = brute_force_spanning_trees(g);
  const mpz_class expected = r.trees * static_cast<unsigned long>(g.vertex_count);
  r.det_prime_exact = integer_det_prime(g);
  r.exact_ok = spanning_tree_count(g) == r.trees && r.det_prime_exact == expected;
  r.det_prime = g.vertex_count == 1 ? 1.0 : std::exp(log_det_prime(hermitian_eigenvalues(laplacian(g))));
  const double target = expected.get_d();
  r.float_ok = std::abs(r.det_prime - target) <= 1e-7 * target;
  return r;
}

}  // namespace zeta_cover
