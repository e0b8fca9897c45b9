#include "zeta_cover/zeta.hpp"

#include <cmath>
#include <limits>

#include "../parallel.hpp"
#include "zeta_cover/error.hpp"

namespace zeta_cover {

double log_det_prime(const Spectrum& s) {
  double sum = 0.0;
  std::size_t used = 0;
  for (double v : s.values()) {
    if (v <= s.zero_tol()) continue;
    sum += std::log(v);
    ++used;
  }
  if (used == 0) throw Error(ErrorKind::AllZero, "log_det_prime: spectrum has no nonzero eigenvalue");
  return sum;
}

ZetaResult zeta_result(const Spectrum& s, double volume) {
  if (!(volume > 0.0)) throw Error(ErrorKind::InvalidArgument, "zeta_result: volume must be > 0");
  ZetaResult r;
  r.density = log_det_prime(s) / volume;
  r.log_det_prime = r.density * volume;
  r.volume = volume;
  r.zero_count = s.zero_count();
  const double scale = std::numeric_limits<double>::epsilon() * static_cast<double>(s.size()) *
                       std::max(1.0, s.max());
  for (double v : s.values())
    if (v > s.zero_tol()) r.error_estimate += scale / v;
  return r;
}

double heat_trace(const Spectrum& s, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "heat_trace: t must be >= 0");
  return static_cast<double>(s.zero_count()) + heat_trace_reduced(s, t);
}

double heat_trace_reduced(const Spectrum& s, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "heat_trace: t must be >= 0");
  double sum = 0.0;
  for (double v : s.values())
    if (v > s.zero_tol()) sum += std::exp(-t * v);
  return sum;
}

Spectrum cover_spectrum_twisted(const VoltageGraph& g, std::size_t n, std::size_t jobs) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cover degree must be >= 1");
  std::vector<Spectrum> fibers(n);
  detail::parallel_for(n, jobs, [&](std::size_t p) {
    fibers[p] = hermitian_eigenvalues(twisted_laplacian(g, TwistParameter(kTwoPi * p / n)));
  });
  return Spectrum::merge(fibers);
}

Spectrum cover_spectrum_direct(const VoltageGraph& g, std::size_t n) {
  return hermitian_eigenvalues(laplacian(build_cyclic_cover(g, n).graph()));
}

ZetaResult cover_zeta(const VoltageGraph& g, std::size_t n, std::size_t jobs) {
  return zeta_result(cover_spectrum_twisted(g, n, jobs), static_cast<double>(n * g.vertex_count()));
}

Estimate theta_integral_limit(const VoltageGraph& g, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "theta_integral_limit: tol must be > 0");
  if (!g.surjective())
    throw Error(ErrorKind::NonSurjective, "theta_integral_limit needs a connected surjective graph",
                g.cycle_gcd());
  // Conjugation symmetry folds [pi, 2pi] onto [0, pi].
  const double scale = kPi * static_cast<double>(g.vertex_count());
  const auto r = integrate_adaptive([&](double th) { return log_det_twisted(g, th); }, 0.0, kPi,
                                    tol * scale, {true, false});
  return {r.value / scale, r.error / scale};
}

ConvergenceSeries convergence_series(const VoltageGraph& g, std::span<const std::size_t> n_list,
                                     double tol, std::size_t jobs) {
  if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "convergence_series: empty N list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) throw Error(ErrorKind::InvalidArgument, "convergence_series: N must be >= 2");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw Error(ErrorKind::InvalidArgument, "convergence_series: N list must be increasing");
  }
  const auto limit = theta_integral_limit(g, tol);
  ConvergenceSeries out;
  out.limit = limit.value;
  out.limit_error = limit.error;
  for (std::size_t n : n_list) {
    const double f = cover_zeta(g, n, jobs).density;
    out.entries.push_back({n, f, std::abs(f - limit.value)});
  }
  return out;
}

Estimate zeta_prime_at_zero_mellin(const std::function<double(double)>& reduced_trace,
                                   double c_minus1, double c0, double tol, double split) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "mellin: tol must be > 0");
  if (!(split > 0.0)) throw Error(ErrorKind::InvalidArgument, "mellin: split must be > 0");
  if (reduced_trace(10.0) > reduced_trace(1.0))
    throw Error(ErrorKind::NonDecaying, "mellin: reduced heat trace grows between t=1 and t=10");

  const double part_tol = tol / 3.0;
  Estimate out;

  const auto small = integrate_adaptive(
      [&](double t) { return (reduced_trace(t) - c_minus1 / t - c0) / t; }, 0.0, split, part_tol,
      {true, false});
  out.value += small.value;
  out.error += small.error;

  const double cutoff = part_tol / std::exp(1.0);
  double a = split;
  for (int k = 0;; ++k) {
    if (k == 60) throw Error(ErrorKind::ToleranceNotMet, "mellin: heat trace did not decay below tol");
    const double b = 2.0 * a;
    const auto seg = integrate_adaptive([&](double t) { return reduced_trace(t) / t; }, a, b,
                                        part_tol / std::ldexp(1.0, k + 1));
    out.value += seg.value;
    out.error += seg.error;
    a = b;
    const double tail_start = reduced_trace(a);
    if (tail_start < cutoff) {
      if (tail_start > 0.0) {
        const double rate = std::log(reduced_trace(0.5 * a) / tail_start) / (0.5 * a);
        if (!(rate > 0.0)) throw Error(ErrorKind::NonDecaying, "mellin: no decay rate at large t");
        const double tail = tail_start / (rate * a);
        out.value += tail;
        out.error += tail;
      }
      break;
    }
  }

  out.value += -c_minus1 / split + c0 * (kEulerGamma + std::log(split));
  if (out.error > tol)
    throw Error(ErrorKind::ToleranceNotMet, "mellin: error estimate exceeds tol");
  return out;
}

double mckay_constant(int k) {
  if (k < 3) throw Error(ErrorKind::InvalidArgument, "mckay_constant needs k >= 3");
  const double kd = k;
  return std::pow(kd - 1.0, kd - 1.0) / std::pow(kd * kd - 2.0 * kd, 0.5 * kd - 1.0);
}

Estimate lattice2d_limit(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "lattice2d_limit: tol must be > 0");
  // Inner integral in closed form: (1/2pi) int log(4 - 2cos a - 2cos b) db = 2 asinh|sin(a/2)|.
  const double scale = 0.5 * kPi;
  const auto r = integrate_adaptive([](double a) { return std::asinh(std::sin(0.5 * a)); }, 0.0,
                                    kPi, tol * scale);
  const Estimate alpha{r.value / scale, r.error / scale};
  if (!(alpha.value > 0.0 && alpha.value < std::log(mckay_constant(4))))
    throw Error(ErrorKind::InvalidArgument, "lattice2d_limit: alpha outside (0, log c_4)");
  return alpha;
}

}  // namespace zeta_cover
