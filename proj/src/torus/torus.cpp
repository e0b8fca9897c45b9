#include "zeta_cover/torus.hpp"

#include <cmath>

#include "zeta_cover/error.hpp"

namespace zeta_cover {

namespace {

constexpr long kMaxShell = 20000;

// tau + k spans the same lattice, so keep Re tau in [-1/2, 1/2]; square shells
// in (m, n) then grow in norm.
Complex reduced(Complex tau) { return {tau.real() - std::round(tau.real()), tau.imag()}; }

// Sum of weight(m, n) over Z^2 in square shells max(|m|, |n|) = R.
template <typename Weight>
double shell_sum(Weight&& weight, double tol, bool skip_origin) {
  double total = skip_origin ? 0.0 : weight(0L, 0L);
  for (long r = 1; r <= kMaxShell; ++r) {
    double shell = 0.0;
    for (long k = -r; k <= r; ++k) {
      shell += weight(k, r) + weight(k, -r);
      if (k != -r && k != r) shell += weight(r, k) + weight(-r, k);
    }
    total += shell;
    if (shell <= 0.1 * tol * total) return total;
  }
  throw Error(ErrorKind::ToleranceNotMet, "torus lattice sum did not converge");
}

void check_t(double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "torus heat trace needs t > 0");
}

double direct(ModularParameter tau, double t, double tol, bool skip_origin) {
  check_t(t);
  const Complex z = reduced(tau.tau());
  const double x = z.real(), y = z.imag();
  const double c = 4.0 * kPi * kPi * t;
  return shell_sum(
      [&](long m, long n) {
        const double b = (n - m * x) / y;
        return std::exp(-c * (m * static_cast<double>(m) + b * b));
      },
      tol, skip_origin);
}

}  // namespace

ModularParameter::ModularParameter(Complex tau) : tau_(tau) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau must have Im tau > 0");
}

Complex dedekind_eta(ModularParameter tau, double tol) {
  const Complex i(0.0, 1.0);
  const Complex q = std::exp(2.0 * kPi * i * tau.tau());
  Complex prod = 1.0, qn = q;
  while (std::abs(qn) >= 0.1 * tol) {
    prod *= 1.0 - qn;
    qn *= q;
  }
  return std::exp(kPi * i * tau.tau() / 12.0) * prod;
}

double log_abs_eta(ModularParameter tau, double tol) {
  const Complex i(0.0, 1.0);
  const Complex q = std::exp(2.0 * kPi * i * tau.tau());
  double sum = -kPi * tau.volume() / 12.0;
  Complex qn = q;
  while (std::abs(qn) >= 0.1 * tol) {
    sum += std::log(std::abs(1.0 - qn));
    qn *= q;
  }
  return sum;
}

double torus_det_zeta(ModularParameter tau) {
  const double y = tau.volume();
  return std::exp(2.0 * std::log(y) + 4.0 * log_abs_eta(tau));
}

double torus_heat_trace_direct(ModularParameter tau, double t, double tol) {
  return direct(tau, t, tol, false);
}

double torus_heat_trace_poisson(ModularParameter tau, double t, double tol) {
  check_t(t);
  const Complex z = reduced(tau.tau());
  const double x = z.real(), y = z.imag();
  const double sum = shell_sum(
      [&](long m, long n) {
        const double a = m + n * x, b = n * y;
        return std::exp(-(a * a + b * b) / (4.0 * t));
      },
      tol, false);
  return y / (4.0 * kPi * t) * sum;
}

double torus_heat_trace(ModularParameter tau, double t, double tol) {
  return t >= kTorusSwitchover ? torus_heat_trace_direct(tau, t, tol)
                               : torus_heat_trace_poisson(tau, t, tol);
}

double torus_heat_trace_reduced(ModularParameter tau, double t, double tol) {
  return t >= kTorusSwitchover ? direct(tau, t, tol, true)
                               : torus_heat_trace_poisson(tau, t, tol) - 1.0;
}

Estimate torus_zeta_prime_mellin(ModularParameter tau, double tol, double split) {
  return zeta_prime_at_zero_mellin(
      [tau](double t) { return torus_heat_trace_reduced(tau, t); }, tau.volume() / (4.0 * kPi),
      -1.0, tol, split);
}

ConvergenceSeries torus_limit_series(double l, std::span<const std::size_t> n_list) {
  if (!(l > 0.0)) throw Error(ErrorKind::InvalidArgument, "torus_limit_series needs L > 0");
  if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "torus_limit_series: empty N list");
  ConvergenceSeries out;
  out.limit = -kPi / 3.0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const std::size_t n = n_list[i];
    if (n == 0 || (i > 0 && n <= n_list[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "torus_limit_series: N list must be increasing and >= 1");
    const double y = static_cast<double>(n) * l;
    const double f = (2.0 * std::log(y) + 4.0 * log_abs_eta(ModularParameter({0.0, y}))) / y;
    out.entries.push_back({n, f, std::abs(f - out.limit)});
  }
  return out;
}

}  // namespace zeta_cover
