#pragma once

// Flat tori C / (Z + tau Z): Dedekind eta, the closed-form determinant, heat
// traces, and the density of the cyclic covers tau = i N L.

#include <span>

#include "zeta_cover/numerics.hpp"
#include "zeta_cover/zeta.hpp"

namespace zeta_cover {

/// tau in the upper half plane. Throws InvalidArgument if Im tau <= 0.
class ModularParameter {
 public:
  explicit ModularParameter(Complex tau);
  Complex tau() const noexcept { return tau_; }
  double volume() const noexcept { return tau_.imag(); }

 private:
  Complex tau_;
};

/// e^{pi i tau / 12} prod_{n>=1} (1 - q^n), q = e^{2 pi i tau}; the product stops
/// at the first n with |q|^n < tol / 10.
Complex dedekind_eta(ModularParameter tau, double tol = 1e-16);
/// log |eta(tau)| from the same product, without underflow for large Im tau.
double log_abs_eta(ModularParameter tau, double tol = 1e-16);

/// det_zeta of the flat Laplacian: (Im tau)^2 |eta(tau)|^4.
double torus_det_zeta(ModularParameter tau);

inline constexpr double kTorusSwitchover = 0.2;

/// Tr e^{-t Delta}: direct sum over the dual lattice for t >= 0.2, the Poisson
/// form (Im tau)/(4 pi t) sum_{v in lattice} e^{-|v|^2 / 4t} below. Shells are
/// added until the last one contributes less than tol/10 of the total.
double torus_heat_trace(ModularParameter tau, double t, double tol = 1e-14);
/// Same with the constant mode removed.
double torus_heat_trace_reduced(ModularParameter tau, double t, double tol = 1e-14);
/// Direct dual-lattice sum and Poisson form, each at any t > 0.
double torus_heat_trace_direct(ModularParameter tau, double t, double tol = 1e-14);
double torus_heat_trace_poisson(ModularParameter tau, double t, double tol = 1e-14);

/// zeta'(0) via the Mellin formula with c_{-1} = Im tau / 4 pi, c_0 = -1.
Estimate torus_zeta_prime_mellin(ModularParameter tau, double tol, double split = 1.0);

/// f_N = (2 log(N L) + 4 log|eta(i N L)|) / (N L); limit -pi/3.
ConvergenceSeries torus_limit_series(double l, std::span<const std::size_t> n_list);

}  // namespace zeta_cover
