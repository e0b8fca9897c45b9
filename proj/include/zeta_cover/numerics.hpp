#pragma once

// Foundation kernels: dense Hermitian eigensolver, exact integer
// determinants, endpoint-tolerant adaptive quadrature, power-law fits.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace zeta_cover {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Dense complex self-adjoint matrix, row-major.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t dim);
  HermitianMatrix(std::size_t dim, std::vector<Complex> entries);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }

  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  Complex trace() const noexcept;

  /// True when |a_ij - conj(a_ji)| <= rel_tol * max_abs for all i, j.
  bool is_hermitian(double rel_tol = 1e-14) const noexcept;

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Sorted eigenvalue multiset with its kernel count.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(std::vector<double> values, double zero_tol);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t zero_count() const noexcept { return zero_count_; }
  double zero_tol() const noexcept { return zero_tol_; }
  double max() const noexcept { return values_.empty() ? 0.0 : values_.back(); }

  /// Multiset union; the merged threshold is the larger of the two.
  static Spectrum merge(std::span<const Spectrum> parts);

 private:
  std::vector<double> values_;
  std::size_t zero_count_ = 0;
  double zero_tol_ = 0.0;
};

inline constexpr double kDefaultZeroTolRel = 1e-10;

/// Eigenvalues by cyclic complex Jacobi. Throws NonHermitian or NoConvergence.
Spectrum hermitian_eigenvalues(const HermitianMatrix& h,
                               double zero_tol_rel = kDefaultZeroTolRel);

struct Eigensystem {
  std::vector<double> values;          // ascending
  std::vector<Complex> vectors;        // column k (row-major dim x dim) pairs with values[k]
  std::size_t dim = 0;

  Complex vector_entry(std::size_t row, std::size_t k) const { return vectors[row * dim + k]; }
};

/// Eigenvalues and orthonormal eigenvectors (same Jacobi sweep, rotations accumulated).
Eigensystem hermitian_eigensystem(const HermitianMatrix& h);

/// max_k ||H v_k - lambda_k v_k|| for a computed eigensystem.
double max_eigen_residual(const HermitianMatrix& h, const Eigensystem& es);

/// Square matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  explicit IntegerMatrix(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  /// Copy with row and column `k` removed.
  IntegerMatrix minor(std::size_t k) const;

 private:
  std::size_t dim_;
  std::vector<mpz_class> entries_;
};

/// Exact determinant by Bareiss fraction-free elimination. Empty matrix -> 1.
mpz_class integer_determinant(const IntegerMatrix& m);

struct SingularEndpoints {
  bool left = false;
  bool right = false;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

/// Composite 20-point Gauss-Legendre with bisection refinement, plus geometric
/// panel grading toward flagged endpoints (log or weak power singularities).
/// Throws ToleranceNotMet when the panel budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double tol, SingularEndpoints ends = {},
                                    std::size_t max_panels = 200000);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int n);

struct PowerFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (log x, log y). Needs >= 8 samples over >= 1 decade.
PowerFit fit_power_exponent(std::span<const std::pair<double, double>> samples);

}  // namespace zeta_cover
