#include <algorithm>
#include <cmath>
#include <numeric>

#include "zeta_cover/error.hpp"
#include "zeta_cover/numerics.hpp"

namespace zeta_cover {

HermitianMatrix::HermitianMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "HermitianMatrix: dim must be >= 1");
}

HermitianMatrix::HermitianMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "HermitianMatrix: dim must be >= 1");
  if (entries_.size() != dim * dim)
    throw Error(ErrorKind::InvalidArgument, "HermitianMatrix: entry count != dim^2");
}

double HermitianMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double HermitianMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

Complex HermitianMatrix::trace() const noexcept {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool HermitianMatrix::is_hermitian(double rel_tol) const noexcept {
  const double bound = rel_tol * max_abs();
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > bound) return false;
  return true;
}

Spectrum::Spectrum(std::vector<double> values, double zero_tol)
    : values_(std::move(values)), zero_tol_(zero_tol) {
  std::sort(values_.begin(), values_.end());
  zero_count_ = static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [&](double v) { return v <= zero_tol_; }));
}

Spectrum Spectrum::merge(std::span<const Spectrum> parts) {
  std::vector<double> all;
  double tol = 0.0;
  for (const auto& s : parts) {
    all.insert(all.end(), s.values_.begin(), s.values_.end());
    tol = std::max(tol, s.zero_tol_);
  }
  return Spectrum(std::move(all), tol);
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalRelTol = 1e-14;

// Cyclic Jacobi on a working copy; `vectors` is accumulated when non-null.
std::vector<double> jacobi(const HermitianMatrix& h, std::vector<Complex>* vectors) {
  if (!h.is_hermitian(1e-14))
    throw Error(ErrorKind::NonHermitian, "matrix is not Hermitian within 1e-14 * max|a_ij|");

  const std::size_t n = h.dim();
  std::vector<Complex> a(h.entries().begin(), h.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) at(i, i) = at(i, i).real();

  if (vectors) {
    vectors->assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*vectors)[i * n + i] = 1.0;
  }

  const double target = kOffDiagonalRelTol * h.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(at(i, j));
    return std::sqrt(s);
  };

  bool converged = n == 1;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_norm() <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(at(p, q));
        if (r == 0.0) continue;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        // Negligible against both diagonal entries: drop it outright.
        if (sweep > 3 && std::abs(app) + 100.0 * r == std::abs(app) &&
            std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const Complex phase = at(p, q) / r;  // e^{i phi}
        const Complex phase_conj = std::conj(phase);
        const double theta = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          const Complex new_kp = c * akp - s * phase_conj * akq;
          const Complex new_kq = s * akp + c * phase_conj * akq;
          at(k, p) = new_kp;
          at(k, q) = new_kq;
          at(p, k) = std::conj(new_kp);
          at(q, k) = std::conj(new_kq);
        }
        at(p, p) = app - t * r;
        at(q, q) = aqq + t * r;
        at(p, q) = at(q, p) = 0.0;

        if (vectors) {
          auto& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v[k * n + p];
            const Complex vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * phase_conj * vkq;
            v[k * n + q] = s * vkp + c * phase_conj * vkq;
          }
        }
      }
    }
  }
  if (!converged && off_norm() > target)
    throw Error(ErrorKind::NoConvergence, "Jacobi eigensolver exceeded 100 sweeps");

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = at(i, i).real();
  return values;
}

}  // namespace

Spectrum hermitian_eigenvalues(const HermitianMatrix& h, double zero_tol_rel) {
  auto values = jacobi(h, nullptr);
  const double lmax = *std::max_element(values.begin(), values.end());
  const double zero_tol = zero_tol_rel * std::max(1.0, lmax) * static_cast<double>(h.dim());
  return Spectrum(std::move(values), zero_tol);
}

Eigensystem hermitian_eigensystem(const HermitianMatrix& h) {
  std::vector<Complex> raw_vectors;
  const auto raw_values = jacobi(h, &raw_vectors);
  const std::size_t n = h.dim();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return raw_values[i] < raw_values[j]; });

  Eigensystem es;
  es.dim = n;
  es.values.resize(n);
  es.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = raw_values[order[k]];
    for (std::size_t row = 0; row < n; ++row) es.vectors[row * n + k] = raw_vectors[row * n + order[k]];
  }
  return es;
}

double max_eigen_residual(const HermitianMatrix& h, const Eigensystem& es) {
  const std::size_t n = h.dim();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex hv = 0.0;
      for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * es.vector_entry(j, k);
      s += std::norm(hv - es.values[k] * es.vector_entry(i, k));
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace zeta_cover
