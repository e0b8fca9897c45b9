#include <cmath>
#include <limits>

#include "zeta_cover/error.hpp"
#include "zeta_cover/graph.hpp"

namespace zeta_cover {

HermitianMatrix laplacian(const Graph& g) {
  HermitianMatrix l(g.vertex_count);
  for (const auto& e : g.edges) {
    if (e.u == e.v) continue;
    l(e.u, e.u) += 1.0;
    l(e.v, e.v) += 1.0;
    l(e.u, e.v) -= 1.0;
    l(e.v, e.u) -= 1.0;
  }
  return l;
}

IntegerMatrix integer_laplacian(const Graph& g) {
  IntegerMatrix l(g.vertex_count);
  for (const auto& e : g.edges) {
    if (e.u == e.v) continue;
    l(e.u, e.u) += 1;
    l(e.v, e.v) += 1;
    l(e.u, e.v) -= 1;
    l(e.v, e.u) -= 1;
  }
  return l;
}

namespace {

// 2 - 2 cos(x) without cancellation.
double two_minus_two_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 4.0 * s * s;
}

}  // namespace

HermitianMatrix twisted_laplacian(const VoltageGraph& g, TwistParameter theta) {
  const double th = theta.value();
  HermitianMatrix l(g.vertex_count());
  for (const auto& e : g.edges()) {
    const double phase = th * static_cast<double>(e.voltage);
    if (e.u == e.v) {
      l(e.u, e.u) += two_minus_two_cos(phase);
      continue;
    }
    const Complex w = std::polar(1.0, -phase);
    l(e.u, e.u) += 1.0;
    l(e.v, e.v) += 1.0;
    l(e.u, e.v) -= w;
    l(e.v, e.u) -= std::conj(w);
  }
  return l;
}

HermitianMatrix twisted_laplacian_derivative(const VoltageGraph& g, TwistParameter theta) {
  const double th = theta.value();
  HermitianMatrix d(g.vertex_count());
  for (const auto& e : g.edges()) {
    const double r = static_cast<double>(e.voltage);
    if (e.u == e.v) {
      d(e.u, e.u) += 2.0 * r * std::sin(r * th);
      continue;
    }
    const Complex w = std::polar(1.0, -th * r);
    d(e.u, e.v) += Complex(0.0, r) * w;
    d(e.v, e.u) += std::conj(Complex(0.0, r) * w);
  }
  return d;
}

namespace {

// Fallback for configurations where the compressed block is not positive
// definite (only reachable for non-surjective input at a kernel angle).
double log_det_from_eigenvalues(const VoltageGraph& g, double theta) {
  const auto spec = hermitian_eigenvalues(twisted_laplacian(g, TwistParameter(theta)));
  double s = 0.0;
  for (double v : spec.values()) {
    if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
    s += std::log(v);
  }
  return s;
}

}  // namespace

double log_det_twisted(const VoltageGraph& graph, double theta) {
  const double th = std::remainder(theta, kTwoPi);
  const VoltageGraph g = graph.gauge_reduced();
  const std::size_t n = g.vertex_count();

  // w = Delta_theta * 1 and alpha = <1, Delta_theta 1> / n, both from sin terms.
  std::vector<Complex> w(n, 0.0);
  double alpha = 0.0;
  for (const auto& e : g.edges()) {
    const double phase = th * static_cast<double>(e.voltage);
    const double c = two_minus_two_cos(phase);
    alpha += c;
    if (e.u == e.v) {
      w[e.u] += c;
      continue;
    }
    const double half = 0.5 * c;
    const double s = std::sin(phase);
    w[e.u] += Complex(half, s);
    w[e.v] += Complex(half, -s);
  }
  alpha /= static_cast<double>(n);
  if (n == 1) return alpha > 0.0 ? std::log(alpha) : -std::numeric_limits<double>::infinity();

  const HermitianMatrix l = twisted_laplacian(g, TwistParameter(th));
  // Householder reflector mapping e_0 to 1/sqrt(n); its columns 1..n-1 span 1^perp.
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> v(n, -inv_sqrt_n);
  v[0] += 1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;
  const std::size_t m = n - 1;
  std::vector<double> q(n * m);  // q(i, j) = H(i, j + 1)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      q[i * m + j] = (i == j + 1 ? 1.0 : 0.0) - 2.0 * v[i] * v[j + 1] / vv;

  std::vector<Complex> b(m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) b[j] += q[i * m + j] * w[i];
  for (auto& x : b) x *= inv_sqrt_n;

  std::vector<Complex> lq(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex lik = l(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) lq[i * m + j] += lik * q[k * m + j];
    }
  std::vector<Complex> a(m * m, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      const double qir = q[i * m + r];
      if (qir == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) a[r * m + j] += qir * lq[i * m + j];
    }

  // Cholesky A = C C^H.
  std::vector<Complex> c(m * m, 0.0);
  double log_det_a = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double d = a[j * m + j].real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(c[j * m + k]);
    if (!(d > 0.0)) return log_det_from_eigenvalues(graph, theta);
    const double cjj = std::sqrt(d);
    c[j * m + j] = cjj;
    log_det_a += 2.0 * std::log(cjj);
    for (std::size_t i = j + 1; i < m; ++i) {
      Complex s = a[i * m + j];
      for (std::size_t k = 0; k < j; ++k) s -= c[i * m + k] * std::conj(c[j * m + k]);
      c[i * m + j] = s / cjj;
    }
  }
  // y = C^{-1} b, so b^H A^{-1} b = |y|^2.
  std::vector<Complex> y(m);
  double quad = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Complex s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= c[i * m + k] * y[k];
    y[i] = s / c[i * m + i];
    quad += std::norm(y[i]);
  }
  const double schur = alpha - quad;
  if (!(schur > 0.0)) {
    if (alpha == 0.0) return -std::numeric_limits<double>::infinity();
    return log_det_from_eigenvalues(graph, theta);
  }
  return log_det_a + std::log(schur);
}

mpz_class spanning_tree_count(const Graph& g) {
  if (!g.is_connected()) return 0;
  return integer_determinant(integer_laplacian(g).minor(0));
}

mpz_class integer_det_prime(const Graph& g) {
  const auto l = integer_laplacian(g);
  mpz_class total = 0;
  for (std::size_t i = 0; i < l.dim(); ++i) total += integer_determinant(l.minor(i));
  return total;
}

}  // namespace zeta_cover
