#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "zeta_cover/error.hpp"
#include "zeta_cover/numerics.hpp"

using namespace zeta_cover;

namespace {

HermitianMatrix random_hermitian(std::mt19937& rng, std::size_t n, double shift = 0.0) {
  std::normal_distribution<double> g;
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(rng) + shift;
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = Complex(g(rng), g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

// Partial-pivot complex LU determinant, test-only.
Complex lu_determinant(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  std::vector<Complex> a(h.entries().begin(), h.entries().end());
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      det = -det;
    }
    det *= a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

long long cofactor_determinant(const std::vector<long long>& m, std::size_t n) {
  if (n == 0) return 1;
  if (n == 1) return m[0];
  long long det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<long long> sub;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) sub.push_back(m[i * n + j]);
    const long long term = m[c] * cofactor_determinant(sub, n - 1);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace

TEST_CASE("hermitian_eigenvalues: scalar, C3 and P3") {
  HermitianMatrix scalar(1);
  scalar(0, 0) = 2.0 - 2.0 * std::cos(kPi);
  auto s = hermitian_eigenvalues(scalar);
  REQUIRE(s.size() == 1);
  CHECK(s.values()[0] == doctest::Approx(4.0).epsilon(1e-15));

  HermitianMatrix c3(3, {2, -1, -1, -1, 2, -1, -1, -1, 2});
  s = hermitian_eigenvalues(c3);
  CHECK(s.values()[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(s.values()[0]) < 1e-14);
  CHECK(s.values()[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.values()[2] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.zero_count() == 1);

  // characteristic polynomial lambda (lambda^2 - 4 lambda + 3)
  HermitianMatrix p3(3, {1, -1, 0, -1, 2, -1, 0, -1, 1});
  s = hermitian_eigenvalues(p3);
  CHECK(std::abs(s.values()[0]) < 1e-14);
  CHECK(s.values()[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.values()[2] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.zero_tol() == doctest::Approx(1e-10 * 3.0 * 3.0));
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
  HermitianMatrix bad(2, {1, Complex(0, 1), Complex(0, 1), 1});
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), Error);
  try {
    hermitian_eigenvalues(bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
  }
}

TEST_CASE("eigenvalue sum equals trace; residuals are small") {
  std::mt19937 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u, 64u}) {
    const auto h = random_hermitian(rng, n);
    const auto s = hermitian_eigenvalues(h);
    double sum = 0.0;
    for (double v : s.values()) sum += v;
    const double norm = h.frobenius_norm();
    CHECK(std::abs(sum - h.trace().real()) <= 1e-10 * n * norm);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.values()[i - 1] <= s.values()[i]);

    const auto es = hermitian_eigensystem(h);
    CHECK(max_eigen_residual(h, es) <= 1e-10 * norm);
  }
}

TEST_CASE("eigenvalue product equals LU determinant for positive-definite matrices") {
  std::mt19937 rng(5);
  for (std::size_t n = 1; n <= 16; ++n) {
    const auto h = random_hermitian(rng, n, 3.0 * std::sqrt(static_cast<double>(n)) + 3.0);
    const auto s = hermitian_eigenvalues(h);
    REQUIRE(s.values()[0] > 0.0);
    double log_prod = 0.0;
    for (double v : s.values()) log_prod += std::log(v);
    const Complex det = lu_determinant(h);
    CHECK(std::abs(det.imag()) <= 1e-9 * std::abs(det));
    CHECK(log_prod == doctest::Approx(std::log(det.real())).epsilon(1e-11));
  }
}

TEST_CASE("integer_determinant: small cases and Kirchhoff minors") {
  IntegerMatrix m(2);
  m(0, 0) = 2; m(0, 1) = -1; m(1, 0) = -1; m(1, 1) = 2;
  CHECK(integer_determinant(m) == 3);
  CHECK(integer_determinant(IntegerMatrix(0)) == 1);

  // reduced Laplacian of C4 (delete vertex 0) -> K(C4) = 4
  IntegerMatrix c4(3);
  const long long c4v[9] = {2, -1, 0, -1, 2, -1, 0, -1, 2};
  for (int i = 0; i < 9; ++i) c4(i / 3, i % 3) = static_cast<long>(c4v[i]);
  CHECK(integer_determinant(c4) == 4);

  // reduced Laplacian of K4 -> 16 (enumeration oracle)
  const auto k4 = zc_test::enumerate_spanning_trees(zeta_cover::complete_graph(4));
  REQUIRE(k4 == 16);
  IntegerMatrix red(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) red(i, j) = i == j ? 3 : -1;
  CHECK(integer_determinant(red) == k4);

  // zero pivot column
  IntegerMatrix z(2);
  z(0, 1) = 5; z(1, 1) = 7;
  CHECK(integer_determinant(z) == 0);
}

TEST_CASE("integer_determinant agrees with cofactor expansion on random matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<long long> raw(n * n);
    IntegerMatrix m(n);
    for (std::size_t i = 0; i < n * n; ++i) {
      raw[i] = entry(rng);
      if (trial % 7 == 0 && i % n == 0) raw[i] = 0;  // exercise pivot swaps
      m(i / n, i % n) = static_cast<long>(raw[i]);
    }
    CHECK(integer_determinant(m) == static_cast<long>(cofactor_determinant(raw, n)));
  }
}

TEST_CASE("integer_determinant stays exact beyond 64-bit range") {
  const std::size_t n = 30;
  IntegerMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1000;
  // diag(1000)^30 = 10^90
  mpz_class expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 10, 90);
  CHECK(integer_determinant(m) == expected);
}

TEST_CASE("integrate_adaptive: trivial and log-singular integrals") {
  auto r = integrate_adaptive([](double) { return 1.0; }, 0.0, kTwoPi, 1e-12);
  CHECK(r.value == doctest::Approx(kTwoPi).epsilon(1e-15));

  r = integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10, {true, false});
  CHECK(std::abs(r.value + 1.0) <= 1e-10);
  CHECK(r.error <= 1e-10);

  // Oracle: theta = pi s^2 removes the singularity; fixed high-order rule.
  auto smooth = [](double s) {
    const double sn = std::sin(0.5 * kPi * s * s);
    return 2.0 * std::log(4.0 * sn * sn) * 2.0 * kPi * s;
  };
  const double oracle = zc_test::fixed_gauss(smooth, 0.0, 1.0, 400);
  CHECK(std::abs(oracle) < 1e-9);

  auto integrand = [](double th) {
    const double sn = std::sin(0.5 * th);
    return std::log(4.0 * sn * sn);
  };
  const double tol = 1e-9;
  r = integrate_adaptive(integrand, 0.0, kTwoPi, tol, {true, true});
  CHECK(std::abs(r.value - oracle) <= tol);
  CHECK(r.error <= tol);
}

TEST_CASE("integrate_adaptive is exact on polynomials up to degree 12") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int deg = 0; deg <= 12; ++deg) {
    std::vector<double> c(deg + 1);
    for (auto& x : c) x = coef(rng);
    auto p = [&](double x) {
      double s = 0.0;
      for (int k = deg; k >= 0; --k) s = s * x + c[k];
      return s;
    };
    const double a = -0.7, b = 1.3;
    double exact = 0.0;
    for (int k = 0; k <= deg; ++k) exact += c[k] * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
    CHECK(std::abs(integrate_adaptive(p, a, b, 1e-13).value - exact) <= 1e-13);
  }
}

TEST_CASE("integrate_adaptive handles weak power singularities and reports failure") {
  auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0, 1e-6,
                              {true, false});
  CHECK(std::abs(r.value - 4.0) <= 1e-6);
  r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0, 1e-6,
                         {false, true});
  CHECK(std::abs(r.value - 2.0) <= 1e-6);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::pow(x, -0.97); }, 0.0, 1.0, 1e-10,
                                     {true, false}),
                  Error);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1e6 * x); }, 0.0, 1.0, 1e-12,
                                     {}, 50),
                  Error);
}

TEST_CASE("gauss_legendre_rule matches tabulated 20-point nodes") {
  const auto [x, w] = gauss_legendre_rule(20);
  CHECK(x[19] == doctest::Approx(0.9931285991850949).epsilon(1e-15));
  CHECK(w[19] == doctest::Approx(0.0176140071391521).epsilon(1e-13));
  double sw = 0.0;
  for (double v : w) sw += v;
  CHECK(sw == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("fit_power_exponent") {
  auto logspace = [](double lo, double hi, int n, auto&& f) {
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < n; ++i) {
      const double x = lo * std::pow(hi / lo, i / (n - 1.0));
      out.push_back({x, f(x)});
    }
    return out;
  };
  auto s = logspace(1e-3, 1e-1, 16, [](double x) { return x * x; });
  auto fit = fit_power_exponent(s);
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0));

  s = logspace(1e-3, 1e-1, 16, [](double x) {
    const double sn = std::sin(0.5 * x);
    return 4.0 * sn * sn;
  });
  fit = fit_power_exponent(s);
  CHECK(std::abs(fit.exponent - 2.0) <= 0.05);
  CHECK(std::abs(fit.amplitude - 1.0) <= 0.05);

  s = logspace(1e-3, 1e-1, 16, [](double x) { return 0.25 * x * x; });
  fit = fit_power_exponent(s);
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.amplitude == doctest::Approx(0.25).epsilon(1e-10));

  for (int planted : {2, 4, 6}) {
    s = logspace(0.01, 0.2, 12, [&](double x) { return 0.7 * std::pow(x, planted); });
    CHECK(std::abs(fit_power_exponent(s).exponent - planted) <= 0.02);
  }

  s = logspace(1e-3, 1e-1, 16, [](double x) { return x; });
  s[3].second = -1.0;
  CHECK_THROWS_AS(fit_power_exponent(s), Error);
  std::vector<std::pair<double, double>> flat(10, {0.5, 1.0});
  CHECK_THROWS_AS(fit_power_exponent(flat), Error);
}
