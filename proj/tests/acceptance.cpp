// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "zeta_cover/analysis.hpp"
#include "zeta_cover/error.hpp"
#include "zeta_cover/torus.hpp"
#include "zeta_cover/zeta.hpp"

using namespace zeta_cover;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> check;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// spectra produced by criteria 1-3, reused by the counting bound
std::vector<Spectrum> g_spectra;

Verdict kirchhoff() {
  std::vector<Graph> corpus;
  for (std::size_t n = 3; n <= 8; ++n) corpus.push_back(cycle_graph(n));
  for (std::size_t n = 2; n <= 5; ++n) corpus.push_back(path_graph(n));
  corpus.push_back(complete_graph(4));
  std::mt19937 rng(20240601);
  for (int i = 0; i < 2; ++i) corpus.push_back(zc_test::random_voltage_graph(rng, 5, 9).underlying());

  bool ok = true;
  double worst = 0.0;
  for (const auto& g : corpus) {
    const mpz_class k = brute_force_spanning_trees(g);
    const mpz_class det = k * static_cast<unsigned long>(g.vertex_count);
    const Spectrum s = hermitian_eigenvalues(laplacian(g));
    g_spectra.push_back(s);
    const double rel = std::abs(std::exp(log_det_prime(s)) - det.get_d()) / det.get_d();
    worst = std::max(worst, rel);
    ok = ok && rel <= 1e-9 && integer_det_prime(g) == det && spanning_tree_count(g) == k;
  }
  return {ok, fmt("%.0f graphs, max rel err %.2e", double(corpus.size()), worst)};
}

Verdict decomposition() {
  std::mt19937 rng(7);
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 5; ++i) {
    const auto g = zc_test::random_voltage_graph(rng, 6, 10);
    for (std::size_t n = 2; n <= 16; ++n) {
      const Spectrum twisted = cover_spectrum_twisted(g, n);
      const Spectrum direct = hermitian_eigenvalues(laplacian(build_cyclic_cover(g, n).graph()));
      g_spectra.push_back(twisted);
      if (twisted.size() != direct.size()) {
        ok = false;
        continue;
      }
      for (std::size_t j = 0; j < direct.size(); ++j)
        worst = std::max(worst, std::abs(twisted.values()[j] - direct.values()[j]));
    }
  }
  return {ok && worst <= 1e-9, fmt("5 graphs x N=2..16, max diff %.2e", worst)};
}

Verdict density_limit() {
  const std::pair<const char*, VoltageGraph> graphs[] = {
      {"L", zc_test::loop_graph()},
      {"D", zc_test::double_edge_graph()},
      {"pendant", zc_test::loop_with_pendant()}};
  bool ok = true;
  double worst_ratio = 0.0, worst_limit = 0.0;
  for (const auto& [name, g] : graphs) {
    const double limit = theta_integral_limit(g, 1e-8).value;
    if (std::string(name) != "pendant") {
      worst_limit = std::max(worst_limit, std::abs(limit));
      ok = ok && std::abs(limit) <= 1e-8;
    }
    for (std::size_t n : {64u, 128u, 256u, 512u, 1024u}) {
      const Spectrum s = cover_spectrum_twisted(g, n);
      g_spectra.push_back(s);
      const double f = cover_zeta(g, n).density;
      const double bound = 5 * (1 + std::log(double(n))) / n;
      worst_ratio = std::max(worst_ratio, std::abs(f - limit) / bound);
      ok = ok && std::abs(f - limit) <= bound;
    }
  }
  return {ok, fmt("max |f_N - L| / bound %.3f, max |L| (L, D) %.2e", worst_ratio, worst_limit)};
}

Verdict torus_oracle() {
  double worst = 0.0;
  for (Complex tau : {Complex(0, 1), Complex(0, 2), Complex(0.5, 1)}) {
    const ModularParameter m(tau);
    const auto z = torus_zeta_prime_mellin(m, 1e-8);
    worst = std::max(worst, std::abs(std::exp(-z.value) - torus_det_zeta(m)));
  }
  return {worst <= 1e-6, fmt("max |det_mellin - det_closed| %.2e", worst)};
}

Verdict torus_density() {
  const std::vector<std::size_t> ns{50, 100, 500};
  const auto s = torus_limit_series(1.0, ns);
  bool ok = std::abs(s.limit + kPi / 3) <= 5e-13;
  double worst = 0.0;
  for (const auto& e : s.entries) {
    const double ln = std::log(double(e.n)) / e.n;
    const double dev = std::abs(e.density + kPi / 3 - 2 * ln) / ln;
    worst = std::max(worst, dev);
    ok = ok && dev <= 0.2;
  }
  return {ok, fmt("limit %.15f, max deviation %.2e log N / N", s.limit, worst)};
}

Verdict small_angle_gap() {
  const auto g = zc_test::double_edge_graph();
  const auto a = gap_scan(g, 256);
  const auto b = gap_scan(g, 512);
  const double drift = std::abs(a.exponent - b.exponent);
  const bool ok = a.p == 1 && a.amplitude >= 0.23 && a.amplitude <= 0.27 && a.epsilon0 > 0 &&
                  a.epsilon0 <= 2 && drift <= 0.02;
  return {ok, fmt("p=%.0f a=%.5f eps0=%.4f", a.p, a.amplitude, a.epsilon0) +
                  fmt(", exponent drift %.2e", drift)};
}

Verdict long_time() {
  std::vector<double> ts;
  for (int i = 0; i < 50; ++i) ts.push_back(std::pow(100.0, i / 49.0));
  bool ok = true;
  double worst = -INFINITY;
  for (const auto& g : {zc_test::loop_graph(), zc_test::double_edge_graph()}) {
    const auto c = fit_long_time_constants(g, gap_scan(g, 256), 16, ts);
    ok = ok && c.c4 == std::tgamma(1.0 / (2 * c.p)) / (c.p * std::pow(c.lower, 1.0 / (2 * c.p)));
    for (std::size_t n : {16u, 64u})
      for (double t : ts) {
        const double slack = normalized_reduced_trace(g, n, t) - c.bound(t);
        worst = std::max(worst, slack);
        ok = ok && slack <= 0;
      }
  }
  return {ok, fmt("max(trace - bound) %.3e", worst)};
}

Verdict deck_orbit() {
  double worst = 0.0;
  for (const auto& g : {zc_test::loop_graph(), zc_test::double_edge_graph()})
    for (std::size_t n : {2u, 3u, 5u})
      for (double t : {0.5, 1.0, 2.0}) worst = std::max(worst, verify_deck_sum(g, n, t, 1e-10).residual);
  return {worst <= 1e-8, fmt("max residual %.2e", worst)};
}

Verdict bundle() {
  const auto g = zc_test::loop_graph();
  const double angles[] = {0.0, kPi / 2};
  const auto z = monodromy_zero_locus(g, Monodromy::diagonal(angles), 256);
  bool ok = z.angles.size() == 2;
  double worst = 0.0;
  if (ok) {
    const double expected[] = {0.0, 1.5 * kPi};
    for (int i = 0; i < 2; ++i) {
      const double d = std::abs(std::remainder(z.angles[i] - expected[i], kTwoPi));
      worst = std::max(worst, d);
      ok = ok && d <= 1e-8;
    }
  }
  bool raised = false;
  try {
    const double repeated[] = {0.7, 0.7};
    monodromy_zero_locus(g, Monodromy::diagonal(repeated), 256);
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::NonSimpleMonodromy;
  }
  return {ok && raised, fmt("%.0f zeros, max angle error %.2e, ", double(z.angles.size()), worst) +
                            (raised ? "repeated eigenvalue rejected" : "repeated eigenvalue NOT rejected")};
}

Verdict lattice() {
  const auto a = lattice2d_limit(1e-8);
  const double log_c4 = std::log(mckay_constant(4));
  const bool ok = std::abs(a.value - 1.166244) <= 1e-6 && a.value > 0 && a.value < log_c4 &&
                  std::abs(log_c4 - 1.216395) <= 1e-6 && mckay_constant(4) == 3.375;
  return {ok, fmt("alpha %.10f, log c4 %.6f", a.value, log_c4)};
}

Verdict counting() {
  bool ok = !g_spectra.empty();
  double worst = 0.0;
  for (const auto& s : g_spectra)
    for (double cap : {1.0, 4.0, 16.0}) {
      std::size_t count = 0;
      for (double v : s.values()) count += v <= cap;
      const double rhs = std::exp(1.0) * heat_trace(s, 1.0 / cap);
      worst = std::max(worst, count / rhs);
      ok = ok && count <= rhs;
    }
  return {ok, fmt("%.0f spectra, max count / bound %.3f", double(g_spectra.size()), worst)};
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Kirchhoff identity, exact", 5, kirchhoff},
      {2, "spectral decomposition over twist angles", 30, decomposition},
      {3, "graph-model density limit", 120, density_limit},
      {4, "flat torus closed form vs Mellin", 30, torus_oracle},
      {5, "torus density limit -pi/3", 5, torus_density},
      {6, "small-angle gap on D", 20, small_angle_gap},
      {7, "long-time trace bound", 30, long_time},
      {8, "deck-orbit identity", 30, deck_orbit},
      {9, "bundle zero locus", 20, bundle},
      {10, "square-lattice constant", 30, lattice},
      {11, "rough counting bound", 5, counting},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      v.pass = false;
      v.detail += fmt(" (over budget %.0f s)", c.budget_s);
    }
    failed += !v.pass;
    std::printf("%s  [%2d] %-42s %7.3f s  %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
