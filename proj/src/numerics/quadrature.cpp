#include <cmath>
#include <limits>
#include <tuple>

#include "zeta_cover/error.hpp"
#include "zeta_cover/numerics.hpp"

namespace zeta_cover {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "gauss_legendre_rule: n must be >= 1");
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {std::move(x), std::move(w)};
}

namespace {

constexpr int kRuleOrder = 20;
constexpr int kMaxGradingLevels = 60;

struct Rule {
  std::vector<double> nodes, weights;
  Rule() { std::tie(nodes, weights) = gauss_legendre_rule(kRuleOrder); }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

struct PanelSum {
  double value;
  double abs_value;
};

PanelSum apply_rule(const std::function<double(double)>& f, double a, double b) {
  const auto& r = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0, sa = 0.0;
  for (int i = 0; i < kRuleOrder; ++i) {
    const double v = r.weights[i] * f(mid + half * r.nodes[i]);
    s += v;
    sa += std::abs(v);
  }
  return {s * half, sa * std::abs(half)};
}

struct Accumulator {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t budget = 0;
};

void integrate_regular(const std::function<double(double)>& f, double a, double b, double tol,
                       Accumulator& acc) {
  struct Pending {
    double a, b, whole, tol;
  };
  std::vector<Pending> stack;
  stack.push_back({a, b, apply_rule(f, a, b).value, tol});
  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const PanelSum left = apply_rule(f, p.a, m);
    const PanelSum right = apply_rule(f, m, p.b);
    const double refined = left.value + right.value;
    const double diff = std::abs(refined - p.whole);
    const double noise_floor = 64.0 * eps * (left.abs_value + right.abs_value);
    const bool tiny = (p.b - p.a) <= 1e-14 * std::max(1.0, std::abs(p.a));
    if (diff <= std::max(p.tol, noise_floor) || tiny) {
      acc.value += refined;
      acc.error += diff;
      ++acc.panels;
      continue;
    }
    if (acc.panels + stack.size() + 2 > acc.budget)
      throw Error(ErrorKind::ToleranceNotMet, "integrate_adaptive: panel budget exhausted");
    stack.push_back({m, p.b, right.value, 0.5 * p.tol});
    stack.push_back({p.a, m, left.value, 0.5 * p.tol});
  }
}

void integrate_left_singular(const std::function<double(double)>& f, double a, double b,
                             double tol, Accumulator& acc) {
  const double width = b - a;
  double prev_level = 0.0;
  for (int j = 0; j < kMaxGradingLevels; ++j) {
    const double hi = a + std::ldexp(width, -j);
    const double lo = a + std::ldexp(width, -(j + 1));
    const double level_tol = tol / (4.0 * (j + 1.0) * (j + 2.0));
    const double before = acc.value;
    integrate_regular(f, lo, hi, level_tol, acc);
    const double level = acc.value - before;
    double inner = apply_rule(f, a, lo).value;
    if (!std::isfinite(inner)) {
      // nodes fell inside the rounding shadow of the endpoint; extrapolate the level sums
      const double ratio = prev_level != 0.0 ? level / prev_level : 1.0;
      inner = ratio > 0.0 && ratio < 1.0 ? level * ratio / (1.0 - ratio) : inner;
    }
    prev_level = level;
    if (j >= 2 && std::abs(inner) < 0.25 * tol) {
      acc.value += inner;
      acc.error += std::abs(inner);
      ++acc.panels;
      return;
    }
    if (!(lo > a)) break;
  }
  throw Error(ErrorKind::ToleranceNotMet,
              "integrate_adaptive: endpoint contribution did not fall below tol/4 within 60 levels");
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, SingularEndpoints ends, std::size_t max_panels) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "integrate_adaptive: tol must be > 0");
  if (a == b) return {};
  if (b < a) {
    auto r = integrate_adaptive(f, b, a, tol, {ends.right, ends.left}, max_panels);
    r.value = -r.value;
    return r;
  }

  Accumulator acc;
  acc.budget = max_panels;
  if (ends.left && ends.right) {
    const double m = 0.5 * (a + b);
    integrate_left_singular(f, a, m, 0.5 * tol, acc);
    const std::function<double(double)> reflected = [&](double x) { return f(a + b - x); };
    integrate_left_singular(reflected, a, m, 0.5 * tol, acc);
  } else if (ends.left) {
    integrate_left_singular(f, a, b, tol, acc);
  } else if (ends.right) {
    const std::function<double(double)> reflected = [&](double x) { return f(a + b - x); };
    integrate_left_singular(reflected, a, b, tol, acc);
  } else {
    integrate_regular(f, a, b, tol, acc);
  }
  return {acc.value, acc.error, acc.panels};
}

}  // namespace zeta_cover
