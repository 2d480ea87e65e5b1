#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pvtsi {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights by Newton iteration on P_n.
inline const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: n out of range");
  static std::vector<GaussRule> cache(65);
  GaussRule& rule = cache[static_cast<size_t>(n)];
  if (!rule.nodes.empty()) return rule;

  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<size_t>(i)] = -x;
    rule.weights[static_cast<size_t>(i)] = w;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return rule;
}

/// Fixed-order Gauss-Legendre panel on [a, b].
template <class F>
double gauss_panel(const F& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace pvtsi
