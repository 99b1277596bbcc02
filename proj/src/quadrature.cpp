#include "mdrk/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mdrk {

namespace {

// Newton iteration on P_n with the Chebyshev-based initial guess.
QuadratureRule compute_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // P_n(x) and P_n'(x) by the three-term recurrence
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - k] = x;
    rule.weights[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

}  // namespace mdrk
