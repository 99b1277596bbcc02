#pragma once

#include <vector>

namespace mdrk {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
const QuadratureRule& gauss_legendre(int n);

}  // namespace mdrk
