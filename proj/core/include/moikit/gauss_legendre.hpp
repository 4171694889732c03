#pragma once

#include <vector>

namespace moikit {

struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0, 1]; exact for polynomials of degree 2n-1.
QuadratureRule1D gauss_legendre_unit(int n);

}  // namespace moikit
