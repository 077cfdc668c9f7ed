#pragma once
// Gauss-Hermite nodes and weights for integrals of the form
// int_-inf^inf e^{-x^2} f(x) dx ~ sum_i w_i f(x_i).  Newton iteration on the
// orthonormal Hermite recurrence; n nodes integrate polynomials of degree
// <= 2n-1 exactly.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qopa {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("need at least one quadrature node");
  QuadratureRule q;
  q.nodes.resize(static_cast<size_t>(n));
  q.weights.resize(static_cast<size_t>(n));
  const double pim4 = std::pow(M_PI, -0.25);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // standard initial guesses, largest root first
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * q.nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * q.nodes[1];
    else
      z = 2.0 * z - q.nodes[static_cast<size_t>(i - 2)];

    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;  // derivative of the orthonormal H_n
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    q.nodes[static_cast<size_t>(i)] = z;
    q.nodes[static_cast<size_t>(n - 1 - i)] = -z;
    q.weights[static_cast<size_t>(i)] = 2.0 / (pp * pp);
    q.weights[static_cast<size_t>(n - 1 - i)] = q.weights[static_cast<size_t>(i)];
  }
  if (n % 2 == 1) q.nodes[static_cast<size_t>(half - 1)] = 0.0;
  return q;
}

}  // namespace qopa
