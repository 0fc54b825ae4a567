#pragma once

#include <vector>

namespace conflab::quad {

/// Nodes and weights of a one-dimensional rule.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on the
/// three-term recurrence).
Rule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight
/// (1 - x)^alpha (1 + x)^beta, alpha, beta > -1 (Golub-Welsch).
Rule gauss_jacobi(int n, double alpha, double beta);

/// Affine image of a [-1, 1] rule on [a, b].
Rule mapped(const Rule& rule, double a, double b);

/// Rule on [s, s + len] (len may be negative, meaning [s + len, s]) that
/// integrates |x - s|^exponent * g(x) dx as sum w_i g(x_i).
/// Cached per (n, exponent) internally.
Rule endpoint_singular(int n, double s, double len, double exponent);

}  // namespace conflab::quad
