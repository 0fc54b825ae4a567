#include "conflab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "conflab/error.hpp"

namespace conflab::quad {

Rule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be positive");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Rule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw ValidationError("gauss_jacobi: n must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ValidationError("gauss_jacobi: exponents must exceed -1");
  }
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      diag(0) = (beta - alpha) / (ab + 2.0);
    } else {
      const double t = 2.0 * k + ab;
      diag(k) = (beta * beta - alpha * alpha) / (t * (t + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    double b2 = 0.0;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double t = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    off(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("gauss_jacobi: eigensolver failed");
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

Rule mapped(const Rule& rule, double a, double b) {
  Rule out;
  out.nodes.resize(rule.size());
  out.weights.resize(rule.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    out.nodes[i] = mid + half * rule.nodes[i];
    out.weights[i] = std::abs(half) * rule.weights[i];
  }
  return out;
}

namespace {

const Rule& cached_jacobi_left(int n, double exponent) {
  // Jacobi rule with the singular factor at x = -1.
  static std::mutex mutex;
  static std::map<std::pair<int, double>, Rule> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(n, exponent);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, gauss_jacobi(n, 0.0, exponent)).first;
  return it->second;
}

}  // namespace

Rule endpoint_singular(int n, double s, double len, double exponent) {
  const Rule& base = cached_jacobi_left(n, exponent);
  const double h = std::abs(len);
  const double dir = len >= 0.0 ? 1.0 : -1.0;
  const double scale = std::pow(0.5 * h, 1.0 + exponent);
  Rule out;
  out.nodes.resize(base.size());
  out.weights.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    out.nodes[i] = s + dir * 0.5 * h * (1.0 + base.nodes[i]);
    out.weights[i] = scale * base.weights[i];
  }
  return out;
}

}  // namespace conflab::quad
