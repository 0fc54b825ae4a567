#include <cmath>
#include <numbers>
#include <random>

#include "conflab/quadrature.hpp"
#include "conflab/spectral.hpp"

namespace conflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

constexpr int kShells = 80;
constexpr int kShellNodes = 16;
constexpr int kLocalRadial = 8;
constexpr int kLocalAngular = 16;

std::vector<cd> default_z_samples() {
  return {0.0,
          {0.5, 0.0},
          {0.0, 0.5},
          {-0.7, 0.0},
          std::polar(0.8, kPi / 4),
          {0.9, 0.0},
          std::polar(0.9, -kPi / 3),
          {0.0, 0.9}};
}

// Quadrature nodes of D_r(w) cap D around one center, normalized so the
// weights sum to one.
struct LocalRule {
  std::vector<cd> points;
  std::vector<double> weights;
};

LocalRule local_rule(cd center, double r, const quad::Rule& radial) {
  LocalRule out;
  double total = 0.0;
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double rho = r * radial.nodes[i];
    for (int a = 0; a < kLocalAngular; ++a) {
      const cd pt = center + std::polar(rho, kTwoPi * (a + 0.5) / kLocalAngular);
      if (std::abs(pt) >= 1.0) continue;
      const double w = radial.weights[i] * rho;
      out.points.push_back(pt);
      out.weights.push_back(w);
      total += w;
    }
  }
  if (total <= 0.0) throw NumericalError("oscillation: empty local quadrature");
  for (double& w : out.weights) w /= total;
  return out;
}

cd commutator_kernel(cd dphi_z, cd z, cd dphi_w, cd w) {
  const cd d = 1.0 - std::conj(w) * z;
  return (dphi_z - dphi_w) / (d * d);
}

void require_holder(const ConformalMap& map) {
  if (map.domain() != ModelDomain::disc) throw ValidationError("kernel checks: map must be defined on the disc");
  if (!map.holder_exponent()) throw ValidationError("kernel checks: map carries no Holder exponent for phi'");
}

}  // namespace

SmoothnessReport szego_smoothness_check(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SmoothnessReport rep;
  for (std::size_t i = 0; i < count; ++i) {
    // A quarter of the samples sit on the circle, the rest fill the disc.
    const double rad = i % 4 == 0 ? 1.0 : std::sqrt(unif(rng));
    const cd z = std::polar(rad, kTwoPi * unif(rng));
    const cd w = std::polar(1.0, kTwoPi * unif(rng));
    const double dist = std::abs(w - z);
    if (dist == 0.0) continue;
    const double t = unif(rng) * dist / 3.0;
    const double delta = 2.0 * std::asin(0.5 * t) * (unif(rng) < 0.5 ? -1.0 : 1.0);
    const cd w2 = w * std::polar(1.0, delta);
    const double sep = std::abs(w - w2);
    if (sep == 0.0 || std::abs(w2 - z) == 0.0) continue;
    const double ratio = std::abs(szego_kernel(z, w) - szego_kernel(z, w2)) * dist * dist / sep;
    ++rep.triples;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.5 * (1.0 + 1e-12)) ++rep.violations;
  }
  return rep;
}

double integrated_kernel(double alpha, double delta, cd /*z*/) {
  if (!(alpha > 0.0) || !(delta > 0.0)) throw ValidationError("integrated kernel: alpha and delta must be positive");
  const quad::Rule gl = quad::gauss_legendre(kShellNodes);
  double acc = 0.0;
  // Polar coordinates about z, so the planar integral does not depend on z.
  // Dyadic shells delta 2^{-j-1} < |w - z| < delta 2^{-j}; the remaining
  // inner disc contributes (2/alpha) (delta 2^{-80})^alpha.
  for (int j = 0; j < kShells; ++j) {
    const quad::Rule shell = quad::mapped(gl, delta * std::ldexp(1.0, -j - 1), delta * std::ldexp(1.0, -j));
    for (std::size_t i = 0; i < shell.size(); ++i) {
      const double rho = shell.nodes[i];
      acc += shell.weights[i] * std::pow(rho, alpha - 1.0) * kTwoPi;
    }
  }
  return acc / kPi;
}

double oscillation_functional(const ConformalMap& map, double r, const KernelCheckParams& params) {
  require_holder(map);
  if (!(r > 0.0)) throw ValidationError("oscillation: r must be positive");
  const GridPtr grid = make_grid(params.radial, params.angular);
  const quad::Rule radial = quad::mapped(quad::gauss_legendre(kLocalRadial), 0.0, 1.0);

  const std::size_t nodes = grid->size();
  std::vector<cd> node_dphi(nodes);
  std::vector<LocalRule> rules(nodes);
  std::vector<std::vector<cd>> local_dphi(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    node_dphi[i] = map.derivative(grid->node(i));
    rules[i] = local_rule(grid->node(i), r, radial);
    local_dphi[i].reserve(rules[i].points.size());
    for (cd pt : rules[i].points) local_dphi[i].push_back(map.derivative(pt));
  }

  const std::vector<cd> zs = params.z_samples.empty() ? default_z_samples() : params.z_samples;
  double sup = 0.0;
  for (cd z : zs) {
    if (!(std::abs(z) < 1.0)) throw ValidationError("oscillation: z samples must lie in the open disc");
    const cd dz = map.derivative(z);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      const LocalRule& lr = rules[i];
      cd avg = 0.0;
      for (std::size_t q = 0; q < lr.points.size(); ++q) {
        avg += lr.weights[q] * commutator_kernel(dz, z, local_dphi[i][q], lr.points[q]);
      }
      acc += grid->weight(i) * std::abs(commutator_kernel(dz, z, node_dphi[i], grid->node(i)) - avg);
    }
    sup = std::max(sup, acc);
  }
  return sup;
}

KernelReport commutator_kernel_checks(const ConformalMap& map, double alpha, double delta,
                                      const std::vector<double>& radii, const KernelCheckParams& params) {
  require_holder(map);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("kernel checks: alpha must lie in (0, 1]");
  KernelReport rep;
  rep.identity_quadrature = integrated_kernel(alpha, delta);
  rep.identity_exact = 2.0 / alpha * std::pow(delta, alpha);

  const GridPtr grid = make_grid(params.radial, params.angular);
  std::vector<cd> dphi(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) dphi[i] = map.derivative(grid->node(i));
  const std::vector<cd> zs = params.z_samples.empty() ? default_z_samples() : params.z_samples;
  for (cd z : zs) {
    const cd dz = map.derivative(z);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      acc += grid->weight(i) * std::abs(commutator_kernel(dz, z, dphi[i], grid->node(i)));
    }
    rep.kernel_l1_sup = std::max(rep.kernel_l1_sup, acc);
  }

  for (double r : radii) {
    rep.radii.push_back(r);
    rep.oscillation.push_back(oscillation_functional(map, r, params));
  }
  return rep;
}

}  // namespace conflab
