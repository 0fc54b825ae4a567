#include <cmath>
#include <map>
#include <limits>
#include <random>

#include "conflab/checks.hpp"
#include "conflab/output.hpp"
#include "conflab/spectral.hpp"
#include "conflab/transfer.hpp"

namespace conflab {

namespace {

CheckResult at_most(std::string name, double value, double limit, std::string detail = {}) {
  return {std::move(name), value <= limit, value, limit, std::move(detail)};
}

double idempotency_defect(const OperatorMatrix& q) { return norm_upper_p2(compose(q, q) - q); }

void projection_checks(std::vector<CheckResult>& out, const OperatorMatrix& q, const std::string& label) {
  out.push_back(at_most(label + " idempotent", idempotency_defect(q), 1e-8));
  out.push_back(at_most(label + " norm one", std::abs(norm_upper_p2(q) - 1.0), 1e-8));
}

CVec random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cd(g(rng), g(rng));
  return v;
}

CircleFunction bump(std::size_t m, double center, double r) {
  return CircleFunction::from_function(m, [&](double t) {
    const double d = Arc(center, r).offset(t) / r;
    return std::abs(d) < 1.0 ? cd(std::exp(-1.0 / (1.0 - d * d))) : cd(0.0);
  });
}

CircleFunction indicator(std::size_t m, double center, double r) {
  const Arc arc(center, r);
  return CircleFunction::from_function(m, [&](double t) { return arc.contains(t) ? cd(1.0) : cd(0.0); });
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(output::stage_seed(seed, 0));
  const ConformalMap moebius = named_map("moebius");
  const GridPtr small = make_grid(9, 18);

  projection_checks(out, discretize_szego_nodal(64), "S0");
  projection_checks(out, discretize_bergman(small, 8), "B0");
  projection_checks(out, discretize_szego_domain(moebius, 64), "S[moebius]");
  projection_checks(out, discretize_bergman_domain(moebius, small, 8), "B[moebius]");

  {
    const OperatorMatrix p0 = discretize_poisson(8, small);
    const CVec f = random_vector(p0.src.size(), rng);
    const CVec g = random_vector(p0.dst.size(), rng);
    // Eigen's dot conjugates its left operand.
    const cd lhs = p0.dst.gram.cast<cd>().cwiseProduct(g).dot(p0.apply(f));
    const cd rhs = p0.src.gram.cast<cd>().cwiseProduct(p0.adjoint_apply(g)).dot(f);
    out.push_back(at_most("P0 adjoint pairing", std::abs(lhs - rhs) / std::abs(lhs), 1e-10));
  }

  for (int n : {8, 16}) {
    DifferenceConfig c;
    c.band = n;
    c.m = 512;
    c.angular = 4 * n;
    c.radial = 2 * n;
    const DifferenceOperator d = difference_operator(named_map("identity"), c);
    out.push_back(at_most("identity cancellation N=" + std::to_string(n), norm_upper_p2(d.decomposition), 1e-8));
  }
  for (const char* name : {"moebius", "holder"}) {
    DifferenceConfig c;
    c.band = 8;
    c.m = 1024;
    c.angular = 64;
    c.radial = 32;
    const DifferenceOperator d = difference_operator(named_map(name), c);
    out.push_back(at_most(std::string("two-path agreement ") + name, d.two_path_gap, 1e-8));
  }

  {
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      std::map<int, cd> coeffs;
      for (int k = -8; k <= 8; ++k) coeffs[k] = cd(g(rng), g(rng));
      const CircleFunction f = CircleFunction::from_coefficients(256, coeffs);
      const auto df = DomainFunction::boundary(moebius, f);
      const double a = weighted_norm(tau_half(df), 2.0);
      const double b = domain_norm(df, 2.0);
      worst = std::max(worst, std::abs(a - b) / b);
    }
    out.push_back(at_most("tau_half isometry", worst, 1e-10));
  }

  {
    std::size_t violations = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (double r : {0.05, 0.1, 0.2}) {
      for (int shape = 0; shape < 2; ++shape) {
        const CircleFunction f = shape == 0 ? indicator(4096, 1.0, r) : bump(4096, 1.0, r);
        const BallSeparation b = ball_separation_check(r, f, 1.0);
        if (!b.holds()) ++violations;
        margin = std::min(margin, b.min_value / b.threshold);
      }
    }
    out.push_back({"ball separation", violations == 0, static_cast<double>(violations), 0.0,
                   "min ratio " + output::number(margin)});
  }

  {
    const SmoothnessReport s = szego_smoothness_check(10000, output::stage_seed(seed, 1));
    out.push_back({"Szego kernel smoothness", s.violations == 0, s.max_ratio, 1.5,
                   std::to_string(s.triples) + " triples, " + std::to_string(s.violations) + " violations"});
  }

  {
    BatteryParams bp;
    bp.seed = output::stage_seed(seed, 2);
    const NormEstimate e = norm_estimate_lp(discretize("S0", 16), 2.0, bp);
    out.push_back(at_most("witness below p=2 upper", e.lower, e.upper * (1.0 + 1e-12), e.witness_id));
  }

  {
    const Range lip = admissible_range(DomainClass::lipschitz(1.0));
    const Range graph = admissible_range(DomainClass::local_graph());
    const double err = std::max({std::abs(lip.lo - 1.2), std::abs(lip.hi - 6.0), std::abs(graph.lo - 4.0 / 3.0),
                                 std::abs(graph.hi - 4.0)});
    out.push_back(at_most("corollary ranges", err, 1e-15));
  }

  {
    const GridPtr grid = make_grid(16, 64);
    const DiscFunction conj = DiscFunction::from_function(grid, [](cd w) { return std::conj(w); });
    const DiscFunction sq = DiscFunction::from_function(grid, [](cd w) { return cd(std::norm(w)); });
    const double e1 = bergman_project(conj, 15).values().cwiseAbs().maxCoeff();
    const double e2 = (bergman_project(sq, 15).values().array() - 0.5).abs().maxCoeff();
    out.push_back(at_most("B0 spot values", std::max(e1, e2), 1e-6));
  }

  return out;
}

}  // namespace conflab
