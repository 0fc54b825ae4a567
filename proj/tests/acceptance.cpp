// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "conflab/disc_core.hpp"
#include "conflab/spectral.hpp"
#include "conflab/transfer.hpp"
#include "conflab/weights.hpp"

using namespace conflab;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, const std::string& title, bool ok, double seconds, const std::string& detail) {
  std::printf("[%s] %2d %-34s %7.2fs  %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), seconds, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void criterion(int id, const std::string& title, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, title, ok, s, detail);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// L^p(d sigma~) norm of a boundary function on phi(circle), with arc length
// taken from finite differences of the boundary curve itself.
double curve_norm(const ConformalMap& phi, const CVec& pulled, double p) {
  const std::size_t m = static_cast<std::size_t>(pulled.size());
  const double h = 1e-5;
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    const double speed = std::abs(phi.eval(std::polar(1.0, t + h)) - phi.eval(std::polar(1.0, t - h))) / (2.0 * h);
    s += std::pow(std::abs(pulled(static_cast<Eigen::Index>(k))), p) * speed;
  }
  return std::pow(s / static_cast<double>(m), 1.0 / p);
}

}  // namespace

int main() {
  std::printf("conflab acceptance suite\n");

  criterion(1, "disc cancellation", [](std::string& d) {
    DifferenceConfig c;
    c.band = 32;
    c.m = 4096;
    const auto op = difference_operator(ConformalMap::identity(), c);
    const double norm = singular_values(op.decomposition)(0);
    d = fmt("||B0P0 - P0S0||_2 = %.3g (limit 1e-8)", norm);
    return norm <= 1e-8;
  });

  criterion(2, "transfer isometry", [](std::string& d) {
    const ConformalMap phi = ConformalMap::moebius(cd(0.3, 0.2), std::polar(1.0, 0.7));
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    const std::size_t m = 1024;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      std::map<int, cd> coeffs;
      for (int n = -16; n <= 16; ++n) coeffs[n] = cd(g(rng), g(rng));
      const auto f = DomainFunction::boundary(phi, CircleFunction::from_coefficients(m, coeffs));
      const CircleFunction t = tau_half(f);
      std::vector<double> nu(m);
      for (std::size_t k = 0; k < m; ++k) nu[k] = 1.0 / std::abs(phi.derivative(std::polar(1.0, t.theta(k))));
      const double f2 = curve_norm(phi, f.boundary_values().samples(), 2.0);
      const double f4 = curve_norm(phi, f.boundary_values().samples(), 4.0);
      worst = std::max(worst, std::abs(weighted_norm(t, 2.0) - f2) / f2);
      worst = std::max(worst, std::abs(weighted_norm(t, 4.0, nu) - f4) / f4);
    }
    d = fmt("max relative defect %.3g over 20 functions, L^2 and L^4 (limit 1e-6)", worst);
    return worst <= 1e-6;
  });

  criterion(3, "power-weight characteristic", [](std::string& d) {
    double lo = 1e300, hi = 0.0;
    int pairs = 0;
    bool ok = true;
    for (double a : {-0.5, -0.25, 0.25, 0.5}) {
      for (double p : {1.5, 2.0, 3.0, 4.0}) {
        if (!(a > -1.0 && a < p - 1.0)) continue;
        const double ratio = ap_characteristic(WeightSpec::power(WeightDomain::circle, 0.0, a), p).value /
                             centered_power_product(a, p);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        ok = ok && ratio >= 0.95 && ratio <= 4.0;
        ++pairs;
      }
    }
    d = std::to_string(pairs) + " pairs, ratio to the centered product in " + fmt("[%.4f, %.4f]", lo, hi);
    return ok;
  });

  criterion(4, "example domain blow-up", [](std::string& d) {
    const std::vector<double> ps = {5.0, 5.5, 5.9, 5.99};
    double prev_comb = 0.0, prev_lower = 0.0;
    bool increasing = true, within = true, nondecreasing = true;
    std::string vals;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double p = ps[i];
      const auto e = example_domain_characteristic(p);
      const double ratio = e.combined / e.reference;
      within = within && ratio >= 0.25 && ratio <= 4.0;
      increasing = increasing && e.combined > prev_comb;
      prev_comb = e.combined;

      const WeightSpec nu = example_domain_pullback_weight(p);
      BatteryParams bp;
      bp.seed = 1 + i;
      const double lower = norm_estimate_lp(szego_sampled(4096, &nu), p, bp, &nu).lower;
      nondecreasing = nondecreasing && lower >= prev_lower;
      prev_lower = lower;
      vals += fmt(" p=%g: %.4g", p, e.combined) + fmt("/%.4g", e.reference) + fmt(" lower %.3g;", lower);
    }
    d = "combined/reference, witness" + vals;
    return increasing && within && nondecreasing;
  });

  criterion(5, "corollary ranges", [](std::string& d) {
    const Range a = admissible_range(DomainClass::lipschitz(1.0));
    const Range b = admissible_range(DomainClass::local_graph());
    d = fmt("lipschitz(1) = (%.17g, ", a.lo) + fmt("%.17g), ", a.hi) + fmt("local graph = (%.17g, ", b.lo) +
        fmt("%.17g)", b.hi);
    return a.lo == 6.0 / 5.0 && a.hi == 6.0 && b.lo == 4.0 / 3.0 && b.hi == 4.0;
  });

  criterion(6, "kernel smoothness", [](std::string& d) {
    const auto r = szego_smoothness_check(10000, 6);
    d = std::to_string(r.triples) + " triples, " + std::to_string(r.violations) + " violations, max ratio " +
        fmt("%.4f", r.max_ratio);
    return r.triples == 10000 && r.violations == 0;
  });

  criterion(7, "integrated-kernel identity", [](std::string& d) {
    double worst = 0.0;
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
      for (double delta : {0.1, 0.5}) {
        const double exact = 2.0 / alpha * std::pow(delta, alpha);
        worst = std::max(worst, std::abs(integrated_kernel(alpha, delta) - exact) / exact);
      }
    }
    d = fmt("max relative error %.3g (limit 0.01)", worst);
    return worst <= 0.01;
  });

  criterion(8, "ball separation", [](std::string& d) {
    const std::size_t m = 4096;
    int cases = 0, violations = 0;
    double margin = 1e300;
    for (double r : {0.05, 0.1, 0.2}) {
      for (double center : {0.0, 1.3, -2.4}) {
        const auto indicator = CircleFunction::from_function(
            m, [&](double t) { return cd(std::abs(wrap_angle(t - center)) <= r ? 1.0 : 0.0); });
        const auto bump = CircleFunction::from_function(m, [&](double t) {
          const double x = wrap_angle(t - center) / r;
          return cd(std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0);
        });
        for (const auto* f : {&indicator, &bump}) {
          const auto b = ball_separation_check(r, *f, center);
          ++cases;
          if (!b.holds()) ++violations;
          margin = std::min(margin, b.min_value / b.threshold);
        }
      }
    }
    d = std::to_string(cases) + " cases, " + std::to_string(violations) + " violations, min |S0 f| / threshold " +
        fmt("%.3g", margin);
    return violations == 0;
  });

  criterion(9, "factorization inequality", [](std::string& d) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    FamilyParams fp;
    fp.depth = 10;
    fp.lattice = 64;
    fp.window = 2.0;
    int violations = 0;
    double worst = 0.0;
    for (int draw = 0; draw < 50; ++draw) {
      const double p0 = 1.2 + 0.6 * u(rng);
      const double p0c = p0 / (p0 - 1.0);
      const double p = p0 + (0.1 + 0.8 * u(rng)) * (p0c - p0);
      const double s = p / p0;
      const double r = p0c / p;
      const double q = r / (r - 1.0);
      const double a = -0.8 / q + 0.8 * (1.0 / q + s - 1.0) * u(rng);
      const double b = 0.8 / r * (2.0 * u(rng) - 1.0);
      const auto w = WeightSpec::power(WeightDomain::line, u(rng) - 0.5, a);
      const auto nu = WeightSpec::power(WeightDomain::line, u(rng) - 0.5, b);
      const auto res = factorization_bound(w, nu, p, p0, fp);
      if (res.lhs > res.rhs * (1.0 + 1e-9)) ++violations;
      worst = std::max(worst, res.lhs / res.rhs);
    }
    d = "50 draws, " + std::to_string(violations) + " violations, max lhs/rhs " + fmt("%.4f", worst);
    return violations == 0;
  });

  criterion(10, "compactness diagnostic", [](std::string& d) {
    const ConformalMap phi = named_map("holder");
    auto spectrum = [&](int n) {
      DifferenceConfig c;
      c.band = n;
      c.angular = 4 * n;
      c.radial = 2 * n;
      c.m = 4096;
      c.direct = false;
      return singular_values(difference_operator(phi, c).decomposition);
    };
    const Eigen::VectorXd s64 = spectrum(64);
    const Eigen::VectorXd s128 = spectrum(128);
    const double ratio = s64(32) / s64(0);
    double drift = 0.0;
    std::string lead;
    for (int k = 0; k < 8; ++k) {
      drift = std::max(drift, std::abs(s128(k) - s64(k)) / s64(k));
      lead += fmt(" %.3g->%.3g", s64(k), s128(k));
    }
    double prev = 1e300;
    bool decreasing = true;
    std::string osc;
    for (double rr : {0.1, 0.05, 0.025}) {
      const double v = oscillation_functional(phi, rr);
      decreasing = decreasing && v < prev;
      prev = v;
      osc += fmt(" %.3g", v);
    }
    d = fmt("s_{N/2}/s_1 = %.3g; max leading-8 drift %.1f%%;", ratio, 100.0 * drift) + " leading" + lead +
        "; oscillation" + osc;
    const bool ok_ratio = ratio < 0.1;
    const bool ok_stable = drift <= 0.05;
    if (!ok_ratio) d += " [ratio failed]";
    if (!ok_stable) d += " [stability failed]";
    if (!decreasing) d += " [oscillation failed]";
    return ok_ratio && ok_stable && decreasing;
  });

  criterion(11, "spot values and Minkowski bound", [](std::string& d) {
    const auto grid = make_grid(32, 128);
    const auto conj = DiscFunction::from_function(grid, [](cd w) { return std::conj(w); });
    const auto sq = DiscFunction::from_function(grid, [](cd w) { return cd(std::norm(w)); });
    const double e1 = bergman_project(conj, 31).values().cwiseAbs().maxCoeff();
    const double e2 = (bergman_project(sq, 31).values().array() - 0.5).abs().maxCoeff();
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::map<int, cd> c;
      for (int n = -24; n <= 24; ++n) c[n] = cd(g(rng), g(rng)) / (1.0 + std::abs(n));
      const auto f = CircleFunction::from_coefficients(512, c);
      for (double p : {1.0, 2.0, 4.0}) {
        const double nf = weighted_norm(f, p);
        for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99, 0.999}) {
          worst = std::max(worst, weighted_norm(poisson_ring(f, r), p) / nf);
        }
      }
    }
    d = fmt("|B0(conj w)| %.2g, |B0(|w|^2) - 1/2| %.2g, ", e1, e2) + fmt("sup_r ratio %.9f", worst);
    return e1 <= 1e-6 && e2 <= 1e-6 && worst <= 1.0 + 1e-6;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
