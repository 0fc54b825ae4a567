#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflab/quadrature.hpp"
#include "conflab/weights.hpp"

using namespace conflab;

namespace {

constexpr double kPi = std::numbers::pi;

// Plain composite Gauss-Legendre on a substituted variable x = s^k, which
// removes a power singularity at 0 for moderate exponents.
double line_power_average(double a, double e, double radius) {
  const auto gl = quad::mapped(quad::gauss_legendre(40), 0.0, 1.0);
  const double k = 8.0;
  double s = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double u = gl.nodes[i];
    const double x = radius * std::pow(u, k);
    s += gl.weights[i] * std::pow(x, a * e) * radius * k * std::pow(u, k - 1.0);
  }
  return s / radius;
}

FamilyParams small_family() {
  FamilyParams fp;
  fp.depth = 8;
  fp.lattice = 32;
  return fp;
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("power weights evaluate pointwise") {
  const auto w = WeightSpec::power(WeightDomain::circle, 0.0, 0.5, 2.0);
  CHECK(w(kPi) == doctest::Approx(2.0 * std::sqrt(2.0)));
  const auto l = WeightSpec::power(WeightDomain::line, 1.0, -0.5);
  CHECK(l(5.0) == doctest::Approx(0.5));
  CHECK(w.pow(2.0)(kPi) == doctest::Approx(8.0));
  CHECK(w.singularities().size() == 1);
}

TEST_CASE("centered A_p product against a substitution quadrature") {
  for (auto [a, p] : {std::pair{0.5, 2.0}, std::pair{-0.4, 2.0}, std::pair{1.2, 3.0}, std::pair{-0.2, 1.5}}) {
    const auto w = WeightSpec::power(WeightDomain::line, 0.0, a);
    const double oracle = line_power_average(a, 1.0, 1.0) * std::pow(line_power_average(a, -1.0 / (p - 1.0), 1.0), p - 1.0);
    CHECK(ap_product(w, p, {0.0, 1.0}) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(centered_power_product(a, p) == doctest::Approx(oracle).epsilon(1e-10));
  }
  CHECK_THROWS_AS(centered_power_product(1.0, 2.0), ValidationError);
  CHECK_THROWS_AS(centered_power_product(-1.0, 2.0), ValidationError);
}

TEST_CASE("A_p characteristic of a power weight is attained at the singularity") {
  const auto w = WeightSpec::power(WeightDomain::circle, 0.3, 0.5);
  const auto rep = ap_characteristic(w, 2.0, small_family());
  CHECK(rep.value >= 0.95 * centered_power_product(0.5, 2.0));
  CHECK(rep.value <= 4.0 * centered_power_product(0.5, 2.0));
  CHECK(rep.family_size > 0);
}

TEST_CASE("non-integrable weights are rejected") {
  CHECK_THROWS_AS(WeightSpec::power(WeightDomain::circle, 0.0, -1.0), ValidationError);
  const auto w = WeightSpec::power(WeightDomain::circle, 0.0, -0.5);
  CHECK_THROWS_AS(weight_average(w, 2.0, {0.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(ap_characteristic(WeightSpec::power(WeightDomain::circle, 0.0, 1.5), 2.0, small_family()), ValidationError);
}

TEST_CASE("constant weight has characteristic exactly one") {
  const auto w = WeightSpec::power(WeightDomain::circle, 0.0, 0.0, 3.0);
  CHECK(ap_characteristic(w, 2.0, small_family()).value == 1.0);
}

TEST_CASE("admissible ranges") {
  const Range lg = admissible_range(DomainClass::local_graph());
  CHECK(lg.lo == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(lg.hi == 4.0);
  const Range l1 = admissible_range(DomainClass::lipschitz(1.0));
  CHECK(l1.lo == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(l1.hi == doctest::Approx(6.0).epsilon(1e-15));
  const Range big = admissible_range(DomainClass::lipschitz(1e6));
  CHECK(big.hi == doctest::Approx(4.0).epsilon(1e-5));
  CHECK_THROWS_AS(admissible_range(DomainClass::lipschitz(0.0)), ValidationError);
}

TEST_CASE("formula evaluators") {
  CHECK(c_p(3.0) == 3.0);
  CHECK(c_p(1.25) == doctest::Approx(4.0));
  CHECK(local_graph_combine(2.0, 3.0, 2.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(local_graph_combine(0.5, 3.0, 2.0), ValidationError);
  const NormBounds b = bergman_norm_bounds(2.0, 1.0);
  CHECK(b.lower <= b.upper);
}

TEST_CASE("factorization bound dominates the product characteristic") {
  const auto u = WeightSpec::power(WeightDomain::line, 0.0, 0.3);
  const auto nu = WeightSpec::power(WeightDomain::line, 0.5, -0.2);
  FamilyParams fp = small_family();
  fp.window = 2.0;
  const auto r = factorization_bound(u, nu, 2.0, 1.5, fp);
  CHECK(r.lhs <= r.rhs * (1.0 + 1e-9));
  CHECK_THROWS_AS(factorization_bound(u, nu, 4.0, 1.5, fp), ValidationError);
}

TEST_CASE("example domain prevertex solves the side-length condition") {
  // Reference value from an independent high-precision solve.
  CHECK(example_domain_prevertex() == doctest::Approx(0.98629891863769205351).epsilon(1e-12));
}

TEST_CASE("example pullback weight has the expected singularities") {
  const auto w = example_domain_pullback_weight(3.0);
  const auto s = w.singularities();
  CHECK(s.size() == 8);
  int reflex = 0;
  for (const auto& x : s) {
    if (std::abs(std::abs(x.location) - kPi / 2) < 1e-12) {
      CHECK(x.exponent == doctest::Approx(-0.25));
      ++reflex;
    } else {
      CHECK(x.exponent == doctest::Approx(0.25));
    }
  }
  CHECK(reflex == 2);
}

TEST_CASE("example characteristic reference formula") {
  FamilyParams fp;
  fp.depth = 10;
  fp.lattice = 64;
  const auto e = example_domain_characteristic(3.0, fp);
  CHECK(e.reference == doctest::Approx((4.0 / 3.0) * std::pow(8.0 / 9.0, 2.0)));
  CHECK(e.combined >= e.n1);
  CHECK(e.combined >= e.n2);
  CHECK_THROWS_AS(example_domain_characteristic(6.0, fp), ValidationError);
}

}  // TEST_SUITE
