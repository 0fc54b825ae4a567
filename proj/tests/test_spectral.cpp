#include <doctest.h>

#include <cmath>
#include <random>

#include "conflab/spectral.hpp"
#include "conflab/transfer.hpp"

using namespace conflab;

TEST_SUITE("spectral") {

TEST_CASE("S0 on frequencies is diagonal") {
  const OperatorMatrix s = discretize_szego(4);
  REQUIRE(s.entries.rows() == 9);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) CHECK(s.entries(i, j) == cd((i == j && i >= 4) ? 1.0 : 0.0));
  }
  const auto sv = singular_values(s);
  CHECK(sv(4) == doctest::Approx(1.0));
  CHECK(sv(5) < 1e-15);
}

TEST_CASE("shift operator is unitary on its range") {
  const OperatorMatrix t = discretize("shift", 4);
  const auto sv = singular_values(t);
  CHECK(sv(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sv(sv.size() - 1) <= 1.0 + 1e-12);
}

TEST_CASE("identity singular values are ones") {
  const auto sv = singular_values(discretize_identity(7));
  CHECK((sv.array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("Poisson columns match the function-level extension") {
  const auto grid = make_grid(8, 32);
  const OperatorMatrix p = discretize_poisson(5, grid);
  for (int n = -5; n <= 5; ++n) {
    const auto u = poisson_extend(CircleFunction::from_coefficients(64, {{n, 1.0}}), grid);
    CHECK((p.entries.col(n + 5) - u.values()).cwiseAbs().maxCoeff() < 1e-13);
  }
  // ||r^{|n|} e^{in theta}||^2 = 1 / (|n| + 1) under normalized area.
  const auto sv = singular_values(p);
  for (int k = 0; k < sv.size(); ++k) {
    const int n = (k + 1) / 2;
    CHECK(sv(k) == doctest::Approx(1.0 / std::sqrt(n + 1.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(discretize_poisson(16, grid), ValidationError);
}

TEST_CASE("Gram adjoint satisfies the pairing identity") {
  const auto grid = make_grid(6, 16);
  const OperatorMatrix p = discretize_poisson(3, grid);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  CVec x(p.src.size()), y(p.dst.size());
  for (auto& v : x) v = cd(g(rng), g(rng));
  for (auto& v : y) v = cd(g(rng), g(rng));
  const cd lhs = (p.dst.gram.cast<cd>().asDiagonal() * p.apply(x)).dot(y);
  const cd rhs = (p.src.gram.cast<cd>().asDiagonal() * x).dot(p.adjoint_apply(y));
  CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
}

TEST_CASE("basis mismatch is rejected") {
  CHECK_THROWS_AS(discretize_szego(3) + discretize_identity(7), ValidationError);
  CHECK_THROWS_AS(compose(discretize_szego(3), discretize_szego(4)), ValidationError);
}

TEST_CASE("Bergman matrix is a projection") {
  const auto grid = make_grid(10, 20);
  const OperatorMatrix b = discretize_bergman(grid, 9);
  const OperatorMatrix bb = compose(b, b);
  CHECK((bb.entries - b.entries).cwiseAbs().maxCoeff() < 1e-12);
  const auto sv = singular_values(b);
  CHECK(sv(9) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sv(10) < 1e-12);
}

TEST_CASE("difference operator vanishes for the identity map") {
  DifferenceConfig c;
  c.band = 8;
  c.m = 256;
  c.radial = 32;
  c.angular = 64;
  const auto d = difference_operator(ConformalMap::identity(), c);
  CHECK(d.decomposition.entries.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(d.two_path_gap < 1e-12);
}

TEST_CASE("difference operator paths agree for a Moebius map") {
  DifferenceConfig c;
  c.band = 8;
  c.m = 512;
  c.radial = 32;
  c.angular = 64;
  const auto d = difference_operator(named_map("moebius"), c);
  CHECK(d.two_path_gap < 1e-10);
  CHECK(singular_values(d.decomposition)(0) < 1e-8);
}

TEST_CASE("difference operator validates its configuration") {
  DifferenceConfig c;
  c.band = 8;
  c.m = 100;
  CHECK_THROWS_AS(difference_operator(named_map("holder"), c), ValidationError);
  c.m = 4096;
  CHECK_THROWS_AS(difference_operator(named_map("sector"), c), ValidationError);
}

TEST_CASE("L^p norm estimates") {
  BatteryParams bp;
  bp.random_count = 4;
  const auto s = szego_sampled(256);
  const auto e2 = norm_estimate_lp(s, 2.0, bp);
  CHECK(e2.lower == doctest::Approx(1.0).epsilon(1e-9));
  const auto e4 = norm_estimate_lp(s, 4.0, bp);
  CHECK(e4.lower >= 1.0);
  CHECK(std::isnan(e4.upper));

  const auto z = sampled_operator(OperatorMatrix{Eigen::MatrixXcd::Zero(5, 5), Basis::circle_nodal(5),
                                                 Basis::circle_nodal(5), "zero"});
  CHECK(norm_estimate_lp(z, 3.0, bp).lower == 0.0);

  const auto m = discretize_szego_nodal(64);
  const auto em = norm_estimate_lp(m, 2.0, bp);
  CHECK(em.lower <= em.upper * (1.0 + 1e-12));
}

TEST_CASE("weight witnesses grow as p approaches the critical exponent") {
  BatteryParams bp;
  bp.random_count = 2;
  const auto w = example_domain_pullback_weight(5.0);
  double prev = 0.0;
  for (double p : {5.0, 5.5, 5.9}) {
    const auto wp = example_domain_pullback_weight(p);
    const auto s = szego_sampled(1024, &wp);
    const double lower = norm_estimate_lp(s, p, bp, &wp).lower;
    CHECK(lower >= prev);
    prev = lower;
  }
  CHECK(w.singularities().size() == 8);
}

TEST_CASE("ball separation is homogeneous in f") {
  const std::size_t m = 1024;
  const double r = 0.1;
  const auto f = CircleFunction::from_function(m, [&](double t) { return cd(std::abs(wrap_angle(t)) <= r ? 1.0 : 0.0); });
  const auto a = ball_separation_check(r, f, 0.0);
  const auto b = ball_separation_check(r, CircleFunction::from_samples(3.0 * f.samples()), 0.0);
  CHECK(b.min_value == doctest::Approx(3.0 * a.min_value));
  CHECK(b.threshold == doctest::Approx(3.0 * a.threshold));
  CHECK(a.holds());
  CHECK_THROWS_AS(ball_separation_check(0.5, f, 0.0), ValidationError);
  CHECK_THROWS_AS(ball_separation_check(r, f, 0.0, 1.5), ValidationError);
}

TEST_CASE("kernel diagnostics") {
  CHECK(integrated_kernel(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(integrated_kernel(0.5, 0.2, cd(0.3, 0.1)) == doctest::Approx(4.0 * std::sqrt(0.2)).epsilon(1e-2));
  const auto s = szego_smoothness_check(500, 7);
  CHECK(s.triples == 500);
  CHECK(s.violations == 0);
  CHECK(oscillation_functional(ConformalMap::identity(), 0.1) < 1e-14);
  CHECK_THROWS_AS(commutator_kernel_checks(named_map("sector"), 0.5, 0.5, {0.1}), ValidationError);
  CHECK_THROWS_AS(commutator_kernel_checks(named_map("holder"), 1.5, 0.5, {0.1}), ValidationError);
}

}  // TEST_SUITE
