#include <doctest.h>

#include <cmath>
#include <random>

#include "conflab/transfer.hpp"

using namespace conflab;

namespace {

std::function<cd(cd)> random_rational(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 6.28);
  const cd a(g(rng), g(rng)), b(g(rng), g(rng)), pole = std::polar(2.5, u(rng));
  return [=](cd w) { return a + b * std::conj(w) + 1.0 / (w - pole); };
}

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("tau_half is an isometry on L^2 and transports L^p with |phi'|^{1-p/2}") {
  const ConformalMap phi = named_map("moebius");
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = DomainFunction::boundary_from(phi, 512, random_rational(rng));
    const CircleFunction g = tau_half(f);
    CHECK(domain_norm(f, 2.0) == doctest::Approx(weighted_norm(g, 2.0)).epsilon(1e-13));
    // Independent change of variables: |f o phi|^4 |phi'| sampled directly.
    double s = 0.0;
    for (std::size_t k = 0; k < 512; ++k) {
      const cd z = std::polar(1.0, f.boundary_values().theta(k));
      s += std::pow(std::abs(f.boundary_values().samples()(static_cast<Eigen::Index>(k))), 4) * std::abs(phi.derivative(z));
    }
    CHECK(domain_norm(f, 4.0) == doctest::Approx(std::pow(s / 512.0, 0.25)).epsilon(1e-13));
    std::vector<double> nu(512);
    for (std::size_t k = 0; k < 512; ++k) nu[k] = 1.0 / std::abs(phi.derivative(std::polar(1.0, g.theta(k))));
    CHECK(domain_norm(f, 4.0) == doctest::Approx(weighted_norm(g, 4.0, nu)).epsilon(1e-13));
  }
}

TEST_CASE("tau_half inverse round trip") {
  const ConformalMap phi = named_map("holder");
  const auto f = DomainFunction::boundary_from(phi, 256, [](cd w) { return w * w - std::conj(w); });
  const auto back = tau_half_inverse(tau_half(f), phi);
  CHECK((back.boundary_values().samples() - f.boundary_values().samples()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Szego projection on the domain is idempotent") {
  const ConformalMap phi = named_map("moebius");
  const auto f = DomainFunction::boundary_from(phi, 256, [](cd w) { return std::conj(w) + w * std::abs(w); });
  const auto s1 = szego_domain(f);
  const auto s2 = szego_domain(s1);
  CHECK((s2.boundary_values().samples() - s1.boundary_values().samples()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Bergman projection on the domain fixes constants") {
  const ConformalMap phi = named_map("moebius");
  const auto grid = make_grid(48, 128);
  const auto one = DomainFunction::interior_from(phi, grid, [](cd) { return cd(1.0); });
  const auto b = bergman_domain(one, 40);
  CHECK((b.interior_values().values().array() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("interior tau preserves the L^2 norm") {
  const ConformalMap phi = named_map("holder");
  const auto grid = make_grid(16, 64);
  const auto f = DomainFunction::interior_from(phi, grid, [](cd w) { return std::exp(w) + std::conj(w); });
  CHECK(domain_norm(f, 2.0) == doctest::Approx(weighted_norm(tau(f), 2.0)).epsilon(1e-13));
}

TEST_CASE("corner maps are rejected") {
  const ConformalMap sector = named_map("sector");
  const auto f = DomainFunction::boundary(sector, CircleFunction::constant(64, 1.0));
  CHECK_THROWS_AS(tau_half(f), ValidationError);
  CHECK_THROWS_AS(poisson_domain(f, make_grid(4, 8)), ValidationError);
  CHECK_THROWS_AS(DomainFunction::boundary(named_map("Phi1"), CircleFunction::constant(8, 1.0)), ValidationError);
  CHECK_THROWS_AS(f.interior_values(), ValidationError);
}

}  // TEST_SUITE
