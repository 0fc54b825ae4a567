#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflab/conformal.hpp"

using namespace conflab;

namespace {

constexpr double kPi = std::numbers::pi;

// Central difference along the real axis; maps are holomorphic.
cd numeric_derivative(const ConformalMap& m, cd z) {
  const double h = 1e-6;
  return (m.eval(z + h) - m.eval(z - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("conformal") {

TEST_CASE("derivatives agree with finite differences") {
  for (const char* name : {"identity", "moebius", "cayley", "sector", "holder"}) {
    const ConformalMap m = named_map(name);
    for (cd z : {cd(0.1, 0.2), cd(-0.4, 0.3), cd(0.5, -0.5)}) {
      CHECK(std::abs(m.derivative(z) - numeric_derivative(m, z)) < 1e-7 * (1.0 + std::abs(m.derivative(z))));
    }
  }
  for (const auto& m : example_domain().maps) {
    for (cd z : {cd(0.3, 0.7), cd(-1.2, 0.4)}) {
      CHECK(std::abs(m.derivative(z) - numeric_derivative(m, z)) < 1e-6 * (1.0 + std::abs(m.derivative(z))));
    }
  }
}

TEST_CASE("Moebius maps the circle to itself and a to zero") {
  const ConformalMap m = ConformalMap::moebius(cd(0.3, 0.2), std::polar(1.0, 0.4));
  CHECK(std::abs(m.eval(cd(0.3, 0.2))) < 1e-15);
  for (double t = 0.0; t < 2 * kPi; t += 0.37) CHECK(std::abs(m.eval(std::polar(1.0, t))) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ConformalMap::moebius(cd(1.0, 0.0), 1.0), ValidationError);
}

TEST_CASE("Cayley directions are mutually inverse") {
  const auto to_h = ConformalMap::cayley(CayleyDirection::disc_to_halfplane);
  const auto to_d = ConformalMap::cayley(CayleyDirection::halfplane_to_disc);
  for (cd z : {cd(0.0, 0.0), cd(0.5, -0.2), cd(-0.3, 0.6)}) {
    const cd w = to_h.eval(z);
    CHECK(w.imag() > 0.0);
    CHECK(std::abs(to_d.eval(w) - z) < 1e-14);
  }
  const auto round = ConformalMap::composite({to_h, to_d});
  CHECK(std::abs(round.eval(cd(0.2, 0.1)) - cd(0.2, 0.1)) < 1e-14);
  CHECK_THROWS_AS(ConformalMap::composite({to_h, named_map("moebius")}), ValidationError);
  CHECK_THROWS_AS(to_h.eval(1.0), CornerPointError);
}

TEST_CASE("holder power model") {
  const ConformalMap m = named_map("holder");
  REQUIRE(m.holder_exponent().has_value());
  CHECK(*m.holder_exponent() == 0.5);
  CHECK(m.dini_smooth());
  for (double t = 0.0; t < 2 * kPi; t += 0.05) CHECK(m.derivative(std::polar(1.0, t)).real() > 0.0);
  CHECK(std::abs(m.derivative(1.0) - 1.0) < 1e-15);
  CHECK_THROWS_AS(ConformalMap::holder_power(0.6, 0.5, 0.0), ValidationError);
}

TEST_CASE("sector maps have corners and are not Dini-smooth") {
  const ConformalMap m = named_map("sector");
  CHECK_FALSE(m.dini_smooth());
  CHECK_FALSE(m.holder_exponent().has_value());
  CHECK_THROWS_AS(m.derivative(-1.0), CornerPointError);
}

TEST_CASE("example domain maps") {
  const ExampleDomain d = example_domain();
  REQUIRE(d.maps.size() == 8);
  CHECK(d.riemann_normalization == "unspecified");
  CHECK(d.nonconvex_points.size() == 2);
  for (std::size_t j = 0; j < d.maps.size(); ++j) {
    CHECK(d.maps[j].label() == "Phi" + std::to_string(j + 1));
    CHECK(d.maps[j].domain() == ModelDomain::upper_halfplane);
    CHECK_THROWS_AS(d.maps[j].derivative(0.0), CornerPointError);
  }
  // Phi1 and Phi2 have their corners at the reflex points -i and i.
  CHECK(std::abs(d.maps[0].eval(cd(1e-12, 1e-12)) - cd(0.0, -1.0)) < 1e-10);
  CHECK(std::abs(d.maps[1].eval(cd(1e-12, 1e-12)) - cd(0.0, 1.0)) < 1e-10);
  // principal branch: c x^gamma on the positive axis
  CHECK(std::abs(d.maps[2].eval(4.0) - (std::polar(1.0, -kPi / 4) * 2.0 - 2.0)) < 1e-14);
}

TEST_CASE("bundled example domain file matches the built-in maps") {
  const auto maps = load_domain_file(std::string(CONFLAB_DATA_DIR) + "/example_domain.txt");
  const ExampleDomain d = example_domain();
  REQUIRE(maps.size() == d.maps.size());
  for (std::size_t j = 0; j < maps.size(); ++j) {
    CHECK(maps[j].label() == d.maps[j].label());
    for (cd z : {cd(0.5, 0.5), cd(-2.0, 0.1), cd(3.0, 0.0)}) CHECK(std::abs(maps[j].eval(z) - d.maps[j].eval(z)) < 1e-14);
  }
}

TEST_CASE("text form round trips") {
  for (const char* name : {"identity", "moebius", "cayley", "sector", "holder", "Phi3"}) {
    const ConformalMap m = named_map(name);
    const ConformalMap back = parse_map(m.describe());
    for (cd z : {cd(0.1, 0.3), cd(-0.2, 0.4)}) CHECK(std::abs(back.eval(z) - m.eval(z)) < 1e-14);
  }
  CHECK_THROWS_AS(parse_map("moebius a=0.1 bogus=2"), ValidationError);
  CHECK_THROWS_AS(parse_map("nosuchmap"), ValidationError);
  CHECK_THROWS_AS(parse_domain_text("identity\nmoebius a=2"), ValidationError);
  CHECK(parse_domain_text("# comment only\n\nidentity\n").size() == 1);
  CHECK(std::abs(parse_complex("-0.5+1.5i") - cd(-0.5, 1.5)) < 1e-15);
}

TEST_CASE("boundary traces") {
  const BoundaryTrace t = boundary_trace(named_map("moebius"), 256);
  CHECK(boundary_injective(t));
  CHECK(boundary_winding(t, named_map("moebius").eval(0.0)) == 1);
  CHECK(boundary_winding(t, cd(3.0, 0.0)) == 0);
  CHECK((t.sqrt_dphi_vals.cwiseProduct(t.sqrt_dphi_vals) - t.dphi_vals).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((t.arclength_density - t.dphi_vals.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-14);

  // The sector corner sits at theta = pi, a node for even M.
  const BoundaryTrace s = boundary_trace(named_map("sector"), 64);
  CHECK(s.node_offset == doctest::Approx(kPi / 64));
  CHECK_THROWS_AS(boundary_trace(named_map("sector"), 64, CornerPolicy::reject), NumericalError);
  CHECK_THROWS_AS(boundary_trace(named_map("cayley"), 64, CornerPolicy::reject), NumericalError);
}

}  // TEST_SUITE
