#include <algorithm>
#include <cmath>
#include <numbers>

#include "conflab/text.hpp"
#include "conflab/weights.hpp"

namespace conflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_exponent(double p, const char* what) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError(std::string(what) + ": exponent must lie in (1, inf)");
}

// Analytic pre-check of local integrability of omega^e at each singularity.
void check_power_integrable(const WeightSpec& w, double e, const std::string& message) {
  const double limit = w.domain() == WeightDomain::disc ? -2.0 : -1.0;
  const auto sing = w.domain() == WeightDomain::disc ? w.boundary_singularities() : w.singularities();
  for (const auto& s : sing) {
    if (!(s.exponent * e > limit)) throw ValidationError(message);
  }
}

void check_ap(const WeightSpec& w, double p) {
  check_exponent(p, "A_p characteristic");
  check_power_integrable(w, 1.0, "weight not locally integrable");
  check_power_integrable(w, -1.0 / (p - 1.0), "dual weight not locally integrable");
}

template <class F>
CharacteristicReport sup_over(const std::vector<Region1D>& family, double exponent, F&& value) {
  if (family.empty()) throw ValidationError("empty region family");
  CharacteristicReport rep;
  rep.exponent = exponent;
  rep.family_size = family.size();
  rep.value = -1.0;
  for (const auto& r : family) {
    const double v = value(r);
    if (!std::isfinite(v)) throw NumericalError("non-finite characteristic product");
    if (v > rep.value) {
      rep.value = v;
      rep.argmax_center = r.center;
      rep.argmax_radius = r.radius;
    }
  }
  return rep;
}

}  // namespace

std::vector<Region1D> region_family(WeightDomain domain, const std::vector<WeightSpec>& weights,
                                    const FamilyParams& params) {
  if (domain == WeightDomain::disc) throw ValidationError("region_family: use carleson_family on the disc");
  if (params.depth < 0 || params.lattice < 1) throw ValidationError("region_family: invalid depth or lattice");
  if (domain == WeightDomain::line && !(params.window > 0.0)) throw ValidationError("region_family: window must be positive");
  std::vector<double> sing;
  for (const auto& w : weights) {
    if (w.domain() != domain) throw ValidationError("region_family: weight domain mismatch");
    for (const auto& s : w.singularities()) sing.push_back(s.location);
  }
  std::sort(sing.begin(), sing.end());
  sing.erase(std::unique(sing.begin(), sing.end()), sing.end());

  std::vector<Region1D> family;
  const double base = domain == WeightDomain::circle ? kPi : params.window;
  for (int k = 0; k <= params.depth; ++k) {
    const double r = base * std::ldexp(1.0, -k);
    if (domain == WeightDomain::circle && k == 0) {
      family.push_back({0.0, r});
      continue;
    }
    for (int j = 0; j <= params.lattice; ++j) {
      if (domain == WeightDomain::circle) {
        if (j == params.lattice) break;
        family.push_back({kTwoPi * j / params.lattice - kPi, r});
      } else {
        family.push_back({-params.window + 2.0 * params.window * j / params.lattice, r});
      }
    }
    for (double s : sing) {
      for (double off : {0.0, 0.5 * r, -0.5 * r, r, -r, 2.0 * r, -2.0 * r}) family.push_back({s + off, r});
    }
  }
  return family;
}

double ap_product(const WeightSpec& w, double p, const Region1D& region) {
  const double a = weight_average(w, 1.0, region);
  const double b = weight_average(w, -1.0 / (p - 1.0), region);
  return a * std::pow(b, p - 1.0);
}

double rh_ratio(const WeightSpec& w, double q, const Region1D& region) {
  return std::pow(weight_average(w, q, region), 1.0 / q) / weight_average(w, 1.0, region);
}

CharacteristicReport ap_characteristic(const WeightSpec& w, double p, const std::vector<Region1D>& family) {
  check_ap(w, p);
  return sup_over(family, p, [&](const Region1D& r) { return ap_product(w, p, r); });
}

CharacteristicReport ap_characteristic(const WeightSpec& w, double p, const FamilyParams& params) {
  check_ap(w, p);
  return ap_characteristic(w, p, region_family(w.domain(), {w}, params));
}

CharacteristicReport rh_characteristic(const WeightSpec& w, double q, const std::vector<Region1D>& family) {
  check_exponent(q, "RH_q characteristic");
  check_power_integrable(w, q, "weight power q not locally integrable");
  return sup_over(family, q, [&](const Region1D& r) { return rh_ratio(w, q, r); });
}

CharacteristicReport rh_characteristic(const WeightSpec& w, double q, const FamilyParams& params) {
  check_exponent(q, "RH_q characteristic");
  return rh_characteristic(w, q, region_family(w.domain(), {w}, params));
}

// -- disc -------------------------------------------------------------------

std::vector<CarlesonRegion> carleson_family(const WeightSpec& w, const FamilyParams& params) {
  if (params.disc_depth < 0 || params.disc_lattice < 1) throw ValidationError("carleson_family: invalid parameters");
  std::vector<CarlesonRegion> family;
  const auto sing = w.boundary_singularities();
  for (int k = 0; k <= params.disc_depth; ++k) {
    const double r = std::ldexp(2.0, -k);
    for (int j = 0; j < params.disc_lattice; ++j) family.push_back({kTwoPi * j / params.disc_lattice - kPi, r});
    for (const auto& s : sing) {
      for (double off : {0.0, 0.5 * r, -0.5 * r, r, -r}) family.push_back({s.location + off, r});
    }
  }
  return family;
}

CharacteristicReport ap_plus_characteristic(const WeightSpec& w, double p, const GridPtr& grid,
                                            const std::vector<CarlesonRegion>& family, std::size_t min_nodes) {
  if (w.domain() != WeightDomain::disc) throw ValidationError("A_p^+ characteristic needs a disc weight");
  check_exponent(p, "A_p^+ characteristic");
  check_power_integrable(w, 1.0, "weight not locally integrable");
  check_power_integrable(w, -1.0 / (p - 1.0), "dual weight not locally integrable");
  const std::size_t n = grid->size();
  std::vector<double> omega(n), dual(n);
  for (std::size_t i = 0; i < n; ++i) {
    omega[i] = w.at_node(*grid, i);
    if (!(omega[i] > 0.0) || !std::isfinite(omega[i])) {
      throw ValidationError("weight must be positive and finite at every grid node");
    }
    dual[i] = std::pow(omega[i], -1.0 / (p - 1.0));
  }
  CharacteristicReport rep;
  rep.exponent = p;
  rep.value = -1.0;
  for (const auto& reg : family) {
    const cd zeta = std::polar(1.0, reg.angle);
    double mass = 0.0, s1 = 0.0, s2 = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(grid->node(i) - zeta) >= reg.radius) continue;
      const double wt = grid->weight(i);
      mass += wt;
      s1 += wt * omega[i];
      s2 += wt * dual[i];
      ++count;
    }
    if (count < min_nodes) {
      ++rep.excluded;
      continue;
    }
    ++rep.family_size;
    const double v = (s1 / mass) * std::pow(s2 / mass, p - 1.0);
    if (v > rep.value) {
      rep.value = v;
      rep.argmax_center = reg.angle;
      rep.argmax_radius = reg.radius;
    }
  }
  if (rep.family_size == 0) throw NumericalError("A_p^+ characteristic: every region was excluded");
  return rep;
}

CharacteristicReport ap_plus_characteristic(const WeightSpec& w, double p, const FamilyParams& params) {
  GridPtr grid = w.kind() == WeightSpec::Kind::sampled ? w.grid() : make_grid(params.disc_radial, params.disc_angular);
  return ap_plus_characteristic(w, p, grid, carleson_family(w, params), params.min_nodes);
}

// -- closed forms and formula evaluators -------------------------------------

double centered_power_product(double a, double p) {
  check_exponent(p, "centered_power_product");
  if (!(a > -1.0 && a < p - 1.0)) throw ValidationError("exponent out of A_p range");
  return (1.0 / (1.0 + a)) * std::pow((p - 1.0) / (p - 1.0 - a), p - 1.0);
}

FactorizationResult factorization_bound(const WeightSpec& u, const WeightSpec& nu, double p, double p0,
                                        const std::vector<Region1D>& family) {
  if (!(p0 > 1.0)) throw ValidationError("factorization_bound: p0 must exceed 1");
  const double p0c = p0 / (p0 - 1.0);
  if (!(p > p0 && p < p0c)) throw ValidationError("factorization_bound: p outside (p0, p0')");
  const double r = p0c / p;
  const double s = p / p0;
  const double rc = r / (r - 1.0);
  FactorizationResult res;
  res.lhs = ap_characteristic(WeightSpec::product({u, nu}), p, family).value;
  res.a_char = ap_characteristic(u, s, family).value;
  res.rh_char = rh_characteristic(u, rc, family).value;
  res.nu_char = ap_characteristic(nu.pow(r), 2.0, family).value;
  res.rhs = res.a_char * res.rh_char * std::pow(res.nu_char, 1.0 / r);
  return res;
}

FactorizationResult factorization_bound(const WeightSpec& u, const WeightSpec& nu, double p, double p0,
                                        const FamilyParams& params) {
  return factorization_bound(u, nu, p, p0, region_family(u.domain(), {u, nu}, params));
}

double c_p(double p) {
  check_exponent(p, "C_p");
  return std::max(p, 1.0 / (p - 1.0));
}

namespace {

void check_char(double c) {
  if (!(c >= 1.0 - 1e-12) || !std::isfinite(c)) throw ValidationError("characteristic must be >= 1");
}

}  // namespace

double szego_norm_upper(double p, double ap_char) {
  check_char(ap_char);
  return c_p(p) * std::pow(ap_char, std::max(1.0, 1.0 / (p - 1.0)));
}

NormBounds bergman_norm_bounds(double p, double ap_plus_char) {
  check_char(ap_plus_char);
  return {std::pow(ap_plus_char, 1.0 / (2.0 * p)), c_p(p) * std::pow(ap_plus_char, std::max(1.0, 1.0 / (p - 1.0)))};
}

double weighted_norm_upper(double p, double p0, double char_a, double char_rh, double char_nu) {
  if (!(p0 > 1.0)) throw ValidationError("weighted_norm_upper: p0 must exceed 1");
  const double p0c = p0 / (p0 - 1.0);
  if (!(p > p0 && p < p0c)) throw ValidationError("weighted_norm_upper: p outside (p0, p0')");
  check_char(char_a);
  check_char(char_rh);
  check_char(char_nu);
  const double base = char_a * char_rh * std::pow(char_nu, p * (p0 - 1.0) / p0);
  return c_p(p) * std::pow(base, std::max(1.0, 1.0 / (p - 1.0)));
}

Range admissible_range(const DomainClass& dc) {
  if (dc.kind == DomainClass::Kind::local_graph) return {4.0 / 3.0, 4.0};
  const double m = dc.lipschitz_constant;
  if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("admissible_range: Lipschitz constant must be positive");
  const double pm = 2.0 * (kPi / (2.0 * std::atan(m)) + 1.0);
  return {pm / (pm - 1.0), pm};
}

double local_graph_combine(double n1, double n2, double p, double c_omega) {
  check_exponent(p, "local_graph_combine");
  check_char(n1);
  check_char(n2);
  if (!(c_omega >= 1.0)) throw ValidationError("local_graph_combine: C_Omega must be >= 1");
  return std::pow(c_omega, p) * std::max(n1, n2);
}

// -- example domain ---------------------------------------------------------

namespace {

// |phi'| of the symmetric Riemann map of the octagon, up to a constant:
// exponent -1/2 at the six convex prevertices, +1/2 at the two reflex ones.
WeightSpec octagon_density(double t, double s) {
  std::vector<WeightSpec> f;
  for (double c : {kPi / 2.0, -kPi / 2.0}) f.push_back(WeightSpec::power(WeightDomain::circle, c, 0.5 * s));
  for (double c : {0.0, kPi, t, -t, kPi - t, t - kPi}) f.push_back(WeightSpec::power(WeightDomain::circle, c, -0.5 * s));
  return WeightSpec::product(std::move(f));
}

double side_ratio(double t) {
  // Boundary length from the image of 2 to the next convex corner, over the
  // length from that corner to the reflex corner at i.
  const WeightSpec d = octagon_density(t, 1.0);
  const double long_side = weight_average(d, 1.0, {0.5 * t, 0.5 * t}) * t;
  const double short_side = weight_average(d, 1.0, {0.5 * (t + kPi / 2.0), 0.5 * (kPi / 2.0 - t)}) * (kPi / 2.0 - t);
  return long_side / short_side;
}

}  // namespace

double example_domain_prevertex() {
  // Side lengths: |2 - (1/2 + 3i/2)| = 3 |(1/2 + 3i/2) - i|.
  static const double t = [] {
    double lo = 0.05, hi = kPi / 2.0 - 0.05;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (side_ratio(mid) < 3.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return t;
}

WeightSpec example_domain_pullback_weight(double p) {
  check_exponent(p, "example_domain_pullback_weight");
  return octagon_density(example_domain_prevertex(), 1.0 - 0.5 * p);
}

ExampleCharacteristic example_domain_characteristic(double p, const FamilyParams& params) {
  if (!(p > 1.2 && p < 6.0)) throw ValidationError("example domain: p must lie in (6/5, 6)");
  ExampleCharacteristic out;
  out.p = p;
  out.n1 = 0.0;
  for (const auto& phi : example_domain().maps) {
    const WeightSpec w = WeightSpec::pullback(phi, 1.0 - p / 2.0, WeightDomain::line);
    const double v = ap_characteristic(w, p, params).value;
    if (v > out.n1) {
      out.n1 = v;
      out.n1_argmax = phi.label();
    }
  }
  out.n2 = ap_product(example_domain_pullback_weight(p), p, {0.0, kPi});
  out.combined = local_graph_combine(out.n1, out.n2, p, 1.0);
  out.reference = (4.0 / (6.0 - p)) * std::pow(4.0 * (p - 1.0) / (5.0 * p - 6.0), p - 1.0);
  return out;
}

}  // namespace conflab
