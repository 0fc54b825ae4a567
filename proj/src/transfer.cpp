#include "conflab/transfer.hpp"

#include <cmath>

namespace conflab {

DomainFunction::DomainFunction(std::shared_ptr<const ConformalMap> map, SpaceTag space,
                               std::variant<CircleFunction, DiscFunction> repr)
    : map_(std::move(map)), space_(space), repr_(std::move(repr)) {
  if (map_->domain() != ModelDomain::disc) throw ValidationError("DomainFunction: map must be defined on the disc");
}

DomainFunction DomainFunction::boundary(ConformalMap map, CircleFunction pulled_back) {
  return DomainFunction(std::make_shared<const ConformalMap>(std::move(map)), SpaceTag::boundary,
                        std::move(pulled_back));
}

DomainFunction DomainFunction::interior(ConformalMap map, DiscFunction pulled_back) {
  return DomainFunction(std::make_shared<const ConformalMap>(std::move(map)), SpaceTag::interior,
                        std::move(pulled_back));
}

DomainFunction DomainFunction::boundary_from(ConformalMap map, std::size_t m, const std::function<cd(cd)>& f) {
  const ConformalMap& phi = map;
  auto g = CircleFunction::from_function(m, [&](double t) { return f(phi.eval(std::polar(1.0, t))); });
  return boundary(std::move(map), std::move(g));
}

DomainFunction DomainFunction::interior_from(ConformalMap map, GridPtr grid, const std::function<cd(cd)>& f) {
  const ConformalMap& phi = map;
  auto g = DiscFunction::from_function(std::move(grid), [&](cd z) { return f(phi.eval(z)); });
  return interior(std::move(map), std::move(g));
}

const CircleFunction& DomainFunction::boundary_values() const {
  if (space_ != SpaceTag::boundary) throw ValidationError("DomainFunction: not a boundary function");
  return std::get<CircleFunction>(repr_);
}

const DiscFunction& DomainFunction::interior_values() const {
  if (space_ != SpaceTag::interior) throw ValidationError("DomainFunction: not an interior function");
  return std::get<DiscFunction>(repr_);
}

CircleFactors circle_factors(const ConformalMap& map, std::size_t m) {
  BoundaryTrace t;
  try {
    t = boundary_trace(map, m, CornerPolicy::reject);
  } catch (const NumericalError& e) {
    throw ValidationError(std::string("transfer: phi' vanishes or blows up at a node: ") + e.what());
  }
  return {t.dphi_vals, t.sqrt_dphi_vals};
}

CVec grid_derivative(const ConformalMap& map, const DiscGrid& grid) {
  CVec d(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) d(static_cast<Eigen::Index>(i)) = map.derivative(grid.node(i));
  return d;
}

CircleFunction tau_half(const DomainFunction& f) {
  const CircleFunction& g = f.boundary_values();
  const CircleFactors c = circle_factors(f.map(), g.size());
  return CircleFunction::from_samples(g.samples().cwiseProduct(c.sqrt_dphi));
}

DomainFunction tau_half_inverse(const CircleFunction& g, const ConformalMap& map) {
  const CircleFactors c = circle_factors(map, g.size());
  return DomainFunction::boundary(map, CircleFunction::from_samples(g.samples().cwiseQuotient(c.sqrt_dphi)));
}

DiscFunction tau(const DomainFunction& f) {
  const DiscFunction& g = f.interior_values();
  return DiscFunction(g.grid(), g.values().cwiseProduct(grid_derivative(f.map(), *g.grid())));
}

DomainFunction tau_inverse(const DiscFunction& g, const ConformalMap& map) {
  return DomainFunction::interior(map,
                                  DiscFunction(g.grid(), g.values().cwiseQuotient(grid_derivative(map, *g.grid()))));
}

double domain_norm(const DomainFunction& f, double p) {
  if (!(p >= 1.0)) throw ValidationError("domain_norm: exponent must be >= 1");
  if (f.space() == SpaceTag::boundary) {
    const CircleFunction& g = f.boundary_values();
    const CircleFactors c = circle_factors(f.map(), g.size());
    std::vector<double> w(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) w[k] = std::abs(c.dphi(static_cast<Eigen::Index>(k)));
    return weighted_norm(g, p, w);
  }
  const DiscFunction& g = f.interior_values();
  const CVec d = grid_derivative(f.map(), *g.grid());
  std::vector<double> w(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) w[static_cast<std::size_t>(i)] = std::norm(d(i));
  return weighted_norm(g, p, w);
}

DomainFunction szego_domain(const DomainFunction& f) {
  return tau_half_inverse(szego_project(tau_half(f)), f.map());
}

DomainFunction bergman_domain(const DomainFunction& f, int degree) {
  return tau_inverse(bergman_project(tau(f), degree), f.map());
}

DomainFunction poisson_domain(const DomainFunction& f, const GridPtr& grid) {
  if (!f.map().dini_smooth()) throw ValidationError("poisson_domain: map is not Dini-smooth");
  return DomainFunction::interior(f.map(), poisson_extend(f.boundary_values(), grid));
}

}  // namespace conflab
