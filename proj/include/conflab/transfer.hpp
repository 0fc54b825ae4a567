#pragma once

// Conformal transfer between a domain Omega = phi(D) and the disc.
//
//   tau(f)      = (f o phi) phi'          interior, L^2(Omega) -> L^2(D)
//   tau_half(f) = (f o phi) (phi')^{1/2}  boundary, L^2(dOmega) -> L^2(dD)
//
// Domain functions are stored in pulled-back coordinates (the values of
// f o phi on circle nodes or disc grid nodes); no mesh on Omega is built.
// Boundary measure on Omega is arc length normalized by 2 pi, area measure
// is Lebesgue area normalized by pi, matching the disc conventions.

#include <memory>
#include <variant>

#include "conflab/conformal.hpp"
#include "conflab/disc_core.hpp"

namespace conflab {

enum class SpaceTag { boundary, interior };

class DomainFunction {
 public:
  /// `pulled_back` holds f o phi at theta_k.
  static DomainFunction boundary(ConformalMap map, CircleFunction pulled_back);
  /// `pulled_back` holds f o phi at the grid nodes.
  static DomainFunction interior(ConformalMap map, DiscFunction pulled_back);
  /// Samples a function given on Omega.
  static DomainFunction boundary_from(ConformalMap map, std::size_t m, const std::function<cd(cd)>& f);
  static DomainFunction interior_from(ConformalMap map, GridPtr grid, const std::function<cd(cd)>& f);

  SpaceTag space() const { return space_; }
  const ConformalMap& map() const { return *map_; }
  const CircleFunction& boundary_values() const;
  const DiscFunction& interior_values() const;

 private:
  DomainFunction(std::shared_ptr<const ConformalMap> map, SpaceTag space,
                 std::variant<CircleFunction, DiscFunction> repr);
  std::shared_ptr<const ConformalMap> map_;
  SpaceTag space_;
  std::variant<CircleFunction, DiscFunction> repr_;
};

/// Samples of phi' and the continuous branch of (phi')^{1/2} on the circle
/// nodes theta_k = 2 pi k / M. Throws when a node is a corner preimage.
struct CircleFactors {
  CVec dphi;
  CVec sqrt_dphi;
};
CircleFactors circle_factors(const ConformalMap& map, std::size_t m);
/// phi' at the nodes of a disc grid.
CVec grid_derivative(const ConformalMap& map, const DiscGrid& grid);

CircleFunction tau_half(const DomainFunction& f);
DomainFunction tau_half_inverse(const CircleFunction& g, const ConformalMap& map);
DiscFunction tau(const DomainFunction& f);
DomainFunction tau_inverse(const DiscFunction& g, const ConformalMap& map);

/// (int |f|^p dsigma~)^{1/p} on the boundary or (int |f|^p dA)^{1/p} on
/// Omega, by change of variables.
double domain_norm(const DomainFunction& f, double p);

/// S = tau_half^{-1} S0 tau_half.
DomainFunction szego_domain(const DomainFunction& f);
/// B = tau^{-1} B0 tau with B0 truncated at `degree`.
DomainFunction bergman_domain(const DomainFunction& f, int degree);
/// P = C_{phi^{-1}} P0 C_phi; needs a Dini-smooth map.
DomainFunction poisson_domain(const DomainFunction& f, const GridPtr& grid);

}  // namespace conflab
