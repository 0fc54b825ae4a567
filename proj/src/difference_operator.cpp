#include "conflab/spectral.hpp"
#include "conflab/transfer.hpp"

namespace conflab {

namespace {

void validate(const ConformalMap& map, const DifferenceConfig& c) {
  if (map.domain() != ModelDomain::disc) throw ValidationError("difference operator: map must be defined on the disc");
  if (!map.dini_smooth()) throw ValidationError("difference operator: map is not Dini-smooth");
  if (c.band < 1) throw ValidationError("difference operator: band must be positive");
  if (!is_power_of_two(c.m)) throw ValidationError("difference operator: M must be a power of two");
  if (c.angular % 2 != 0 || c.band >= c.angular / 2) {
    throw ValidationError("difference operator: angular nodes must be even and exceed 2N");
  }
  if (static_cast<int>(c.m) < 2 * c.angular) throw ValidationError("difference operator: M must be at least 2K");
  // B0 of degree K/2 - 1 must be exact on the grid so that B0 P0 = P0 S0.
  if (c.radial < c.angular / 2) throw ValidationError("difference operator: radial nodes must be at least K/2");
}

DiscFunction scaled(const DiscFunction& f, const CVec& s) {
  return DiscFunction(f.grid(), f.values().cwiseProduct(s));
}

}  // namespace

DifferenceOperator difference_operator(const ConformalMap& map, const DifferenceConfig& config) {
  validate(map, config);
  const int band = config.band;
  const int degree = config.angular / 2 - 1;
  const GridPtr grid = make_grid(config.radial, config.angular);
  const CircleFactors factors = circle_factors(map, config.m);
  const CVec h = factors.sqrt_dphi.cwiseInverse();
  const CVec dphi = grid_derivative(map, *grid);

  const Basis src = Basis::circle_fourier(band);
  const Basis dst = Basis::disc_nodal(grid);
  const auto rows = static_cast<Eigen::Index>(grid->size());

  DifferenceOperator out;
  out.decomposition = {Eigen::MatrixXcd(rows, src.size()), src, dst, "tau(BP-PS)tau_half^-1"};
  if (config.direct) out.direct = {Eigen::MatrixXcd(rows, src.size()), src, dst, "direct"};

  for (int n = -band; n <= band; ++n) {
    const Eigen::Index col = n + band;
    const CircleFunction e = CircleFunction::from_coefficients(config.m, {{n, 1.0}});
    const CircleFunction he = CircleFunction::from_samples(h.cwiseProduct(e.samples()));

    // [B0, M_phi'] P0 M_h e
    const DiscFunction u = poisson_extend(he, grid);
    CVec col_values = bergman_project(scaled(u, dphi), degree).values() -
                      bergman_project(u, degree).values().cwiseProduct(dphi);
    // M_phi' P0 [S0, M_h] e
    const CircleFunction s_he = szego_project(he);
    const CircleFunction h_se = n >= 0 ? he : CircleFunction::constant(config.m, 0.0);
    col_values += (poisson_extend(s_he, grid) - poisson_extend(h_se, grid)).values().cwiseProduct(dphi);
    out.decomposition.entries.col(col) = col_values;

    if (config.direct) {
      const DomainFunction f = tau_half_inverse(e, map);
      const DiscFunction bp = bergman_domain(poisson_domain(f, grid), degree).interior_values();
      const DiscFunction ps = poisson_domain(szego_domain(f), grid).interior_values();
      out.direct.entries.col(col) = tau(DomainFunction::interior(map, bp - ps)).values();
    }
  }
  if (config.direct) {
    out.two_path_gap = (out.decomposition.entries - out.direct.entries).cwiseAbs().maxCoeff();
  }
  return out;
}

}  // namespace conflab
