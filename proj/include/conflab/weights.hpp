#pragma once

// Weights on the circle, the real line and the disc, and their Muckenhoupt
// A_p, reverse-Hoelder RH_q and disc A_p^+ characteristics.
//
// Averages over circle arcs and line intervals are computed by a quadrature
// that splits at the weight's singular points and uses Gauss-Jacobi rules at
// singular endpoints, so power-law singularities are integrated exactly up
// to the smooth cofactor. Disc averages are grid-node sums.
//
// All theorem-level formula evaluators below set the implicit absolute
// constants to 1; their values hold up to absolute constants.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conflab/conformal.hpp"
#include "conflab/disc_core.hpp"

namespace conflab {

enum class WeightDomain { circle, line, disc };

/// A power-law singularity |x - location|^exponent (circle: angle).
struct Singularity {
  double location = 0.0;
  double exponent = 0.0;
};

class WeightSpec {
 public:
  enum class Kind { power, pullback, sampled, product };

  /// circle: scale * |e^{i theta} - e^{i center}|^a; line: scale * |x - center|^a.
  static WeightSpec power(WeightDomain domain, double center, double exponent, double scale = 1.0);
  /// scale * |w - center|^a on the disc.
  static WeightSpec power_disc(cd center, double exponent, double scale = 1.0);
  /// |phi'|^s. Circle and disc need a map of the disc, line needs a map of
  /// the upper half-plane.
  static WeightSpec pullback(ConformalMap map, double s, WeightDomain domain);
  /// Piecewise constant on M equal cells centered at theta_k = 2 pi k / M.
  static WeightSpec sampled_circle(std::vector<double> values);
  /// Values at the nodes of a disc grid.
  static WeightSpec sampled_disc(GridPtr grid, std::vector<double> values);
  static WeightSpec product(std::vector<WeightSpec> factors);

  Kind kind() const { return kind_; }
  WeightDomain domain() const { return domain_; }
  /// omega^s.
  WeightSpec pow(double s) const;

  /// Pointwise value at an angle (circle) or abscissa (line).
  double operator()(double x) const;
  /// Pointwise value at a disc point; sampled disc weights only at nodes.
  double at(cd w) const;
  /// Value at node i of `grid`.
  double at_node(const DiscGrid& grid, std::size_t i) const;

  /// Merged power singularities of the circle/line weight (angles wrapped to
  /// [-pi, pi) on the circle), each with its total exponent.
  std::vector<Singularity> singularities() const;
  /// Disc weights: boundary angles where the weight has a power singularity.
  std::vector<Singularity> boundary_singularities() const;
  bool has_sampled_factor() const;

  std::string describe() const;

  // Plumbing for the averaging routines.
  const std::vector<double>& samples() const { return samples_; }
  const GridPtr& grid() const { return grid_; }
  const std::vector<WeightSpec>& factors() const { return factors_; }

 private:
  WeightSpec() = default;
  double eval_power_factor(double x) const;

  Kind kind_ = Kind::power;
  WeightDomain domain_ = WeightDomain::circle;
  double center_ = 0.0;
  cd disc_center_{0.0, 0.0};
  double exponent_ = 0.0;
  double scale_ = 1.0;
  double power_ = 1.0;  // overall omega^power
  std::shared_ptr<const ConformalMap> map_;
  std::vector<double> samples_;
  GridPtr grid_;
  std::vector<WeightSpec> factors_;
};

/// Interval [center - radius, center + radius]; on the circle an arc.
struct Region1D {
  double center = 0.0;
  double radius = 0.0;
};

/// Normalized average of omega^e over the region. Circle arcs with radius
/// >= pi are the whole circle.
double weight_average(const WeightSpec& w, double e, const Region1D& region);

/// Average of omega^e over each of the M cells centered at 2 pi k / M.
std::vector<double> cell_averages(const WeightSpec& w, std::size_t m, double e = 1.0);

/// Carleson region D_r(zeta) cap disc, zeta = e^{i angle}.
struct CarlesonRegion {
  double angle = 0.0;
  double radius = 0.0;
};

struct FamilyParams {
  int depth = 14;          // radii scale 2^{-k}, k = 0..depth
  int lattice = 256;       // lattice centers per radius
  double window = 1.0;     // line: half-width W of the search window
  int disc_depth = 6;      // disc radii 2^{1-k}, k = 0..disc_depth
  int disc_lattice = 64;
  int disc_radial = 64;    // disc grid used for A_p^+ when the weight has none
  int disc_angular = 256;
  std::size_t min_nodes = 16;
};

struct CharacteristicReport {
  double value = 1.0;
  double argmax_center = 0.0;
  double argmax_radius = 0.0;
  std::size_t family_size = 0;
  std::size_t excluded = 0;  // disc regions dropped for too few nodes
  double exponent = 0.0;     // p or q
};

/// Region family shared by all circle/line estimators for a given weight
/// list: dyadic radii, lattice centers and the singular points of every
/// listed weight (plus offsets of r/2, r, 2r around them).
std::vector<Region1D> region_family(WeightDomain domain, const std::vector<WeightSpec>& weights,
                                    const FamilyParams& params);

double ap_product(const WeightSpec& w, double p, const Region1D& region);
double rh_ratio(const WeightSpec& w, double q, const Region1D& region);

CharacteristicReport ap_characteristic(const WeightSpec& w, double p, const FamilyParams& params = {});
CharacteristicReport ap_characteristic(const WeightSpec& w, double p, const std::vector<Region1D>& family);
CharacteristicReport rh_characteristic(const WeightSpec& w, double q, const FamilyParams& params = {});
CharacteristicReport rh_characteristic(const WeightSpec& w, double q, const std::vector<Region1D>& family);

/// Disc A_p^+ characteristic over boundary-centered Carleson regions.
CharacteristicReport ap_plus_characteristic(const WeightSpec& w, double p, const FamilyParams& params = {});
CharacteristicReport ap_plus_characteristic(const WeightSpec& w, double p, const GridPtr& grid,
                                            const std::vector<CarlesonRegion>& family, std::size_t min_nodes);
std::vector<CarlesonRegion> carleson_family(const WeightSpec& w, const FamilyParams& params);

/// (1 / (1 + a)) ((p - 1) / (p - 1 - a))^{p - 1}: the A_p product of |x|^a
/// over an interval centered at the singularity. Requires -1 < a < p - 1.
double centered_power_product(double a, double p);

struct FactorizationResult {
  double lhs = 1.0;
  double rhs = 1.0;
  double a_char = 1.0;    // [u]_{A_{p/p0}}
  double rh_char = 1.0;   // [u]_{RH_{(p0'/p)'}}
  double nu_char = 1.0;   // [nu^{p0'/p}]_{A_2}
};

/// lhs = [u nu]_{A_p}; rhs = [u]_{A_{p/p0}} [u]_{RH_{(p0'/p)'}} [nu^{p0'/p}]_{A_2}^{p/p0'},
/// every characteristic taken over the same family.
FactorizationResult factorization_bound(const WeightSpec& u, const WeightSpec& nu, double p, double p0,
                                        const std::vector<Region1D>& family);
FactorizationResult factorization_bound(const WeightSpec& u, const WeightSpec& nu, double p, double p0,
                                        const FamilyParams& params = {});

/// max{p, 1/(p - 1)}.
double c_p(double p);
double szego_norm_upper(double p, double ap_char);
struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
};
NormBounds bergman_norm_bounds(double p, double ap_plus_char);
double weighted_norm_upper(double p, double p0, double char_a, double char_rh, double char_nu);

struct DomainClass {
  enum class Kind { local_graph, lipschitz } kind = Kind::local_graph;
  double lipschitz_constant = 0.0;

  static DomainClass local_graph() { return {}; }
  static DomainClass lipschitz(double m) { return {Kind::lipschitz, m}; }
};
struct Range {
  double lo = 0.0;
  double hi = 0.0;
};
Range admissible_range(const DomainClass& domain_class);

/// C_Omega^p max{N1, N2}.
double local_graph_combine(double n1, double n2, double p, double c_omega = 1.0);

// -- the example domain -----------------------------------------------------

/// Angle t of the prevertex of 1/2 + 3i/2 for the Riemann map of the
/// example octagon normalized by phi(0) = 0, phi'(0) > 0. By symmetry the
/// prevertices are 0, pi (images +-2), +-pi/2 (reflex corners +-i) and
/// +-t, pi +- t; t is fixed by the side-length ratio 3.
double example_domain_prevertex();

/// |phi'|^{1 - p/2} on the circle for that map, up to a constant factor:
/// a product of chordal powers with exponent (2 - p)/4 at +-pi/2 and
/// (p - 2)/4 at the six convex prevertices.
WeightSpec example_domain_pullback_weight(double p);

struct ExampleCharacteristic {
  double p = 0.0;
  double n1 = 1.0;         // max over Phi_j of [|Phi_j'|^{1 - p/2}]_{A_p(R)}
  double n2 = 1.0;         // global average product of the circle model
  double combined = 1.0;   // local_graph_combine(n1, n2, p, 1)
  double reference = 1.0;  // (4/(6-p)) (4(p-1)/(5p-6))^{p-1}
  std::string n1_argmax;   // label of the dominating Phi_j
};

ExampleCharacteristic example_domain_characteristic(double p, const FamilyParams& params = {});

}  // namespace conflab
