#pragma once

// Catalog of analytic conformal maps with exact derivatives, a continuous
// branch of (phi')^{1/2} along the boundary, and boundary traces.
//
// Two model domains occur as inputs: the unit disc and the upper
// half-plane. Half-plane kinds take their argument directly in the upper
// half-plane (principal branch, arg in [0, pi]); to obtain a map of the
// disc, compose with cayley(disc_to_halfplane), z -> i (1 + z) / (1 - z).

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conflab/error.hpp"

namespace conflab {

using cd = std::complex<double>;

/// Raised when a derivative is requested at a point where phi' vanishes or
/// blows up (corner preimage) or where the map has a pole.
class CornerPointError : public ValidationError {
 public:
  explicit CornerPointError(const std::string& what) : ValidationError(what) {}
};

enum class MapKind { identity, moebius, cayley, power_sector, halfplane_power, holder_power, composite };
enum class ModelDomain { disc, upper_halfplane, plane };
enum class CayleyDirection { disc_to_halfplane, halfplane_to_disc };

class ConformalMap {
 public:
  static ConformalMap identity();
  /// lambda (z - a) / (1 - conj(a) z), |a| < 1, |lambda| = 1.
  static ConformalMap moebius(cd a, cd lambda);
  static ConformalMap cayley(CayleyDirection direction);
  /// translation + e^{i rotation} (1 + z)^beta, 0 < beta < 2. Corner of
  /// interior angle beta * pi at the image of z = -1.
  static ConformalMap power_sector(double beta, double rotation, cd translation);
  /// c z^gamma + shift on the upper half-plane, principal branch.
  static ConformalMap halfplane_power(cd c, double gamma, cd shift, std::string label = {});
  /// z + kappa e^{i rho} (1 - e^{-i rho} z)^{1 + alpha}. Requires
  /// kappa (1 + alpha) 2^alpha < 1 so that Re phi' > 0 on the closed disc;
  /// phi' is then alpha-Hoelder and nonvanishing up to the boundary.
  static ConformalMap holder_power(double kappa, double alpha, double rho);
  /// members[0] is applied first.
  static ConformalMap composite(std::vector<ConformalMap> members);

  MapKind kind() const { return kind_; }
  ModelDomain domain() const;
  ModelDomain codomain() const;
  const std::string& label() const { return label_; }
  const std::vector<ConformalMap>& members() const { return members_; }

  // Raw parameters; meaning depends on the kind.
  cd param_a() const { return a_; }
  cd param_b() const { return b_; }
  double param_x() const { return x_; }
  double param_y() const { return y_; }
  CayleyDirection direction() const { return direction_; }

  /// phi' extends continuously and without zeros to the closed disc.
  bool dini_smooth() const;
  /// Hoelder exponent of phi' on the closed disc, when one is known.
  std::optional<double> holder_exponent() const;

  cd eval(cd z) const;
  cd derivative(cd z) const;

  /// One-line text form, parsable by parse_map.
  std::string describe() const;

 private:
  ConformalMap() = default;
  void check_input(cd z) const;
  cd eval_unchecked(cd z) const;
  cd derivative_unchecked(cd z) const;

  MapKind kind_ = MapKind::identity;
  cd a_{0.0, 0.0};
  cd b_{1.0, 0.0};
  double x_ = 0.0;
  double y_ = 0.0;
  CayleyDirection direction_ = CayleyDirection::disc_to_halfplane;
  std::string label_;
  std::vector<ConformalMap> members_;
};

enum class CornerPolicy { offset, reject };

/// Samples of a disc map along the unit circle.
struct BoundaryTrace {
  Eigen::VectorXd theta_nodes;
  Eigen::VectorXcd phi_vals;
  Eigen::VectorXcd dphi_vals;
  Eigen::VectorXcd sqrt_dphi_vals;
  Eigen::VectorXd arclength_density;
  /// Angle added to the equispaced nodes 2 pi k / M (0 or pi / M).
  double node_offset = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(theta_nodes.size()); }
};

/// Trace at theta_k = 2 pi k / M (+ pi / M when a node hits a corner
/// preimage and the policy is `offset`). The square-root branch is built by
/// unwrapping arg phi' along theta and halving it.
BoundaryTrace boundary_trace(const ConformalMap& map, std::size_t m, CornerPolicy policy = CornerPolicy::offset);

/// No two boundary images closer than `tol`.
bool boundary_injective(const BoundaryTrace& trace, double tol = 1e-9);

/// Winding number of the closed curve phi(e^{i theta}) about `point`.
int boundary_winding(const BoundaryTrace& trace, cd point);

/// The section-3 example domain: eight half-plane maps whose images are
/// graph domains covering the boundary of an octagon with reflex corners at
/// +-i.
struct ExampleDomain {
  std::vector<ConformalMap> maps;
  /// Boundary points where the domain fails to be locally convex.
  std::vector<cd> nonconvex_points;
  /// The Riemann map of the domain is never fixed; only these metadata
  /// are exposed.
  std::string riemann_normalization = "unspecified";
};

ExampleDomain example_domain();

// -- text format ------------------------------------------------------------

/// `kind key=value ...`; complex values written as `a+bi`. Composite maps
/// list their members separated by " ; " on a single line.
ConformalMap parse_map(const std::string& line);
std::vector<ConformalMap> parse_domain_text(const std::string& text);
std::vector<ConformalMap> load_domain_file(const std::string& path);

/// Catalog lookup by short name: identity, moebius, cayley, sector,
/// holder, or a map from the example domain (Phi1 .. Phi8).
ConformalMap named_map(const std::string& name);

cd parse_complex(const std::string& text);
std::string format_complex(cd z);

}  // namespace conflab
