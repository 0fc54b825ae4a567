#pragma once

// Operator discretization, singular values, L^p norm estimation, the
// difference operator BP - PS and kernel diagnostics.
//
// Matrices act on coefficient vectors in a source basis and return
// coefficients in a destination basis. Each basis carries a diagonal Gram
// (inner-product weights) so that singular values of
// G_dst^{1/2} A G_src^{-1/2} are discrete L^2 -> L^2 operator quantities.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conflab/conformal.hpp"
#include "conflab/disc_core.hpp"
#include "conflab/weights.hpp"

namespace conflab {

struct Basis {
  enum class Kind { circle_fourier, circle_nodal, disc_nodal, disc_monomial };
  Kind kind = Kind::circle_fourier;
  /// circle_fourier: band N (frequencies -N..N); circle_nodal: M;
  /// disc_monomial: degree N; disc_nodal: grid size.
  int n = 0;
  GridPtr grid;
  Eigen::VectorXd gram;

  static Basis circle_fourier(int band);
  static Basis circle_nodal(std::size_t m);
  static Basis disc_nodal(GridPtr grid);
  static Basis disc_monomial(int degree);

  Eigen::Index size() const { return gram.size(); }
  bool operator==(const Basis& other) const;
  std::string describe() const;
};

struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  Basis src;
  Basis dst;
  std::string name;

  CVec apply(const CVec& x) const;
  /// Adjoint with respect to the Gram inner products: G_src^{-1} A^H G_dst.
  CVec adjoint_apply(const CVec& y) const;
  /// G_dst^{1/2} A G_src^{-1/2}.
  Eigen::MatrixXcd normalized() const;
};

OperatorMatrix compose(const OperatorMatrix& outer, const OperatorMatrix& inner);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);

// -- discretizations ----------------------------------------------------------

OperatorMatrix discretize_identity(int dim);
/// S0 on circle frequencies -N..N.
OperatorMatrix discretize_szego(int band);
/// S0 on M circle nodes (samples -> samples).
OperatorMatrix discretize_szego_nodal(std::size_t m);
/// Multiplication by g on frequencies -N..N (Toeplitz in the coefficients of g).
OperatorMatrix discretize_multiplier(const CircleFunction& g, int band);
/// P0 from circle frequencies -N..N to grid values.
OperatorMatrix discretize_poisson(int band, const GridPtr& grid);
/// B0 truncated at `degree`, grid values -> grid values.
OperatorMatrix discretize_bergman(const GridPtr& grid, int degree);
/// Domain Szego projection on M circle nodes in pulled-back coordinates,
/// assembled column by column from the function-level operator.
OperatorMatrix discretize_szego_domain(const ConformalMap& map, std::size_t m);
/// tau_half as a diagonal nodal matrix (L^2(dOmega) -> L^2(dD)).
OperatorMatrix discretize_tau_half(const ConformalMap& map, std::size_t m);
/// Domain Bergman projection on grid values in pulled-back coordinates.
OperatorMatrix discretize_bergman_domain(const ConformalMap& map, const GridPtr& grid, int degree);
OperatorMatrix discretize_tau(const ConformalMap& map, const GridPtr& grid);

/// Named catalog used by the command line: identity, S0, B0, P0, shift.
/// Disc operators use a grid that integrates degree N exactly.
OperatorMatrix discretize(const std::string& name, int n);

/// Nonincreasing singular values of the Gram-normalized matrix (thin QR
/// followed by an SVD of the triangular factor for tall matrices).
Eigen::VectorXd singular_values(const OperatorMatrix& a);
double norm_upper_p2(const OperatorMatrix& a);

// -- difference operator --------------------------------------------------------

struct DifferenceConfig {
  int band = 32;           // source frequencies -N..N
  std::size_t m = 4096;    // circle samples for products
  int radial = 128;        // disc grid radial nodes
  int angular = 256;       // disc grid angular nodes; B0 degree is angular/2 - 1
  bool direct = true;      // also assemble the direct path and the gap
};

struct DifferenceOperator {
  /// tau (BP - PS) tau_half^{-1} = [B0, M_phi'] P0 M_h + M_phi' P0 [S0, M_h],
  /// h = (phi')^{-1/2}, from frequencies -N..N to grid values.
  OperatorMatrix decomposition;
  /// The same operator assembled from the domain operators B, P, S.
  OperatorMatrix direct;
  double two_path_gap = 0.0;  // max entrywise |decomposition - direct|
};

DifferenceOperator difference_operator(const ConformalMap& map, const DifferenceConfig& config = {});

// -- L^p norm estimation ------------------------------------------------------

/// Linear operator on sampled functions with quadrature measures for L^p norms.
struct SampledOperator {
  std::function<CVec(const CVec&)> apply;
  /// Adjoint with respect to sum_i mu_src_i f_i conj(g_i) and the analogous
  /// destination pairing.
  std::function<CVec(const CVec&)> adjoint;
  Eigen::VectorXd src_measure;
  Eigen::VectorXd dst_measure;
  /// Circle node angles when the source lives on the circle (for arcs).
  Eigen::VectorXd src_angles;
  std::string name;
};

SampledOperator sampled_operator(const OperatorMatrix& a);
/// S0 on M nodes; with `weight` the measures become nu_k / M where nu_k is
/// the cell average of the weight (finite even at singular points).
SampledOperator szego_sampled(std::size_t m, const WeightSpec* weight = nullptr);

struct BatteryParams {
  int random_count = 16;
  int random_band = 16;
  int arc_levels = 8;          // arc radii pi 2^{-k}, k = 1..arc_levels
  int arc_centers = 16;
  int witness_levels = 8;      // witness radii pi 2^{-k}, k = 2..witness_levels+1
  int power_iterations = 30;
  double epsilon = 0.0;        // nu + eps regularization of witness duals
  std::uint64_t seed = 1;
};

struct NormEstimate {
  double p = 2.0;
  double lower = 0.0;
  std::string witness_id;
  double upper = 0.0;  // NaN when no upper value is available
  std::string upper_method;
};

/// Lower bound max ||Af||_p / ||f||_p over the battery (random band-limited
/// functions, arc indicators, weight witnesses nu^{-1/(p-1)} chi_I with I
/// centered at singular points and 5r away, and nonlinear power iteration).
/// `weight`, when given, supplies the witness construction; `upper_formula`
/// is reported as the heuristic upper value for p != 2.
NormEstimate norm_estimate_lp(const SampledOperator& op, double p, const BatteryParams& params,
                              const WeightSpec* weight = nullptr, double upper_formula = -1.0);
/// p = 2 upper value from the top singular value of a matrix.
NormEstimate norm_estimate_lp(const OperatorMatrix& a, double p, const BatteryParams& params);

// -- ball separation ------------------------------------------------------------

struct BallSeparation {
  double min_value = 0.0;   // min over I2 nodes of |S0 f|
  double threshold = 0.0;   // (1 / (28 pi)) avg_{I1} f
  double i1_center = 0.0;
  double i2_center = 0.0;
  bool holds() const { return min_value >= threshold; }
};

/// I1 = I(center, r), I2 = I1 rotated by `shift_factor` * r (default 5).
/// S0 f on I2 is evaluated by direct off-support quadrature.
BallSeparation ball_separation_check(double r, const CircleFunction& f, double center,
                                     double shift_factor = 5.0);

// -- kernel diagnostics -----------------------------------------------------------

struct SmoothnessReport {
  std::size_t triples = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;
};
/// Random z in the closed disc, w, w' on the circle with |w - w'| <= |z - w| / 3;
/// checks |K(z,w) - K(z,w')| |w - z|^2 / |w - w'| <= 3/2.
SmoothnessReport szego_smoothness_check(std::size_t count, std::uint64_t seed);

/// Quadrature of int_{D_delta(z)} |z - w|^{alpha - 2} dA(w) (planar disc,
/// normalized area).
double integrated_kernel(double alpha, double delta, cd z = 0.0);

struct KernelReport {
  double identity_quadrature = 0.0;
  double identity_exact = 0.0;
  double kernel_l1_sup = 0.0;
  std::vector<double> radii;
  std::vector<double> oscillation;
};

struct KernelCheckParams {
  int radial = 48;
  int angular = 96;
  std::vector<cd> z_samples;  // empty: a default interior set
};

/// (i) the integrated-kernel identity at z = 0, (ii) sup_z int |k_z| dA,
/// (iii) the oscillation functional sup_z int |k_z - avg_{D_r(w)} k_z| dA(w)
/// for each r, with k_z(w) = (phi'(z) - phi'(w)) / (1 - conj(w) z)^2.
KernelReport commutator_kernel_checks(const ConformalMap& map, double alpha, double delta,
                                      const std::vector<double>& radii, const KernelCheckParams& params = {});
double oscillation_functional(const ConformalMap& map, double r, const KernelCheckParams& params = {});

}  // namespace conflab
