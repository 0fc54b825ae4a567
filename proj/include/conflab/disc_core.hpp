#pragma once

// Spectral representations of functions on the unit circle and the unit
// disc, and the model operators on them: the Szego projection S0, the
// Bergman projection B0 and the Poisson extension P0.
//
// Measures are normalized throughout: d(theta)/(2 pi) on the circle and
// dx dy / pi on the disc, so both have total mass one. With these
// conventions the Szego kernel is 1/(1 - conj(w) z) and the Bergman kernel
// is 1/(1 - conj(w) z)^2. Kernels written against unnormalized d(theta)
// pick up a factor 1/(2 pi); against Lebesgue area a factor 1/pi.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>

namespace conflab {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;

/// Default tolerances for the disc/circle invariants.
struct Tolerances {
  double roundtrip = 1e-12;
  double parseval = 1e-10;
  double area_unit = 1e-10;
  double monomial_norm = 1e-8;
  double idempotence = 1e-10;
  double self_adjoint = 1e-10;
  double kernel_reproduction = 1e-8;
  double cancellation = 1e-8;
};

/// Complex function on the unit circle sampled at M = 2^m equispaced angles
/// theta_k = 2 pi k / M. Samples and Fourier coefficients are both kept
/// current; the object is immutable.
class CircleFunction {
 public:
  static CircleFunction from_samples(CVec samples);
  /// Coefficients in FFT storage order: index (n mod M) holds a_n.
  static CircleFunction from_coefficient_vector(CVec coeffs);
  static CircleFunction from_coefficients(std::size_t m, const std::map<int, cd>& coeffs);
  static CircleFunction from_function(std::size_t m, const std::function<cd(double)>& f);
  static CircleFunction constant(std::size_t m, cd value);

  std::size_t size() const { return static_cast<std::size_t>(samples_.size()); }
  double theta(std::size_t k) const;
  const CVec& samples() const { return samples_; }
  const CVec& coefficient_vector() const { return coeffs_; }
  /// a_n for n in [-M/2, M/2); zero outside that band.
  cd coeff(int n) const;
  /// Largest |n| with |a_n| above `threshold` relative to max |a_n|.
  int bandwidth(double threshold = 1e-13) const;

 private:
  CircleFunction(CVec samples, CVec coeffs);
  CVec samples_;
  CVec coeffs_;
};

/// Polar tensor grid on the disc: Gauss-Legendre in r on [0, 1] carrying the
/// area factor r dr, tensored with equispaced angles. Quadrature weights are
/// normalized so that they sum to one.
class DiscGrid {
 public:
  DiscGrid(int radial, int angular);

  int radial() const { return radial_; }
  int angular() const { return angular_; }
  std::size_t size() const { return static_cast<std::size_t>(radial_) * angular_; }
  double radius(int j) const { return radii_[j]; }
  double theta(int k) const;
  cd node(int j, int k) const;
  cd node(std::size_t flat) const { return node(static_cast<int>(flat / angular_), static_cast<int>(flat % angular_)); }
  /// Normalized area weight of node (j, k); independent of k.
  double ring_weight(int j) const { return ring_weights_[j]; }
  double weight(std::size_t flat) const { return ring_weights_[flat / angular_]; }
  std::size_t index(int j, int k) const { return static_cast<std::size_t>(j) * angular_ + k; }
  /// Largest holomorphic degree whose monomial norms are integrated exactly.
  int max_exact_degree() const;

  bool operator==(const DiscGrid& other) const {
    return radial_ == other.radial_ && angular_ == other.angular_;
  }

 private:
  int radial_;
  int angular_;
  std::vector<double> radii_;
  std::vector<double> ring_weights_;
};

using GridPtr = std::shared_ptr<const DiscGrid>;
GridPtr make_grid(int radial, int angular);

/// Complex function on the disc given by values on a polar grid, optionally
/// carrying the coefficients c_n of a holomorphic expansion sum c_n z^n.
class DiscFunction {
 public:
  DiscFunction(GridPtr grid, CVec values, std::optional<CVec> holo_coeffs = std::nullopt);
  static DiscFunction from_function(GridPtr grid, const std::function<cd(cd)>& f);
  static DiscFunction from_holomorphic(GridPtr grid, CVec coeffs);

  const GridPtr& grid() const { return grid_; }
  const CVec& values() const { return values_; }
  const std::optional<CVec>& holo_coeffs() const { return holo_coeffs_; }
  /// Evaluate the holomorphic expansion at an arbitrary point.
  cd eval_holomorphic(cd z) const;

 private:
  GridPtr grid_;
  CVec values_;
  std::optional<CVec> holo_coeffs_;
};

/// Metric ball I(center, radius) = {xi : |arg xi - center| < radius} on the
/// circle with the arc-length metric.
struct Arc {
  double center = 0.0;
  double radius = 0.0;

  Arc(double center_angle, double arc_radius);
  /// Normalized length min(2r, 2 pi) / (2 pi).
  double measure() const;
  bool contains(double theta) const;
  /// Signed angular offset of theta from the center, wrapped to (-pi, pi].
  double offset(double theta) const;
};

double wrap_angle(double theta);

// -- Szego ------------------------------------------------------------------

/// Nonnegative-frequency projection sum_{n >= 0} a_n e^{i n theta}.
CircleFunction szego_project(const CircleFunction& f);

/// 1 / (1 - conj(w) z). Throws when z == w on the circle.
cd szego_kernel(cd z, cd w);

/// Direct quadrature of int f(w) / (1 - conj(w) z) d(theta~)(w). Valid for
/// |z| < 1 and for boundary z away from the support of f.
cd szego_offsupport(const CircleFunction& f, cd z);

// -- Bergman ----------------------------------------------------------------

/// 1 / (1 - conj(w) z)^2.
cd bergman_kernel(cd z, cd w);

/// c_n = (n + 1) int f(w) conj(w)^n dA(w), n = 0..degree, by grid quadrature.
CVec bergman_coefficients(const DiscFunction& f, int degree);

/// sum_{n <= degree} c_n z^n evaluated on the grid of f. Throws when the
/// angular resolution cannot separate frequencies 0..degree
/// (angular nodes must exceed 2 * degree + 1).
DiscFunction bergman_project(const DiscFunction& f, int degree);

/// Direct quadrature of int f(w) / (1 - conj(w) z)^2 dA(w) at a point z.
cd bergman_integral(const DiscFunction& f, cd z);

// -- Poisson ----------------------------------------------------------------

/// sum_n a_n r^|n| e^{i n theta} on the grid. Frequencies that the grid's
/// angular resolution cannot carry (|n| >= angular / 2) are dropped.
DiscFunction poisson_extend(const CircleFunction& f, const GridPtr& grid);

/// Poisson extension restricted to the circle of radius r, sampled on the
/// same M nodes as f.
CircleFunction poisson_ring(const CircleFunction& f, double r);

// -- norms and products -----------------------------------------------------

/// (int |f|^p w d(theta~))^{1/p}; `weight` holds one positive value per
/// sample, empty means w = 1.
double weighted_norm(const CircleFunction& f, double p, std::span<const double> weight = {});
/// (int |f|^p w dA)^{1/p} by grid quadrature.
double weighted_norm(const DiscFunction& f, double p, std::span<const double> weight = {});

/// Discrete L2 inner products <f, g> = int f conj(g).
cd inner(const CircleFunction& f, const CircleFunction& g);
cd inner(const DiscFunction& f, const DiscFunction& g);

/// Pointwise products. The circle product re-derives Fourier coefficients
/// from the product samples, so the band of the result is the sum of the
/// bands of the factors (aliasing once it exceeds M / 2).
CircleFunction multiply(const CircleFunction& f, const CircleFunction& g);
DiscFunction multiply(const DiscFunction& f, const DiscFunction& g);

CircleFunction operator+(const CircleFunction& f, const CircleFunction& g);
CircleFunction operator-(const CircleFunction& f, const CircleFunction& g);
CircleFunction operator*(cd s, const CircleFunction& f);
DiscFunction operator-(const DiscFunction& f, const DiscFunction& g);

// -- FFT helpers -------------------------------------------------------------

/// Coefficients a_n = (1/M) sum_k f_k e^{-i n theta_k} in FFT order.
CVec forward_fft(const CVec& samples);
/// Samples sum_n a_n e^{i n theta_k} from FFT-ordered coefficients.
CVec inverse_fft(const CVec& coeffs);

bool is_power_of_two(std::size_t m);

}  // namespace conflab
