#include "conflab/disc_core.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <vector>

#include "conflab/error.hpp"
#include "conflab/quadrature.hpp"

namespace conflab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t fft_index(int n, std::size_t m) {
  const auto mm = static_cast<long long>(m);
  long long idx = n % mm;
  if (idx < 0) idx += mm;
  return static_cast<std::size_t>(idx);
}

// Frequency carried by FFT slot `idx` of a length-m transform, in [-m/2, m/2).
int slot_frequency(std::size_t idx, std::size_t m) {
  const auto i = static_cast<long long>(idx);
  const auto mm = static_cast<long long>(m);
  return static_cast<int>(i < mm / 2 ? i : i - mm);
}

}  // namespace

bool is_power_of_two(std::size_t m) { return m >= 2 && (m & (m - 1)) == 0; }

CVec forward_fft(const CVec& samples) {
  const auto m = samples.size();
  std::vector<cd> in(samples.data(), samples.data() + m);
  std::vector<cd> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  CVec coeffs(m);
  const double scale = 1.0 / static_cast<double>(m);
  for (Eigen::Index i = 0; i < m; ++i) coeffs(i) = out[i] * scale;
  return coeffs;
}

CVec inverse_fft(const CVec& coeffs) {
  const auto m = coeffs.size();
  std::vector<cd> in(coeffs.data(), coeffs.data() + m);
  std::vector<cd> out;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, in);
  CVec samples(m);
  for (Eigen::Index i = 0; i < m; ++i) samples(i) = out[i];
  return samples;
}

// -- CircleFunction ---------------------------------------------------------

CircleFunction::CircleFunction(CVec samples, CVec coeffs)
    : samples_(std::move(samples)), coeffs_(std::move(coeffs)) {}

CircleFunction CircleFunction::from_samples(CVec samples) {
  if (!is_power_of_two(static_cast<std::size_t>(samples.size()))) {
    throw ValidationError("CircleFunction: sample count must be a power of two");
  }
  CVec coeffs = forward_fft(samples);
  return CircleFunction(std::move(samples), std::move(coeffs));
}

CircleFunction CircleFunction::from_coefficient_vector(CVec coeffs) {
  if (!is_power_of_two(static_cast<std::size_t>(coeffs.size()))) {
    throw ValidationError("CircleFunction: coefficient count must be a power of two");
  }
  CVec samples = inverse_fft(coeffs);
  return CircleFunction(std::move(samples), std::move(coeffs));
}

CircleFunction CircleFunction::from_coefficients(std::size_t m, const std::map<int, cd>& coeffs) {
  if (!is_power_of_two(m)) throw ValidationError("CircleFunction: M must be a power of two");
  CVec c = CVec::Zero(static_cast<Eigen::Index>(m));
  const int half = static_cast<int>(m / 2);
  for (const auto& [n, a] : coeffs) {
    if (n < -half || n >= half) throw ValidationError("CircleFunction: frequency outside [-M/2, M/2)");
    c(static_cast<Eigen::Index>(fft_index(n, m))) += a;
  }
  return from_coefficient_vector(std::move(c));
}

CircleFunction CircleFunction::from_function(std::size_t m, const std::function<cd(double)>& f) {
  if (!is_power_of_two(m)) throw ValidationError("CircleFunction: M must be a power of two");
  CVec s(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) s(static_cast<Eigen::Index>(k)) = f(kTwoPi * k / m);
  return from_samples(std::move(s));
}

CircleFunction CircleFunction::constant(std::size_t m, cd value) {
  return from_coefficients(m, {{0, value}});
}

double CircleFunction::theta(std::size_t k) const { return kTwoPi * k / size(); }

cd CircleFunction::coeff(int n) const {
  const int half = static_cast<int>(size() / 2);
  if (n < -half || n >= half) return 0.0;
  return coeffs_(static_cast<Eigen::Index>(fft_index(n, size())));
}

int CircleFunction::bandwidth(double threshold) const {
  const double peak = coeffs_.cwiseAbs().maxCoeff();
  if (peak == 0.0) return 0;
  int band = 0;
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (std::abs(coeffs_(i)) > threshold * peak) {
      band = std::max(band, std::abs(slot_frequency(static_cast<std::size_t>(i), size())));
    }
  }
  return band;
}

// -- DiscGrid ---------------------------------------------------------------

DiscGrid::DiscGrid(int radial, int angular) : radial_(radial), angular_(angular) {
  if (radial < 1 || angular < 1) throw ValidationError("DiscGrid: node counts must be positive");
  const quad::Rule rule = quad::gauss_legendre(radial);
  radii_.resize(radial);
  ring_weights_.resize(radial);
  for (int j = 0; j < radial; ++j) {
    const double r = 0.5 * (1.0 + rule.nodes[j]);
    radii_[j] = r;
    // 2 r dr over [0,1] integrates to 1; the half-interval Jacobian is 1/2.
    ring_weights_[j] = 2.0 * r * 0.5 * rule.weights[j] / angular;
  }
}

double DiscGrid::theta(int k) const { return kTwoPi * k / angular_; }

cd DiscGrid::node(int j, int k) const { return std::polar(radii_[j], theta(k)); }

int DiscGrid::max_exact_degree() const { return std::min(radial_ - 1, (angular_ - 2) / 2); }

GridPtr make_grid(int radial, int angular) { return std::make_shared<const DiscGrid>(radial, angular); }

// -- DiscFunction -----------------------------------------------------------

DiscFunction::DiscFunction(GridPtr grid, CVec values, std::optional<CVec> holo_coeffs)
    : grid_(std::move(grid)), values_(std::move(values)), holo_coeffs_(std::move(holo_coeffs)) {
  if (!grid_) throw ValidationError("DiscFunction: null grid");
  if (static_cast<std::size_t>(values_.size()) != grid_->size()) {
    throw ValidationError("DiscFunction: value count does not match grid");
  }
}

DiscFunction DiscFunction::from_function(GridPtr grid, const std::function<cd(cd)>& f) {
  CVec v(static_cast<Eigen::Index>(grid->size()));
  for (std::size_t i = 0; i < grid->size(); ++i) v(static_cast<Eigen::Index>(i)) = f(grid->node(i));
  return DiscFunction(std::move(grid), std::move(v));
}

namespace {

CVec evaluate_holomorphic_on_grid(const DiscGrid& grid, const CVec& coeffs) {
  const int k_ang = grid.angular();
  if (coeffs.size() > k_ang / 2) {
    throw ValidationError("holomorphic degree exceeds the grid's angular resolution");
  }
  CVec values(static_cast<Eigen::Index>(grid.size()));
  for (int j = 0; j < grid.radial(); ++j) {
    const double r = grid.radius(j);
    CVec ring = CVec::Zero(k_ang);
    double rn = 1.0;
    for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
      ring(n) = coeffs(n) * rn;
      rn *= r;
    }
    values.segment(static_cast<Eigen::Index>(grid.index(j, 0)), k_ang) = inverse_fft(ring);
  }
  return values;
}

}  // namespace

DiscFunction DiscFunction::from_holomorphic(GridPtr grid, CVec coeffs) {
  CVec values = evaluate_holomorphic_on_grid(*grid, coeffs);
  return DiscFunction(std::move(grid), std::move(values), std::move(coeffs));
}

cd DiscFunction::eval_holomorphic(cd z) const {
  if (!holo_coeffs_) throw ValidationError("DiscFunction: no holomorphic expansion");
  cd acc = 0.0;
  for (Eigen::Index n = holo_coeffs_->size() - 1; n >= 0; --n) acc = acc * z + (*holo_coeffs_)(n);
  return acc;
}

// -- Arc --------------------------------------------------------------------

double wrap_angle(double theta) {
  double t = std::fmod(theta + std::numbers::pi, kTwoPi);
  if (t <= 0.0) t += kTwoPi;
  return t - std::numbers::pi;
}

Arc::Arc(double center_angle, double arc_radius) : center(center_angle), radius(arc_radius) {
  if (!(arc_radius > 0.0) || !(arc_radius < kTwoPi)) {
    throw ValidationError("Arc: radius must lie in (0, 2 pi)");
  }
}

double Arc::measure() const { return std::min(2.0 * radius, kTwoPi) / kTwoPi; }

double Arc::offset(double theta) const { return wrap_angle(theta - center); }

bool Arc::contains(double theta) const { return std::abs(offset(theta)) < radius; }

// -- Szego ------------------------------------------------------------------

CircleFunction szego_project(const CircleFunction& f) {
  CVec c = f.coefficient_vector();
  const std::size_t m = f.size();
  for (std::size_t i = m / 2; i < m; ++i) c(static_cast<Eigen::Index>(i)) = 0.0;
  return CircleFunction::from_coefficient_vector(std::move(c));
}

cd szego_kernel(cd z, cd w) {
  const cd denom = 1.0 - std::conj(w) * z;
  if (std::abs(denom) < 1e-14) throw ValidationError("szego_kernel: z == w on the circle");
  return 1.0 / denom;
}

cd szego_offsupport(const CircleFunction& f, cd z) {
  const std::size_t m = f.size();
  const bool on_circle = std::abs(std::abs(z) - 1.0) < 1e-14;
  cd acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const cd fk = f.samples()(static_cast<Eigen::Index>(k));
    if (fk == 0.0) continue;
    const cd w = std::polar(1.0, f.theta(k));
    if (on_circle && std::abs(w - z) < 1e-12) {
      throw ValidationError("szego_offsupport: z lies on the support of f");
    }
    acc += fk / (1.0 - std::conj(w) * z);
  }
  return acc / static_cast<double>(m);
}

// -- Bergman ----------------------------------------------------------------

cd bergman_kernel(cd z, cd w) {
  const cd denom = 1.0 - std::conj(w) * z;
  if (std::abs(denom) < 1e-14) throw ValidationError("bergman_kernel: singular point");
  return 1.0 / (denom * denom);
}

CVec bergman_coefficients(const DiscFunction& f, int degree) {
  const DiscGrid& grid = *f.grid();
  if (degree < 0) throw ValidationError("bergman_project: negative degree");
  if (grid.angular() <= 2 * degree + 1) {
    throw ValidationError("bergman_project: angular nodes must exceed 2N+1");
  }
  const int k_ang = grid.angular();
  CVec coeffs = CVec::Zero(degree + 1);
  for (int j = 0; j < grid.radial(); ++j) {
    const CVec ring = forward_fft(f.values().segment(static_cast<Eigen::Index>(grid.index(j, 0)), k_ang));
    const double r = grid.radius(j);
    // ring weight times K recovers 2 r w_j; forward_fft already divided by K.
    const double w = grid.ring_weight(j) * k_ang;
    double rn = 1.0;
    for (int n = 0; n <= degree; ++n) {
      coeffs(n) += w * rn * ring(n);
      rn *= r;
    }
  }
  for (int n = 0; n <= degree; ++n) coeffs(n) *= static_cast<double>(n + 1);
  return coeffs;
}

DiscFunction bergman_project(const DiscFunction& f, int degree) {
  CVec coeffs = bergman_coefficients(f, degree);
  return DiscFunction::from_holomorphic(f.grid(), std::move(coeffs));
}

cd bergman_integral(const DiscFunction& f, cd z) {
  const DiscGrid& grid = *f.grid();
  cd acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    acc += grid.weight(i) * f.values()(static_cast<Eigen::Index>(i)) * bergman_kernel(z, grid.node(i));
  }
  return acc;
}

// -- Poisson ----------------------------------------------------------------

DiscFunction poisson_extend(const CircleFunction& f, const GridPtr& grid) {
  const int k_ang = grid->angular();
  const std::size_t m = f.size();
  const int band = static_cast<int>(std::min<std::size_t>(m, static_cast<std::size_t>(k_ang)) / 2);
  CVec values(static_cast<Eigen::Index>(grid->size()));
  for (int j = 0; j < grid->radial(); ++j) {
    const double r = grid->radius(j);
    CVec ring = CVec::Zero(k_ang);
    for (int n = -band + 1; n < band; ++n) {
      ring(static_cast<Eigen::Index>(fft_index(n, static_cast<std::size_t>(k_ang)))) =
          f.coeff(n) * std::pow(r, std::abs(n));
    }
    values.segment(static_cast<Eigen::Index>(grid->index(j, 0)), k_ang) = inverse_fft(ring);
  }
  return DiscFunction(grid, std::move(values));
}

CircleFunction poisson_ring(const CircleFunction& f, double r) {
  if (!(r >= 0.0) || r > 1.0) throw ValidationError("poisson_ring: radius must lie in [0, 1]");
  CVec c = f.coefficient_vector();
  const std::size_t m = f.size();
  for (std::size_t i = 0; i < m; ++i) {
    c(static_cast<Eigen::Index>(i)) *= std::pow(r, std::abs(slot_frequency(i, m)));
  }
  return CircleFunction::from_coefficient_vector(std::move(c));
}

// -- norms and products -----------------------------------------------------

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("weighted_norm: exponent must be >= 1");
}

void check_weight(std::span<const double> weight, std::size_t n) {
  if (weight.empty()) return;
  if (weight.size() != n) throw ValidationError("weighted_norm: weight size mismatch");
  for (double w : weight) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("weighted_norm: nonpositive weight sample");
  }
}

}  // namespace

double weighted_norm(const CircleFunction& f, double p, std::span<const double> weight) {
  check_exponent(p);
  check_weight(weight, f.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double w = weight.empty() ? 1.0 : weight[k];
    acc += std::pow(std::abs(f.samples()(static_cast<Eigen::Index>(k))), p) * w;
  }
  return std::pow(acc / static_cast<double>(f.size()), 1.0 / p);
}

double weighted_norm(const DiscFunction& f, double p, std::span<const double> weight) {
  check_exponent(p);
  const DiscGrid& grid = *f.grid();
  check_weight(weight, grid.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = weight.empty() ? 1.0 : weight[i];
    acc += grid.weight(i) * std::pow(std::abs(f.values()(static_cast<Eigen::Index>(i))), p) * w;
  }
  return std::pow(acc, 1.0 / p);
}

cd inner(const CircleFunction& f, const CircleFunction& g) {
  if (f.size() != g.size()) throw ValidationError("inner: grid mismatch");
  // Eigen's dot conjugates its left operand.
  return g.samples().dot(f.samples()) / static_cast<double>(f.size());
}

cd inner(const DiscFunction& f, const DiscFunction& g) {
  if (!(*f.grid() == *g.grid())) throw ValidationError("inner: grid mismatch");
  const DiscGrid& grid = *f.grid();
  cd acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    acc += grid.weight(i) * f.values()(ii) * std::conj(g.values()(ii));
  }
  return acc;
}

CircleFunction multiply(const CircleFunction& f, const CircleFunction& g) {
  if (f.size() != g.size()) throw ValidationError("multiply: grid mismatch");
  return CircleFunction::from_samples(f.samples().cwiseProduct(g.samples()));
}

DiscFunction multiply(const DiscFunction& f, const DiscFunction& g) {
  if (!(*f.grid() == *g.grid())) throw ValidationError("multiply: grid mismatch");
  return DiscFunction(f.grid(), f.values().cwiseProduct(g.values()));
}

CircleFunction operator+(const CircleFunction& f, const CircleFunction& g) {
  if (f.size() != g.size()) throw ValidationError("CircleFunction +: grid mismatch");
  return CircleFunction::from_coefficient_vector(f.coefficient_vector() + g.coefficient_vector());
}

CircleFunction operator-(const CircleFunction& f, const CircleFunction& g) {
  if (f.size() != g.size()) throw ValidationError("CircleFunction -: grid mismatch");
  return CircleFunction::from_coefficient_vector(f.coefficient_vector() - g.coefficient_vector());
}

CircleFunction operator*(cd s, const CircleFunction& f) {
  return CircleFunction::from_coefficient_vector(s * f.coefficient_vector());
}

DiscFunction operator-(const DiscFunction& f, const DiscFunction& g) {
  if (!(*f.grid() == *g.grid())) throw ValidationError("DiscFunction -: grid mismatch");
  return DiscFunction(f.grid(), f.values() - g.values());
}

}  // namespace conflab
