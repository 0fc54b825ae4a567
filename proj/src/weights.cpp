#include "conflab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "conflab/quadrature.hpp"
#include "conflab/text.hpp"

namespace conflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRuleSize = 24;

double wrap_minus_pi(double x) {
  double t = std::fmod(x + kPi, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t - kPi;
}

// Exponents of |phi'| at boundary points where it has a power singularity.
std::vector<Singularity> derivative_singularities(const ConformalMap& map, WeightDomain domain) {
  if (domain == WeightDomain::line) {
    if (map.kind() == MapKind::halfplane_power && map.param_x() != 1.0) return {{0.0, map.param_x() - 1.0}};
    return {};
  }
  if (map.kind() == MapKind::power_sector && map.param_x() != 1.0) return {{-kPi, map.param_x() - 1.0}};
  if (map.kind() == MapKind::composite && map.members().size() == 2 &&
      map.members()[0].kind() == MapKind::cayley &&
      map.members()[0].direction() == CayleyDirection::disc_to_halfplane &&
      map.members()[1].kind() == MapKind::halfplane_power) {
    const double g = map.members()[1].param_x();
    std::vector<Singularity> out;
    if (g != 1.0) out.push_back({-kPi, g - 1.0});
    out.push_back({0.0, -g - 1.0});
    return out;
  }
  return {};
}

std::vector<Singularity> merge(std::vector<Singularity> s) {
  std::sort(s.begin(), s.end(), [](const Singularity& a, const Singularity& b) { return a.location < b.location; });
  std::vector<Singularity> out;
  for (const auto& x : s) {
    if (!out.empty() && std::abs(out.back().location - x.location) < 1e-13) {
      out.back().exponent += x.exponent;
    } else {
      out.push_back(x);
    }
  }
  std::erase_if(out, [](const Singularity& x) { return x.exponent == 0.0; });
  return out;
}

}  // namespace

WeightSpec WeightSpec::power(WeightDomain domain, double center, double exponent, double scale) {
  if (domain == WeightDomain::disc) throw ValidationError("power: use power_disc for disc weights");
  if (!(exponent > -1.0)) throw ValidationError("power: exponent must exceed -1 for local integrability");
  if (!(scale > 0.0)) throw ValidationError("power: scale must be positive");
  WeightSpec w;
  w.kind_ = Kind::power;
  w.domain_ = domain;
  w.center_ = domain == WeightDomain::circle ? wrap_minus_pi(center) : center;
  w.exponent_ = exponent;
  w.scale_ = scale;
  return w;
}

WeightSpec WeightSpec::power_disc(cd center, double exponent, double scale) {
  if (!(exponent > -2.0)) throw ValidationError("power_disc: exponent must exceed -2 for local integrability");
  if (!(scale > 0.0)) throw ValidationError("power_disc: scale must be positive");
  WeightSpec w;
  w.kind_ = Kind::power;
  w.domain_ = WeightDomain::disc;
  w.disc_center_ = center;
  w.exponent_ = exponent;
  w.scale_ = scale;
  return w;
}

WeightSpec WeightSpec::pullback(ConformalMap map, double s, WeightDomain domain) {
  const ModelDomain need = domain == WeightDomain::line ? ModelDomain::upper_halfplane : ModelDomain::disc;
  if (map.domain() != need) {
    throw ValidationError(domain == WeightDomain::line ? "pullback: line weights need a half-plane map"
                                                       : "pullback: circle and disc weights need a map of the disc");
  }
  WeightSpec w;
  w.kind_ = Kind::pullback;
  w.domain_ = domain;
  w.exponent_ = s;
  w.map_ = std::make_shared<const ConformalMap>(std::move(map));
  return w;
}

WeightSpec WeightSpec::sampled_circle(std::vector<double> values) {
  if (values.empty()) throw ValidationError("sampled weight: no values");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("sampled weight: values must be positive and finite");
  }
  WeightSpec w;
  w.kind_ = Kind::sampled;
  w.domain_ = WeightDomain::circle;
  w.samples_ = std::move(values);
  return w;
}

WeightSpec WeightSpec::sampled_disc(GridPtr grid, std::vector<double> values) {
  if (!grid || values.size() != grid->size()) throw ValidationError("sampled disc weight: size mismatch");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("sampled weight: values must be positive and finite");
  }
  WeightSpec w;
  w.kind_ = Kind::sampled;
  w.domain_ = WeightDomain::disc;
  w.samples_ = std::move(values);
  w.grid_ = std::move(grid);
  return w;
}

WeightSpec WeightSpec::product(std::vector<WeightSpec> factors) {
  if (factors.empty()) throw ValidationError("product: no factors");
  const WeightDomain d = factors.front().domain();
  bool sampled = false;
  bool analytic = false;
  for (const auto& f : factors) {
    if (f.domain() != d) throw ValidationError("product: factors live on different domains");
    (f.has_sampled_factor() ? sampled : analytic) = true;
  }
  if (d != WeightDomain::disc && sampled && analytic) {
    throw ValidationError("product: mixing sampled and analytic circle/line weights is unsupported");
  }
  if (sampled && d == WeightDomain::circle) {
    std::size_t m = 0;
    for (const auto& f : factors) {
      const std::size_t mf = f.kind() == Kind::sampled ? f.samples().size() : 0;
      if (mf && m && mf != m) throw ValidationError("product: cell counts differ");
      if (mf) m = mf;
    }
  }
  WeightSpec w;
  w.kind_ = Kind::product;
  w.domain_ = d;
  w.factors_ = std::move(factors);
  return w;
}

WeightSpec WeightSpec::pow(double s) const {
  WeightSpec w = *this;
  w.power_ *= s;
  return w;
}

bool WeightSpec::has_sampled_factor() const {
  if (kind_ == Kind::sampled) return true;
  return std::any_of(factors_.begin(), factors_.end(), [](const WeightSpec& f) { return f.has_sampled_factor(); });
}

double WeightSpec::eval_power_factor(double x) const {
  if (domain_ == WeightDomain::circle) {
    return scale_ * std::pow(2.0 * std::abs(std::sin(0.5 * (x - center_))), exponent_);
  }
  return scale_ * std::pow(std::abs(x - center_), exponent_);
}

double WeightSpec::operator()(double x) const {
  double v = 1.0;
  switch (kind_) {
    case Kind::power:
      if (domain_ == WeightDomain::disc) throw ValidationError("disc weight evaluated at a real point");
      v = eval_power_factor(x);
      break;
    case Kind::pullback:
      if (domain_ == WeightDomain::disc) throw ValidationError("disc weight evaluated at a real point");
      v = std::pow(std::abs(map_->derivative(domain_ == WeightDomain::circle ? std::polar(1.0, x) : cd(x, 0.0))),
                   exponent_);
      break;
    case Kind::sampled: {
      if (domain_ != WeightDomain::circle) throw ValidationError("sampled disc weight evaluated at a real point");
      const auto m = static_cast<double>(samples_.size());
      long long k = std::llround(x * m / kTwoPi) % static_cast<long long>(samples_.size());
      if (k < 0) k += static_cast<long long>(samples_.size());
      v = samples_[static_cast<std::size_t>(k)];
      break;
    }
    case Kind::product:
      for (const auto& f : factors_) v *= f(x);
      break;
  }
  return power_ == 1.0 ? v : std::pow(v, power_);
}

double WeightSpec::at(cd w) const {
  if (domain_ != WeightDomain::disc) throw ValidationError("circle/line weight evaluated at a disc point");
  double v = 1.0;
  switch (kind_) {
    case Kind::power:
      v = scale_ * std::pow(std::abs(w - disc_center_), exponent_);
      break;
    case Kind::pullback:
      v = std::pow(std::abs(map_->derivative(w)), exponent_);
      break;
    case Kind::sampled:
      throw ValidationError("sampled disc weight is only defined at grid nodes");
    case Kind::product:
      for (const auto& f : factors_) v *= f.at(w);
      break;
  }
  return power_ == 1.0 ? v : std::pow(v, power_);
}

double WeightSpec::at_node(const DiscGrid& grid, std::size_t i) const {
  if (domain_ != WeightDomain::disc) throw ValidationError("circle/line weight evaluated at a disc node");
  double v = 1.0;
  switch (kind_) {
    case Kind::sampled:
      if (!(*grid_ == grid)) throw ValidationError("sampled disc weight: grid mismatch");
      v = samples_[i];
      break;
    case Kind::product:
      for (const auto& f : factors_) v *= f.at_node(grid, i);
      break;
    default:
      return at(grid.node(i));
  }
  return power_ == 1.0 ? v : std::pow(v, power_);
}

std::vector<Singularity> WeightSpec::singularities() const {
  std::vector<Singularity> out;
  switch (kind_) {
    case Kind::power:
      if (domain_ != WeightDomain::disc) out.push_back({center_, exponent_});
      break;
    case Kind::pullback:
      if (domain_ != WeightDomain::disc) {
        for (auto s : derivative_singularities(*map_, domain_)) out.push_back({s.location, s.exponent * exponent_});
      }
      break;
    case Kind::sampled:
      break;
    case Kind::product:
      for (const auto& f : factors_) {
        const auto fs = f.singularities();
        out.insert(out.end(), fs.begin(), fs.end());
      }
      break;
  }
  for (auto& s : out) {
    s.exponent *= power_;
    if (domain_ == WeightDomain::circle) s.location = wrap_minus_pi(s.location);
  }
  return merge(std::move(out));
}

std::vector<Singularity> WeightSpec::boundary_singularities() const {
  std::vector<Singularity> out;
  switch (kind_) {
    case Kind::power:
      if (domain_ == WeightDomain::disc && std::abs(std::abs(disc_center_) - 1.0) < 1e-12) {
        out.push_back({std::arg(disc_center_), exponent_});
      }
      break;
    case Kind::pullback:
      if (domain_ == WeightDomain::disc) {
        for (auto s : derivative_singularities(*map_, WeightDomain::circle)) {
          out.push_back({s.location, s.exponent * exponent_});
        }
      }
      break;
    case Kind::sampled:
      break;
    case Kind::product:
      for (const auto& f : factors_) {
        const auto fs = f.boundary_singularities();
        out.insert(out.end(), fs.begin(), fs.end());
      }
      break;
  }
  for (auto& s : out) {
    s.exponent *= power_;
    s.location = wrap_minus_pi(s.location);
  }
  return merge(std::move(out));
}

std::string WeightSpec::describe() const {
  using text::format_double;
  std::ostringstream os;
  const char* dom = domain_ == WeightDomain::circle ? "circle" : domain_ == WeightDomain::line ? "line" : "disc";
  switch (kind_) {
    case Kind::power:
      os << "power(" << dom << ",center="
         << (domain_ == WeightDomain::disc ? format_complex(disc_center_) : format_double(center_))
         << ",a=" << format_double(exponent_) << ",scale=" << format_double(scale_) << ")";
      break;
    case Kind::pullback:
      os << "pullback(" << dom << ",s=" << format_double(exponent_) << ",map=" << map_->describe() << ")";
      break;
    case Kind::sampled:
      os << "sampled(" << dom << ",n=" << samples_.size() << ")";
      break;
    case Kind::product:
      os << "product(";
      for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "*" : "") << factors_[i].describe();
      os << ")";
      break;
  }
  if (power_ != 1.0) os << "^" << format_double(power_);
  return os.str();
}

// -- averages ---------------------------------------------------------------

namespace {

// Cell count of an all-sampled circle weight (a product's factors share it).
std::size_t sampled_cell_count(const WeightSpec& w) {
  if (w.kind() == WeightSpec::Kind::sampled) return w.samples().size();
  for (const auto& f : w.factors()) {
    if (const std::size_t m = sampled_cell_count(f)) return m;
  }
  return 0;
}

double sampled_average(const WeightSpec& w, std::size_t m, double e, const Region1D& region) {
  const double h = kTwoPi / static_cast<double>(m);
  auto cell_value = [&](long long k) {
    long long kk = k % static_cast<long long>(m);
    if (kk < 0) kk += static_cast<long long>(m);
    return std::pow(w(h * static_cast<double>(kk)), e);
  };
  if (region.radius >= kPi) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += cell_value(static_cast<long long>(k));
    return acc / static_cast<double>(m);
  }
  const double lo = region.center - region.radius;
  const double hi = region.center + region.radius;
  // Cell k covers [h (k - 1/2), h (k + 1/2)).
  const auto k0 = static_cast<long long>(std::floor(lo / h + 0.5));
  const auto k1 = static_cast<long long>(std::floor(hi / h + 0.5));
  double acc = 0.0;
  for (long long k = k0; k <= k1; ++k) {
    const double a = std::max(lo, h * (static_cast<double>(k) - 0.5));
    const double b = std::min(hi, h * (static_cast<double>(k) + 0.5));
    if (b > a) acc += (b - a) * cell_value(k);
  }
  return acc / (hi - lo);
}

struct Point {
  double x;
  double e;
};

class PieceIntegrator {
 public:
  PieceIntegrator(const WeightSpec& w, double e, std::vector<Point> sing) : w_(w), e_(e), sing_(std::move(sing)) {}

  double f(double x) const { return std::pow(w_(x), e_); }

  // Integral over [a, b]; `left`/`right` flag an endpoint singularity.
  double integrate(double a, double b, const Point* left, const Point* right, int depth) const {
    if (left && right) {
      const double m = 0.5 * (a + b);
      return integrate(a, m, left, nullptr, depth + 1) + integrate(m, b, nullptr, right, depth + 1);
    }
    const double len = b - a;
    if (depth < 120) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& s : sing_) {
        if (left && &s == left) continue;
        if (right && &s == right) continue;
        const double d = s.x < a ? a - s.x : (s.x > b ? s.x - b : 0.0);
        nearest = std::min(nearest, d);
      }
      if (nearest < len) {
        const double m = 0.5 * (a + b);
        return integrate(a, m, left, nullptr, depth + 1) + integrate(m, b, nullptr, right, depth + 1);
      }
    }
    double acc = 0.0;
    if (left || right) {
      const Point& s = left ? *left : *right;
      const quad::Rule rule = quad::endpoint_singular(kRuleSize, s.x, left ? len : -len, s.e);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes[i];
        acc += rule.weights[i] * f(x) / std::pow(std::abs(x - s.x), s.e);
      }
      return acc;
    }
    static const quad::Rule gl = quad::gauss_legendre(kRuleSize);
    const double half = 0.5 * len;
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < gl.size(); ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return acc * half;
  }

  const std::vector<Point>& points() const { return sing_; }

 private:
  const WeightSpec& w_;
  double e_;
  std::vector<Point> sing_;
};

double analytic_integral(const WeightSpec& w, double e, double lo, double hi) {
  std::vector<Point> pts;
  for (const auto& s : w.singularities()) {
    const double exp = s.exponent * e;
    if (w.domain() == WeightDomain::circle) {
      for (int j = -2; j <= 2; ++j) pts.push_back({s.location + kTwoPi * j, exp});
    } else {
      pts.push_back({s.location, exp});
    }
  }
  const double snap = 1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)});
  std::vector<double> breaks{lo, hi};
  for (auto& p : pts) {
    if (std::abs(p.x - lo) <= snap) p.x = lo;
    if (std::abs(p.x - hi) <= snap) p.x = hi;
    if (p.x >= lo && p.x <= hi && !(p.e > -1.0)) {
      throw ValidationError("weight power not locally integrable near " + text::format_double(p.x));
    }
    if (p.x > lo && p.x < hi) breaks.push_back(p.x);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  PieceIntegrator integ(w, e, std::move(pts));
  auto find = [&](double x) -> const Point* {
    for (const auto& p : integ.points()) {
      if (p.x == x) return &p;
    }
    return nullptr;
  };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    acc += integ.integrate(breaks[i], breaks[i + 1], find(breaks[i]), find(breaks[i + 1]), 0);
  }
  return acc;
}

}  // namespace

double weight_average(const WeightSpec& w, double e, const Region1D& region) {
  if (w.domain() == WeightDomain::disc) throw ValidationError("weight_average: disc weights use Carleson regions");
  if (!(region.radius > 0.0)) throw ValidationError("weight_average: radius must be positive");
  if (w.has_sampled_factor()) {
    if (w.domain() != WeightDomain::circle) throw ValidationError("sampled weights live on the circle or disc");
    const std::size_t m = sampled_cell_count(w);
    if (m == 0) throw ValidationError("weight_average: unsupported sampled product");
    return sampled_average(w, m, e, region);
  }
  if (w.kind() == WeightSpec::Kind::power) {
    const auto s = w.singularities();
    if (std::all_of(s.begin(), s.end(), [](const Singularity& x) { return x.exponent == 0.0; })) {
      return std::pow(w(region.center), e);  // constant
    }
  }
  double lo = region.center - region.radius;
  double hi = region.center + region.radius;
  if (w.domain() == WeightDomain::circle && region.radius >= kPi) {
    lo = region.center - kPi;
    hi = region.center + kPi;
  }
  const double avg = analytic_integral(w, e, lo, hi) / (hi - lo);
  if (!std::isfinite(avg)) throw NumericalError("weight_average: non-finite quadrature");
  return avg;
}

std::vector<double> cell_averages(const WeightSpec& w, std::size_t m, double e) {
  if (w.domain() != WeightDomain::circle) throw ValidationError("cell_averages: circle weights only");
  std::vector<double> out(m);
  const double h = kTwoPi / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = weight_average(w, e, {h * static_cast<double>(k), 0.5 * h});
  return out;
}

}  // namespace conflab
