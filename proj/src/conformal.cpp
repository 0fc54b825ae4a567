#include "conflab/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace conflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCornerTol = 1e-12;

// Principal power with arg in (-pi, pi]; a signed zero imaginary part is
// treated as +0 so the negative real axis maps to arg = pi.
cd pow_principal(cd z, double e) {
  const double mod = std::abs(z);
  if (mod == 0.0) return 0.0;
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  const double arg = std::atan2(im, z.real());
  return std::polar(std::pow(mod, e), e * arg);
}

}  // namespace

ConformalMap ConformalMap::identity() { return ConformalMap(); }

ConformalMap ConformalMap::moebius(cd a, cd lambda) {
  if (!(std::abs(a) < 1.0)) throw ValidationError("moebius: |a| must be < 1");
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw ValidationError("moebius: |lambda| must be 1");
  ConformalMap m;
  m.kind_ = MapKind::moebius;
  m.a_ = a;
  m.b_ = lambda;
  return m;
}

ConformalMap ConformalMap::cayley(CayleyDirection direction) {
  ConformalMap m;
  m.kind_ = MapKind::cayley;
  m.direction_ = direction;
  return m;
}

ConformalMap ConformalMap::power_sector(double beta, double rotation, cd translation) {
  if (!(beta > 0.0 && beta < 2.0)) throw ValidationError("power_sector: beta must lie in (0, 2)");
  ConformalMap m;
  m.kind_ = MapKind::power_sector;
  m.x_ = beta;
  m.y_ = rotation;
  m.a_ = translation;
  return m;
}

ConformalMap ConformalMap::halfplane_power(cd c, double gamma, cd shift, std::string label) {
  if (c == 0.0) throw ValidationError("halfplane_power: c must be nonzero");
  if (!(gamma > 0.0 && gamma <= 2.0)) throw ValidationError("halfplane_power: gamma must lie in (0, 2]");
  ConformalMap m;
  m.kind_ = MapKind::halfplane_power;
  m.a_ = c;
  m.x_ = gamma;
  m.b_ = shift;
  m.label_ = std::move(label);
  return m;
}

ConformalMap ConformalMap::holder_power(double kappa, double alpha, double rho) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("holder_power: alpha must lie in (0, 1)");
  if (!(kappa > 0.0) || !(kappa * (1.0 + alpha) * std::pow(2.0, alpha) < 1.0)) {
    throw ValidationError("holder_power: need 0 < kappa (1 + alpha) 2^alpha < 1");
  }
  ConformalMap m;
  m.kind_ = MapKind::holder_power;
  m.x_ = kappa;
  m.y_ = alpha;
  m.a_ = std::polar(1.0, rho);
  return m;
}

ConformalMap ConformalMap::composite(std::vector<ConformalMap> members) {
  if (members.empty()) throw ValidationError("composite: no members");
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    const ModelDomain out = members[i].codomain();
    if (out == ModelDomain::plane || out != members[i + 1].domain()) {
      throw ValidationError("composite: member " + std::to_string(i + 1) + " does not feed member " +
                            std::to_string(i + 2));
    }
  }
  ConformalMap m;
  m.kind_ = MapKind::composite;
  m.members_ = std::move(members);
  return m;
}

ModelDomain ConformalMap::domain() const {
  switch (kind_) {
    case MapKind::cayley:
      return direction_ == CayleyDirection::disc_to_halfplane ? ModelDomain::disc : ModelDomain::upper_halfplane;
    case MapKind::halfplane_power:
      return ModelDomain::upper_halfplane;
    case MapKind::composite:
      return members_.front().domain();
    default:
      return ModelDomain::disc;
  }
}

ModelDomain ConformalMap::codomain() const {
  switch (kind_) {
    case MapKind::identity:
    case MapKind::moebius:
      return ModelDomain::disc;
    case MapKind::cayley:
      return direction_ == CayleyDirection::disc_to_halfplane ? ModelDomain::upper_halfplane : ModelDomain::disc;
    case MapKind::composite:
      return members_.back().codomain();
    default:
      return ModelDomain::plane;
  }
}

bool ConformalMap::dini_smooth() const {
  switch (kind_) {
    case MapKind::identity:
    case MapKind::moebius:
    case MapKind::holder_power:
      return true;
    case MapKind::power_sector:
      return x_ == 1.0;
    case MapKind::composite:
      return domain() == ModelDomain::disc &&
             std::all_of(members_.begin(), members_.end(), [](const ConformalMap& m) { return m.dini_smooth(); });
    default:
      return false;
  }
}

std::optional<double> ConformalMap::holder_exponent() const {
  switch (kind_) {
    case MapKind::identity:
    case MapKind::moebius:
      return 1.0;
    case MapKind::holder_power:
      return y_;
    case MapKind::power_sector:
      return x_ == 1.0 ? std::optional<double>(1.0) : std::nullopt;
    case MapKind::composite: {
      double alpha = 1.0;
      for (const auto& m : members_) {
        const auto e = m.holder_exponent();
        if (!e) return std::nullopt;
        alpha = std::min(alpha, *e);
      }
      return alpha;
    }
    default:
      return std::nullopt;
  }
}

void ConformalMap::check_input(cd z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("map input is not finite");
  if (domain() == ModelDomain::disc) {
    if (std::abs(z) > 1.0 + 1e-12) throw ValidationError("point outside the closed unit disc");
  } else if (z.imag() < -1e-12) {
    throw ValidationError("point outside the closed upper half-plane");
  }
}

cd ConformalMap::eval(cd z) const {
  check_input(z);
  return eval_unchecked(z);
}

cd ConformalMap::derivative(cd z) const {
  check_input(z);
  return derivative_unchecked(z);
}

cd ConformalMap::eval_unchecked(cd z) const {
  switch (kind_) {
    case MapKind::identity:
      return z;
    case MapKind::moebius:
      return b_ * (z - a_) / (1.0 - std::conj(a_) * z);
    case MapKind::cayley:
      if (direction_ == CayleyDirection::disc_to_halfplane) {
        if (std::abs(1.0 - z) < kCornerTol) throw CornerPointError("cayley: pole at z = 1");
        return cd(0.0, 1.0) * (1.0 + z) / (1.0 - z);
      }
      return (z - cd(0.0, 1.0)) / (z + cd(0.0, 1.0));
    case MapKind::power_sector:
      return a_ + std::polar(1.0, y_) * pow_principal(1.0 + z, x_);
    case MapKind::halfplane_power:
      return a_ * pow_principal(z, x_) + b_;
    case MapKind::holder_power:
      return z + x_ * a_ * pow_principal(1.0 - std::conj(a_) * z, 1.0 + y_);
    case MapKind::composite: {
      cd w = z;
      for (const auto& m : members_) w = m.eval_unchecked(w);
      return w;
    }
  }
  return z;
}

cd ConformalMap::derivative_unchecked(cd z) const {
  switch (kind_) {
    case MapKind::identity:
      return 1.0;
    case MapKind::moebius: {
      const cd d = 1.0 - std::conj(a_) * z;
      return b_ * (1.0 - std::norm(a_)) / (d * d);
    }
    case MapKind::cayley:
      if (direction_ == CayleyDirection::disc_to_halfplane) {
        if (std::abs(1.0 - z) < kCornerTol) throw CornerPointError("cayley: pole at z = 1");
        return cd(0.0, 2.0) / ((1.0 - z) * (1.0 - z));
      } else {
        const cd d = z + cd(0.0, 1.0);
        return cd(0.0, 2.0) / (d * d);
      }
    case MapKind::power_sector:
      if (x_ != 1.0 && std::abs(1.0 + z) < kCornerTol) throw CornerPointError("power_sector: corner point z = -1");
      return std::polar(1.0, y_) * x_ * pow_principal(1.0 + z, x_ - 1.0);
    case MapKind::halfplane_power:
      if (x_ != 1.0 && std::abs(z) < kCornerTol) throw CornerPointError("halfplane_power: corner point z = 0");
      return a_ * x_ * pow_principal(z, x_ - 1.0);
    case MapKind::holder_power:
      return 1.0 - x_ * (1.0 + y_) * pow_principal(1.0 - std::conj(a_) * z, y_);
    case MapKind::composite: {
      cd w = z;
      cd d = 1.0;
      for (const auto& m : members_) {
        d *= m.derivative_unchecked(w);
        w = m.eval_unchecked(w);
      }
      return d;
    }
  }
  return 1.0;
}

// -- boundary traces --------------------------------------------------------

namespace {

BoundaryTrace sample_trace(const ConformalMap& map, std::size_t m, double offset) {
  BoundaryTrace t;
  const auto n = static_cast<Eigen::Index>(m);
  t.node_offset = offset;
  t.theta_nodes.resize(n);
  t.phi_vals.resize(n);
  t.dphi_vals.resize(n);
  t.sqrt_dphi_vals.resize(n);
  t.arclength_density.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m) + offset;
    const cd z = std::polar(1.0, theta);
    t.theta_nodes(k) = theta;
    t.phi_vals(k) = map.eval(z);
    t.dphi_vals(k) = map.derivative(z);
    t.arclength_density(k) = std::abs(t.dphi_vals(k));
  }
  return t;
}

double wrap_pi(double x) { return std::remainder(x, 2.0 * kPi); }

}  // namespace

BoundaryTrace boundary_trace(const ConformalMap& map, std::size_t m, CornerPolicy policy) {
  if (map.domain() != ModelDomain::disc) {
    throw ValidationError("boundary_trace: map must be defined on the disc (compose with cayley)");
  }
  if (m < 2 || (m & (m - 1)) != 0) throw ValidationError("boundary_trace: M must be a power of two");
  BoundaryTrace t;
  try {
    t = sample_trace(map, m, 0.0);
  } catch (const CornerPointError& e) {
    if (policy == CornerPolicy::reject) throw NumericalError(std::string("corner preimage on node set: ") + e.what());
    try {
      t = sample_trace(map, m, kPi / static_cast<double>(m));
    } catch (const CornerPointError& e2) {
      throw NumericalError(std::string("corner preimage on both node sets: ") + e2.what());
    }
  }

  const auto n = static_cast<Eigen::Index>(m);
  double unwrapped = std::arg(t.dphi_vals(0));
  const double start = unwrapped;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k > 0) unwrapped += wrap_pi(std::arg(t.dphi_vals(k)) - std::arg(t.dphi_vals(k - 1)));
    t.sqrt_dphi_vals(k) = std::polar(std::sqrt(t.arclength_density(k)), 0.5 * unwrapped);
  }
  const double closing = unwrapped + wrap_pi(std::arg(t.dphi_vals(0)) - std::arg(t.dphi_vals(n - 1))) - start;
  if (std::abs(closing) > kPi) {
    throw NumericalError("boundary_trace: phi' winds around 0; no continuous square-root branch");
  }
  return t;
}

bool boundary_injective(const BoundaryTrace& trace, double tol) {
  const auto n = trace.phi_vals.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return trace.phi_vals(a).real() < trace.phi_vals(b).real(); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const cd zi = trace.phi_vals(order[i]);
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const cd zj = trace.phi_vals(order[j]);
      if (zj.real() - zi.real() >= tol) break;
      if (std::abs(zj - zi) < tol) return false;
    }
  }
  return true;
}

int boundary_winding(const BoundaryTrace& trace, cd point) {
  const auto n = trace.phi_vals.size();
  double total = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const cd a = trace.phi_vals(k) - point;
    const cd b = trace.phi_vals((k + 1) % n) - point;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

// -- example domain ---------------------------------------------------------

ExampleDomain example_domain() {
  const cd em = std::polar(1.0, -kPi / 4.0);
  const cd ep = std::polar(1.0, kPi / 4.0);
  const cd i(0.0, 1.0);
  ExampleDomain d;
  d.maps = {
      ConformalMap::halfplane_power(em, 1.5, -i, "Phi1"),
      ConformalMap::halfplane_power(-em, 1.5, i, "Phi2"),
      ConformalMap::halfplane_power(em, 0.5, -2.0, "Phi3"),
      ConformalMap::halfplane_power(-em, 0.5, 2.0, "Phi4"),
      ConformalMap::halfplane_power(ep, 0.5, -cd(0.5, 1.5), "Phi5"),
      ConformalMap::halfplane_power(ep, 0.5, cd(0.5, -1.5), "Phi6"),
      ConformalMap::halfplane_power(-ep, 0.5, cd(-0.5, 1.5), "Phi7"),
      ConformalMap::halfplane_power(-ep, 0.5, cd(0.5, 1.5), "Phi8"),
  };
  d.nonconvex_points = {i, -i};
  return d;
}

ConformalMap named_map(const std::string& name) {
  if (name == "identity") return ConformalMap::identity();
  if (name == "moebius") return ConformalMap::moebius(cd(0.3, 0.2), 1.0);
  if (name == "cayley") return ConformalMap::cayley(CayleyDirection::disc_to_halfplane);
  if (name == "sector") return ConformalMap::power_sector(0.75, 0.0, 0.0);
  if (name == "holder") {
    const double alpha = 0.5;
    return ConformalMap::holder_power(0.5 / ((1.0 + alpha) * std::pow(2.0, alpha)), alpha, 0.0);
  }
  for (const auto& m : example_domain().maps) {
    if (m.label() == name) return m;
  }
  throw ValidationError("unknown map name '" + name + "'");
}

}  // namespace conflab
