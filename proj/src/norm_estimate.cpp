#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "conflab/spectral.hpp"
#include "conflab/text.hpp"

namespace conflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double lp_norm(const CVec& x, const Eigen::VectorXd& mu, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += mu(i) * std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

// |x|^{q-2} x, with 0 at zeros.
CVec duality_map(const CVec& x, double q) {
  CVec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    out(i) = a > 0.0 ? std::pow(a, q - 2.0) * x(i) : cd(0.0);
  }
  return out;
}

struct Best {
  double ratio = 0.0;
  std::string id;
  CVec f;
};

class Battery {
 public:
  Battery(const SampledOperator& op, double p) : op_(op), p_(p) {}

  void offer(const CVec& f, const std::string& id) {
    const double den = lp_norm(f, op_.src_measure, p_);
    if (!(den > 0.0) || !std::isfinite(den)) return;
    const double r = lp_norm(op_.apply(f), op_.dst_measure, p_) / den;
    if (std::isfinite(r) && (!any_ || r > best_.ratio)) best_ = {r, id, f};
    any_ = true;
  }
  const Best& best() const { return best_; }
  bool any() const { return any_; }

 private:
  const SampledOperator& op_;
  double p_;
  Best best_;
  bool any_ = false;
};

}  // namespace

SampledOperator sampled_operator(const OperatorMatrix& a) {
  SampledOperator op;
  op.apply = [a](const CVec& x) { return a.apply(x); };
  op.adjoint = [a](const CVec& y) { return a.adjoint_apply(y); };
  op.src_measure = a.src.gram;
  op.dst_measure = a.dst.gram;
  if (a.src.kind == Basis::Kind::circle_nodal) {
    const auto m = a.src.size();
    op.src_angles = Eigen::VectorXd::LinSpaced(m, 0.0, kTwoPi * static_cast<double>(m - 1) / static_cast<double>(m));
  }
  op.name = a.name;
  return op;
}

SampledOperator szego_sampled(std::size_t m, const WeightSpec* weight) {
  if (!is_power_of_two(m)) throw ValidationError("szego_sampled: M must be a power of two");
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::VectorXd nu = Eigen::VectorXd::Ones(n);
  if (weight) {
    if (weight->domain() != WeightDomain::circle) throw ValidationError("szego_sampled: circle weight required");
    const std::vector<double> avg = cell_averages(*weight, m);
    for (Eigen::Index k = 0; k < n; ++k) nu(k) = avg[static_cast<std::size_t>(k)];
    if (nu.minCoeff() <= 0.0) throw ValidationError("szego_sampled: weight vanishes on a cell");
  }
  SampledOperator op;
  op.apply = [](const CVec& x) { return szego_project(CircleFunction::from_samples(x)).samples(); };
  // S0 is self-adjoint for the uniform measure, so the nu-weighted adjoint is nu^{-1} S0 nu.
  op.adjoint = [nu](const CVec& y) {
    const CVec t = szego_project(CircleFunction::from_samples(nu.cast<cd>().cwiseProduct(y))).samples();
    return CVec(t.cwiseQuotient(nu.cast<cd>()));
  };
  op.src_measure = nu / static_cast<double>(m);
  op.dst_measure = op.src_measure;
  op.src_angles = Eigen::VectorXd::LinSpaced(n, 0.0, kTwoPi * static_cast<double>(m - 1) / static_cast<double>(m));
  op.name = weight ? "S0[" + weight->describe() + "]" : "S0";
  return op;
}

NormEstimate norm_estimate_lp(const SampledOperator& op, double p, const BatteryParams& params,
                              const WeightSpec* weight, double upper_formula) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("norm estimate: p must lie in (1, inf)");
  if (params.epsilon < 0.0) throw ValidationError("norm estimate: epsilon must be nonnegative");
  const Eigen::Index n = op.src_measure.size();
  if (n == 0) throw ValidationError("norm estimate: empty source");
  const bool circle = op.src_angles.size() == n;
  if (weight && !circle) throw ValidationError("norm estimate: witnesses need a circle source");

  Battery battery(op, p);
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal;

  for (int i = 0; i < params.random_count; ++i) {
    CVec f(n);
    if (circle) {
      f.setZero();
      for (int k = -params.random_band; k <= params.random_band; ++k) {
        const cd a(normal(rng), normal(rng));
        for (Eigen::Index j = 0; j < n; ++j) f(j) += a * std::polar(1.0, k * op.src_angles(j));
      }
    } else {
      for (Eigen::Index j = 0; j < n; ++j) f(j) = cd(normal(rng), normal(rng));
    }
    battery.offer(f, "random#" + std::to_string(i));
  }

  if (circle) {
    std::vector<double> centers;
    for (int j = 0; j < params.arc_centers; ++j) centers.push_back(kTwoPi * j / params.arc_centers);
    if (weight) {
      for (const Singularity& s : weight->singularities()) centers.push_back(s.location);
    }
    for (int k = 1; k <= params.arc_levels; ++k) {
      const double r = kPi * std::ldexp(1.0, -k);
      for (double c : centers) {
        const Arc arc(c, r);
        CVec f(n);
        for (Eigen::Index j = 0; j < n; ++j) f(j) = arc.contains(op.src_angles(j)) ? 1.0 : 0.0;
        battery.offer(f, "arc(c=" + text::format_double(c) + ",r=" + text::format_double(r) + ")");
      }
    }
  }

  if (weight) {
    const double e = -1.0 / (p - 1.0);
    std::vector<double> dual;
    const auto m = static_cast<std::size_t>(n);
    if (params.epsilon > 0.0) {
      const std::vector<double> nu = cell_averages(*weight, m);
      for (double v : nu) dual.push_back(std::pow(v + params.epsilon, e));
    } else {
      try {
        dual = cell_averages(*weight, m, e);
      } catch (const ValidationError&) {
        dual.clear();  // dual weight not locally integrable: no witnesses
      }
    }
    if (!dual.empty()) {
      for (const Singularity& s : weight->singularities()) {
        for (int k = 2; k <= params.witness_levels + 1; ++k) {
          const double r = kPi * std::ldexp(1.0, -k);
          for (double shift : {0.0, 5.0, -5.0}) {
            const Arc arc(s.location + shift * r, r);
            CVec f(n);
            for (Eigen::Index j = 0; j < n; ++j) {
              f(j) = arc.contains(op.src_angles(j)) ? dual[static_cast<std::size_t>(j)] : 0.0;
            }
            battery.offer(f, "witness(s=" + text::format_double(s.location) + ",r=" + text::format_double(r) +
                                 ",shift=" + text::format_double(shift) + "r)");
          }
        }
      }
    }
  }

  if (!battery.any()) throw ValidationError("norm estimate: degenerate witness (every test function has zero norm)");

  // Nonlinear power iteration for the p -> p norm started from the best candidate.
  if (op.adjoint && params.power_iterations > 0 && battery.best().ratio > 0.0) {
    const double q = p / (p - 1.0);
    CVec x = battery.best().f;
    for (int it = 0; it < params.power_iterations; ++it) {
      const CVec y = op.apply(x);
      const CVec z = duality_map(y, p);
      const CVec xs = op.adjoint(z);
      CVec next = duality_map(xs, q);
      const double nn = lp_norm(next, op.src_measure, p);
      if (!(nn > 0.0) || !std::isfinite(nn)) break;
      x = next / nn;
      battery.offer(x, "power_iteration");
    }
  }

  NormEstimate est;
  est.p = p;
  est.lower = battery.best().ratio;
  est.witness_id = battery.best().id;
  if (upper_formula >= 0.0) {
    est.upper = upper_formula;
    est.upper_method = "formula";
  } else {
    est.upper = std::numeric_limits<double>::quiet_NaN();
    est.upper_method = "none";
  }
  return est;
}

NormEstimate norm_estimate_lp(const OperatorMatrix& a, double p, const BatteryParams& params) {
  NormEstimate est = norm_estimate_lp(sampled_operator(a), p, params);
  if (p == 2.0) {
    est.upper = norm_upper_p2(a);
    est.upper_method = "svd";
  }
  return est;
}

BallSeparation ball_separation_check(double r, const CircleFunction& f, double center, double shift_factor) {
  if (!(r > 0.0) || !(r < 0.4)) throw ValidationError("ball separation: r must lie in (0, 2/5)");
  if (!(shift_factor > 2.0)) throw ValidationError("ball separation: I1 and I2 must be disjoint");
  const Arc i1(center, r);
  const Arc i2(center + shift_factor * r, r);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const cd v = f.samples()(static_cast<Eigen::Index>(k));
    if (std::abs(v.imag()) > 1e-14 * (1.0 + std::abs(v.real())) || v.real() < 0.0) {
      throw ValidationError("ball separation: f must be nonnegative");
    }
    const bool inside = i1.contains(f.theta(k));
    if (!inside && v.real() != 0.0) throw ValidationError("ball separation: f must be supported in I1");
    if (inside) {
      sum += v.real();
      ++count;
    }
  }
  if (count == 0) throw ValidationError("ball separation: I1 contains no nodes");

  BallSeparation out;
  out.i1_center = wrap_angle(center);
  out.i2_center = wrap_angle(center + shift_factor * r);
  out.threshold = (sum / static_cast<double>(count)) / (28.0 * kPi);
  out.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!i2.contains(f.theta(k))) continue;
    out.min_value = std::min(out.min_value, std::abs(szego_offsupport(f, std::polar(1.0, f.theta(k)))));
  }
  if (!std::isfinite(out.min_value)) throw ValidationError("ball separation: I2 contains no nodes");
  return out;
}

}  // namespace conflab
