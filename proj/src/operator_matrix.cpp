#include <Eigen/SVD>
#include <cmath>

#include "conflab/spectral.hpp"
#include "conflab/transfer.hpp"

namespace conflab {

namespace {

Eigen::VectorXd abs_vec(const CVec& v) { return v.cwiseAbs(); }

}  // namespace

Basis Basis::circle_fourier(int band) {
  if (band < 0) throw ValidationError("circle_fourier: negative band");
  return {Kind::circle_fourier, band, nullptr, Eigen::VectorXd::Ones(2 * band + 1)};
}

Basis Basis::circle_nodal(std::size_t m) {
  const auto n = static_cast<Eigen::Index>(m);
  return {Kind::circle_nodal, static_cast<int>(m), nullptr, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(m))};
}

Basis Basis::disc_nodal(GridPtr grid) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(grid->size()));
  for (std::size_t i = 0; i < grid->size(); ++i) g(static_cast<Eigen::Index>(i)) = grid->weight(i);
  return {Kind::disc_nodal, static_cast<int>(grid->size()), std::move(grid), std::move(g)};
}

Basis Basis::disc_monomial(int degree) {
  Eigen::VectorXd g(degree + 1);
  for (int n = 0; n <= degree; ++n) g(n) = 1.0 / (n + 1.0);
  return {Kind::disc_monomial, degree, nullptr, std::move(g)};
}

bool Basis::operator==(const Basis& other) const {
  if (kind != other.kind || n != other.n || gram.size() != other.gram.size()) return false;
  if ((grid == nullptr) != (other.grid == nullptr)) return false;
  if (grid && !(*grid == *other.grid)) return false;
  return (gram - other.gram).cwiseAbs().maxCoeff() <= 1e-14 * gram.cwiseAbs().maxCoeff();
}

std::string Basis::describe() const {
  switch (kind) {
    case Kind::circle_fourier:
      return "circle_fourier[-" + std::to_string(n) + "," + std::to_string(n) + "]";
    case Kind::circle_nodal:
      return "circle_nodal[" + std::to_string(n) + "]";
    case Kind::disc_nodal:
      return "disc_nodal[" + std::to_string(grid->radial()) + "x" + std::to_string(grid->angular()) + "]";
    case Kind::disc_monomial:
      return "disc_monomial[0," + std::to_string(n) + "]";
  }
  return {};
}

CVec OperatorMatrix::apply(const CVec& x) const {
  if (x.size() != entries.cols()) throw ValidationError("apply: dimension mismatch");
  return entries * x;
}

CVec OperatorMatrix::adjoint_apply(const CVec& y) const {
  if (y.size() != entries.rows()) throw ValidationError("adjoint_apply: dimension mismatch");
  CVec t = entries.adjoint() * (dst.gram.cast<cd>().cwiseProduct(y));
  return t.cwiseQuotient(src.gram.cast<cd>());
}

Eigen::MatrixXcd OperatorMatrix::normalized() const {
  if (src.gram.size() && src.gram.minCoeff() <= 0.0) throw NumericalError("singular source Gram");
  if (dst.gram.size() && dst.gram.minCoeff() <= 0.0) throw NumericalError("singular destination Gram");
  const Eigen::VectorXd l = dst.gram.cwiseSqrt();
  const Eigen::VectorXd r = src.gram.cwiseSqrt().cwiseInverse();
  return l.cast<cd>().asDiagonal() * entries * r.cast<cd>().asDiagonal();
}

OperatorMatrix compose(const OperatorMatrix& outer, const OperatorMatrix& inner) {
  if (!(outer.src == inner.dst)) {
    throw ValidationError("compose: basis mismatch (" + outer.src.describe() + " vs " + inner.dst.describe() + ")");
  }
  return {outer.entries * inner.entries, inner.src, outer.dst, outer.name + "*" + inner.name};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.src == b.src) || !(a.dst == b.dst)) throw ValidationError("operator-: basis mismatch");
  return {a.entries - b.entries, a.src, a.dst, a.name + "-" + b.name};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.src == b.src) || !(a.dst == b.dst)) throw ValidationError("operator+: basis mismatch");
  return {a.entries + b.entries, a.src, a.dst, a.name + "+" + b.name};
}

// -- catalog ----------------------------------------------------------------

OperatorMatrix discretize_identity(int dim) {
  if (dim < 1) throw ValidationError("identity: dimension must be positive");
  Basis b{Basis::Kind::circle_nodal, dim, nullptr, Eigen::VectorXd::Ones(dim)};
  return {Eigen::MatrixXcd::Identity(dim, dim), b, b, "I"};
}

OperatorMatrix discretize_szego(int band) {
  const Basis b = Basis::circle_fourier(band);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(b.size(), b.size());
  for (int n = 0; n <= band; ++n) a(n + band, n + band) = 1.0;
  return {std::move(a), b, b, "S0"};
}

OperatorMatrix discretize_szego_nodal(std::size_t m) {
  if (!is_power_of_two(m)) throw ValidationError("szego_nodal: M must be a power of two");
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    CVec e = CVec::Zero(n);
    e(k) = 1.0;
    a.col(k) = szego_project(CircleFunction::from_samples(std::move(e))).samples();
  }
  const Basis b = Basis::circle_nodal(m);
  return {std::move(a), b, b, "S0"};
}

OperatorMatrix discretize_multiplier(const CircleFunction& g, int band) {
  if (4 * band + 2 > static_cast<int>(g.size())) throw ValidationError("multiplier: band exceeds the symbol's resolution");
  const Basis b = Basis::circle_fourier(band);
  Eigen::MatrixXcd a(b.size(), b.size());
  for (int m = -band; m <= band; ++m) {
    for (int n = -band; n <= band; ++n) a(m + band, n + band) = g.coeff(m - n);
  }
  return {std::move(a), b, b, "M_g"};
}

OperatorMatrix discretize_poisson(int band, const GridPtr& grid) {
  if (band >= grid->angular() / 2) throw ValidationError("poisson: band exceeds the grid's angular resolution");
  const Basis src = Basis::circle_fourier(band);
  const Basis dst = Basis::disc_nodal(grid);
  Eigen::MatrixXcd a(dst.size(), src.size());
  for (int n = -band; n <= band; ++n) {
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const int j = static_cast<int>(i / grid->angular());
      const int k = static_cast<int>(i % grid->angular());
      a(static_cast<Eigen::Index>(i), n + band) = std::pow(grid->radius(j), std::abs(n)) * std::polar(1.0, n * grid->theta(k));
    }
  }
  return {std::move(a), src, dst, "P0"};
}

OperatorMatrix discretize_bergman(const GridPtr& grid, int degree) {
  if (grid->angular() <= 2 * degree + 1) throw ValidationError("bergman: angular nodes must exceed 2N+1");
  const auto nodes = static_cast<Eigen::Index>(grid->size());
  Eigen::MatrixXcd v(nodes, degree + 1);
  Eigen::MatrixXcd c(degree + 1, nodes);
  for (Eigen::Index i = 0; i < nodes; ++i) {
    const cd z = grid->node(static_cast<std::size_t>(i));
    const double w = grid->weight(static_cast<std::size_t>(i));
    cd zn = 1.0;
    for (int n = 0; n <= degree; ++n) {
      v(i, n) = zn;
      c(n, i) = (n + 1.0) * w * std::conj(zn);
      zn *= z;
    }
  }
  const Basis b = Basis::disc_nodal(grid);
  return {v * c, b, b, "B0"};
}

namespace {

Basis domain_circle_basis(const ConformalMap& map, std::size_t m) {
  const CircleFactors f = circle_factors(map, m);
  Basis b = Basis::circle_nodal(m);
  b.gram = b.gram.cwiseProduct(abs_vec(f.dphi));
  return b;
}

Basis domain_disc_basis(const ConformalMap& map, const GridPtr& grid) {
  Basis b = Basis::disc_nodal(grid);
  b.gram = b.gram.cwiseProduct(abs_vec(grid_derivative(map, *grid)).cwiseAbs2());
  return b;
}

}  // namespace

OperatorMatrix discretize_szego_domain(const ConformalMap& map, std::size_t m) {
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    CVec e = CVec::Zero(n);
    e(k) = 1.0;
    const auto f = DomainFunction::boundary(map, CircleFunction::from_samples(std::move(e)));
    a.col(k) = szego_domain(f).boundary_values().samples();
  }
  const Basis b = domain_circle_basis(map, m);
  return {std::move(a), b, b, "S"};
}

OperatorMatrix discretize_tau_half(const ConformalMap& map, std::size_t m) {
  const CircleFactors f = circle_factors(map, m);
  return {f.sqrt_dphi.asDiagonal().toDenseMatrix(), domain_circle_basis(map, m), Basis::circle_nodal(m), "tau_half"};
}

OperatorMatrix discretize_bergman_domain(const ConformalMap& map, const GridPtr& grid, int degree) {
  const auto n = static_cast<Eigen::Index>(grid->size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    CVec e = CVec::Zero(n);
    e(i) = 1.0;
    const auto f = DomainFunction::interior(map, DiscFunction(grid, std::move(e)));
    a.col(i) = bergman_domain(f, degree).interior_values().values();
  }
  const Basis b = domain_disc_basis(map, grid);
  return {std::move(a), b, b, "B"};
}

OperatorMatrix discretize_tau(const ConformalMap& map, const GridPtr& grid) {
  return {grid_derivative(map, *grid).asDiagonal().toDenseMatrix(), domain_disc_basis(map, grid),
          Basis::disc_nodal(grid), "tau"};
}

OperatorMatrix discretize(const std::string& name, int n) {
  if (n < 1) throw ValidationError("discretize: N must be positive");
  if (name == "identity") return discretize_identity(n);
  if (name == "S0") return discretize_szego(n);
  if (name == "shift") {
    std::size_t m = 8;
    while (m < static_cast<std::size_t>(4 * n + 2)) m *= 2;
    return discretize_multiplier(CircleFunction::from_coefficients(m, {{1, 1.0}}), n);
  }
  if (name == "P0") return discretize_poisson(n, make_grid(n + 1, 2 * n + 2));
  if (name == "B0") return discretize_bergman(make_grid(n + 1, 2 * n + 2), n);
  throw ValidationError("unknown operator '" + name + "'");
}

Eigen::VectorXd singular_values(const OperatorMatrix& a) {
  const Eigen::MatrixXcd b = a.normalized();
  if (b.size() == 0) return {};
  if (b.rows() > b.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
    const Eigen::MatrixXcd r = qr.matrixQR().topRows(b.cols()).triangularView<Eigen::Upper>();
    return Eigen::BDCSVD<Eigen::MatrixXcd>(r).singularValues();
  }
  return Eigen::BDCSVD<Eigen::MatrixXcd>(b).singularValues();
}

double norm_upper_p2(const OperatorMatrix& a) {
  const Eigen::VectorXd s = singular_values(a);
  return s.size() ? s(0) : 0.0;
}

}  // namespace conflab
