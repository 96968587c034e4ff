#include "cplp/models.hpp"

#include <cmath>
#include <sstream>

namespace cplp {

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

Matrix z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix on_site(const Matrix& op, int site, int n_sites) {
  Matrix out = Matrix::Identity(1, 1);
  for (int l = 0; l < n_sites; ++l) out = kron(out, l == site ? op : identity());
  return out;
}

}  // namespace pauli

namespace {

void validate_chain(const SpinChainSpec& spec) {
  if (spec.n_sites < 2) throw DimensionError("build_chain: need at least two sites");
  if (spec.n_sites > kMaxChainSites) {
    std::ostringstream msg;
    msg << "build_chain: " << spec.n_sites << " sites exceeds the limit of " << kMaxChainSites;
    throw DimensionError(msg.str());
  }
  const auto& a = spec.a_region;
  if (a.empty()) throw DimensionError("build_chain: A region is empty");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != static_cast<int>(k) + 1) {
      throw DimensionError("build_chain: A region must be the contiguous prefix 1..m");
    }
  }
  if (static_cast<int>(a.size()) >= spec.n_sites) {
    throw DimensionError("build_chain: A region must leave at least one site in B");
  }
  if (!std::isfinite(spec.kappa) || !std::isfinite(spec.gamma) || !std::isfinite(spec.field)) {
    throw Error("build_chain: non-finite parameter");
  }
}

Matrix bond(int l, int n, double kappa, double gamma) {
  const double cx = kappa * (1.0 + gamma) / 2.0;
  const double cy = kappa * (1.0 - gamma) / 2.0;
  return cx * pauli::on_site(pauli::x(), l, n) * pauli::on_site(pauli::x(), l + 1, n) +
         cy * pauli::on_site(pauli::y(), l, n) * pauli::on_site(pauli::y(), l + 1, n);
}

// Chain Hamiltonian of `count` consecutive sites on its own register.
Matrix chain_segment(const SpinChainSpec& spec, int count) {
  const Index dim = Index{1} << count;
  Matrix h = Matrix::Zero(dim, dim);
  for (int l = 0; l < count; ++l) h += spec.field * pauli::on_site(pauli::z(), l, count);
  for (int l = 0; l + 1 < count; ++l) h += bond(l, count, spec.kappa, spec.gamma);
  return h;
}

}  // namespace

Model build_chain(const SpinChainSpec& spec) {
  validate_chain(spec);
  const int n = spec.n_sites;
  const Index dim = Index{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (int l = 0; l < n; ++l) h += spec.field * pauli::on_site(pauli::z(), l, n);
  for (int l = 0; l + 1 < n; ++l) h += bond(l, n, spec.kappa, spec.gamma);
  const int m = static_cast<int>(spec.a_region.size());
  return {HermitianOperator(h), BipartiteSpace(Index{1} << m, Index{1} << (n - m))};
}

LocalDecomposition decompose_chain(const SpinChainSpec& spec) {
  validate_chain(spec);
  const int n = spec.n_sites;
  const int m = static_cast<int>(spec.a_region.size());
  const Matrix h_a = chain_segment(spec, m);
  const Matrix h_b = chain_segment(spec, n - m);
  // The only bond crossing the cut joins site m-1 (last of A) and site m.
  const Matrix v = bond(m - 1, n, spec.kappa, spec.gamma);
  return {HermitianOperator(h_a), HermitianOperator(h_b), HermitianOperator(v)};
}

std::optional<TwoQubitForm> parse_two_qubit_form(const std::string& name) {
  if (name == "xy_symmetric") return TwoQubitForm::xy_symmetric;
  if (name == "xx_only") return TwoQubitForm::xx_only;
  if (name == "anisotropic") return TwoQubitForm::anisotropic;
  return std::nullopt;
}

std::string to_string(TwoQubitForm form) {
  switch (form) {
    case TwoQubitForm::xy_symmetric:
      return "xy_symmetric";
    case TwoQubitForm::xx_only:
      return "xx_only";
    case TwoQubitForm::anisotropic:
      return "anisotropic";
  }
  return "unknown";
}

LocalDecomposition decompose_two_qubit(const TwoQubitSpec& spec) {
  const Matrix xx = kron(pauli::x(), pauli::x());
  const Matrix yy = kron(pauli::y(), pauli::y());
  Matrix local;
  Matrix v;
  switch (spec.form) {
    case TwoQubitForm::xy_symmetric:
      local = 0.5 * spec.omega * pauli::z();
      v = 0.5 * spec.kappa * (xx + yy);
      break;
    case TwoQubitForm::xx_only:
      local = Matrix::Zero(2, 2);
      v = spec.kappa * xx;
      break;
    case TwoQubitForm::anisotropic:
      local = pauli::z();
      v = spec.kappa * ((1.0 + spec.gamma) / 2.0 * xx + (1.0 - spec.gamma) / 2.0 * yy);
      break;
    default:
      throw Error("build_two_qubit: unknown form");
  }
  return {HermitianOperator(local), HermitianOperator(local), HermitianOperator(v)};
}

Model build_two_qubit(const TwoQubitSpec& spec) {
  if (!std::isfinite(spec.omega) || !std::isfinite(spec.kappa) || !std::isfinite(spec.gamma)) {
    throw Error("build_two_qubit: non-finite parameter");
  }
  const LocalDecomposition d = decompose_two_qubit(spec);
  const Matrix id = pauli::identity();
  const Matrix h = kron(d.h_a.matrix(), id) + kron(id, d.h_b.matrix()) + d.v.matrix();
  return {HermitianOperator(h), BipartiteSpace(2, 2)};
}

Eigenmixture eigenmixture(const HermitianOperator& h, const BipartiteSpace& space,
                          const std::vector<double>& populations, const Tolerances& tol) {
  if (h.dim() != space.dim()) throw DimensionError("eigenmixture: dimension mismatch");
  if (static_cast<Index>(populations.size()) != h.dim()) {
    throw DimensionError("eigenmixture: population count must equal the dimension");
  }
  double total = 0.0;
  for (double p : populations) {
    if (!(p >= 0.0)) throw InvalidStateError("eigenmixture: negative population");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidStateError("eigenmixture: populations must sum to 1");

  const EigenSystem eig = eig_hermitian(h);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  bool degenerate = false;
  for (Index i = 1; i < eig.values.size(); ++i) {
    if (eig.values(i) - eig.values(i - 1) < tol.deg_tol * scale) degenerate = true;
  }
  const RealVector w = Eigen::Map<const RealVector>(populations.data(), h.dim());
  return {DensityMatrix(space, HermitianOperator(spectral_sum(eig, w)), tol), degenerate};
}

Matrix unitary_from_generator(const HermitianOperator& generator) {
  const EigenSystem eig = eig_hermitian(generator);
  Vector phases(eig.values.size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, eig.values(i));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

DensityMatrix rotated_thermal(const HermitianOperator& h, const BipartiteSpace& space, double beta,
                              const HermitianOperator& rotation_generator, const Tolerances& tol) {
  if (rotation_generator.dim() != h.dim()) {
    throw DimensionError("rotated_thermal: generator dimension mismatch");
  }
  const DensityMatrix thermal = gibbs(h, space, beta, tol);
  const Matrix u = unitary_from_generator(rotation_generator);
  return DensityMatrix(space, HermitianOperator(u * thermal.matrix() * u.adjoint()), tol);
}

}  // namespace cplp
