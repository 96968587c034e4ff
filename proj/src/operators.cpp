#include "cplp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cplp {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
}

void require_space(const Matrix& m, const BipartiteSpace& space, const char* what) {
  require_square(m, what);
  if (m.rows() != space.dim()) {
    std::ostringstream msg;
    msg << what << ": operator dimension " << m.rows() << " does not match space " << space.d_a
        << "x" << space.d_b;
    throw DimensionError(msg.str());
  }
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& m, double herm_tol) {
  require_square(m, "HermitianOperator");
  if (!m.allFinite()) throw NotHermitianError("HermitianOperator: non-finite entries");
  residual_ = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (residual_ > herm_tol * scale) {
    std::ostringstream msg;
    msg << "HermitianOperator: hermiticity residual " << residual_ << " exceeds "
        << herm_tol * scale;
    throw NotHermitianError(msg.str());
  }
  m_ = herm(m);
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const RealVector& diag) {
  return HermitianOperator(diag.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionError("HermitianOperator::operator+: dimension mismatch");
  return HermitianOperator(m_ + other.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionError("HermitianOperator::operator-: dimension mismatch");
  return HermitianOperator(m_ - other.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(m_ * s); }

BipartiteSpace::BipartiteSpace(Index a, Index b) : d_a(a), d_b(b) {
  if (a < 1 || b < 1) throw DimensionError("BipartiteSpace: dimensions must be positive");
}

DensityMatrix::DensityMatrix(BipartiteSpace space, HermitianOperator op, const Tolerances& tol)
    : space_(space), op_(std::move(op)) {
  if (op_.dim() != space_.dim()) throw DimensionError("DensityMatrix: dimension mismatch");
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr << " differs from 1";
    throw InvalidStateError(msg.str());
  }
  const double lmin = lambda_min(op_.matrix());
  if (lmin < -tol.psd_tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: minimal eigenvalue " << lmin << " below -" << tol.psd_tol;
    throw InvalidStateError(msg.str());
  }
}

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

HermitianOperator tensor(const HermitianOperator& x, const HermitianOperator& y) {
  return HermitianOperator(kron(x.matrix(), y.matrix()));
}

Matrix partial_trace(const Matrix& m, const BipartiteSpace& space, Subsystem which) {
  require_space(m, space, "partial_trace");
  const Index da = space.d_a;
  const Index db = space.d_b;
  if (which == Subsystem::B) {
    Matrix out = Matrix::Zero(da, da);
    for (Index i = 0; i < da; ++i)
      for (Index k = 0; k < da; ++k)
        for (Index j = 0; j < db; ++j) out(i, k) += m(space.flat(i, j), space.flat(k, j));
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (Index j = 0; j < db; ++j)
    for (Index l = 0; l < db; ++l)
      for (Index i = 0; i < da; ++i) out(j, l) += m(space.flat(i, j), space.flat(i, l));
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& m, const BipartiteSpace& space,
                                Subsystem which) {
  return HermitianOperator(partial_trace(m.matrix(), space, which));
}

Matrix partial_transpose_a(const Matrix& m, const BipartiteSpace& space) {
  require_space(m, space, "partial_transpose_a");
  Matrix out(m.rows(), m.cols());
  for (Index i = 0; i < space.d_a; ++i)
    for (Index k = 0; k < space.d_a; ++k)
      for (Index j = 0; j < space.d_b; ++j)
        for (Index l = 0; l < space.d_b; ++l)
          out(space.flat(i, j), space.flat(k, l)) = m(space.flat(k, j), space.flat(i, l));
  return out;
}

HermitianOperator partial_transpose_a(const HermitianOperator& m, const BipartiteSpace& space) {
  return HermitianOperator(partial_transpose_a(m.matrix(), space));
}

EigenSystem eig_hermitian(const Matrix& hermitian) {
  require_square(hermitian, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem eig_hermitian(const HermitianOperator& m) { return eig_hermitian(m.matrix()); }

double lambda_min(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("lambda_min: eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

RealVector thermal_populations(const RealVector& energies, double beta, double deg_tol) {
  const Index n = energies.size();
  if (n == 0) throw DimensionError("thermal_populations: empty spectrum");
  if (std::isnan(beta) || beta < 0.0) throw Error("thermal_populations: beta must be >= 0");
  const double e0 = energies.minCoeff();
  RealVector p(n);
  if (std::isinf(beta)) {
    const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
    for (Index i = 0; i < n; ++i) p(i) = (energies(i) - e0 <= deg_tol * scale) ? 1.0 : 0.0;
  } else {
    for (Index i = 0; i < n; ++i) p(i) = std::exp(-beta * (energies(i) - e0));
  }
  return p / p.sum();
}

Matrix spectral_sum(const EigenSystem& eig, const RealVector& weights) {
  return eig.vectors * weights.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

DensityMatrix gibbs(const EigenSystem& eig, const BipartiteSpace& space, double beta,
                    const Tolerances& tol) {
  const RealVector p = thermal_populations(eig.values, beta, tol.deg_tol);
  return DensityMatrix(space, HermitianOperator(spectral_sum(eig, p)), tol);
}

DensityMatrix gibbs(const HermitianOperator& h, const BipartiteSpace& space, double beta,
                    const Tolerances& tol) {
  if (h.dim() != space.dim()) throw DimensionError("gibbs: dimension mismatch");
  return gibbs(eig_hermitian(h), space, beta, tol);
}

DensityMatrix ground_projector_state(const HermitianOperator& h, const BipartiteSpace& space,
                                     const Tolerances& tol) {
  return gibbs(h, space, kInfiniteBeta, tol);
}

std::vector<double> schmidt_spectrum(const Vector& state, const BipartiteSpace& space) {
  if (state.size() != space.dim()) throw DimensionError("schmidt_spectrum: length mismatch");
  const double norm = state.norm();
  if (!(norm > 0.0)) throw InvalidStateError("schmidt_spectrum: zero vector");
  Matrix coeffs(space.d_a, space.d_b);
  for (Index i = 0; i < space.d_a; ++i)
    for (Index j = 0; j < space.d_b; ++j) coeffs(i, j) = state(space.flat(i, j)) / norm;
  // Singular values keep relative accuracy for tiny Schmidt weights, which
  // the reduced-density-matrix route squares away.
  Eigen::JacobiSVD<Matrix> svd(coeffs);
  const RealVector& s = svd.singularValues();
  std::vector<double> q(static_cast<std::size_t>(s.size()));
  double total = 0.0;
  for (Index k = 0; k < s.size(); ++k) {
    q[static_cast<std::size_t>(k)] = s(k) * s(k);
    total += q[static_cast<std::size_t>(k)];
  }
  for (double& v : q) v /= total;
  std::sort(q.begin(), q.end(), std::greater<>());
  return q;
}

double op_norm(const HermitianOperator& m) {
  const RealVector w = eig_hermitian(m).values;
  return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
}

double trace_norm(const HermitianOperator& m) { return eig_hermitian(m).values.cwiseAbs().sum(); }

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double commutator_norm(const Matrix& a, const Matrix& b) { return (a * b - b * a).norm(); }

Matrix herm(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace cplp
