#include "cplp/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace cplp {

Matrix identity_choi(Index d_a) {
  const Index n = d_a * d_a;
  Matrix phi = Matrix::Zero(n, n);
  for (Index a = 0; a < d_a; ++a)
    for (Index b = 0; b < d_a; ++b) phi(a * d_a + a, b * d_a + b) = 1.0;
  return phi;
}

Matrix lift_to_aa(const Matrix& x) { return kron(x, Matrix::Identity(x.rows(), x.rows())); }

Matrix trace_output(const Matrix& m, Index d_a) {
  if (m.rows() != d_a * d_a || m.cols() != d_a * d_a) {
    throw DimensionError("trace_output: operator is not on A (x) A'");
  }
  return partial_trace(m, BipartiteSpace(d_a, d_a), Subsystem::B);
}

ChoiMatrix::ChoiMatrix(Index d_a, const Matrix& m, const Tolerances& tol)
    : d_a_(d_a), op_(m, 1e-9) {
  if (d_a < 1 || op_.dim() != d_a * d_a) throw DimensionError("ChoiMatrix: dimension mismatch");
  const double scale = std::max(1.0, max_abs_entry(m));
  if (lambda_min(op_.matrix()) < -tol.psd_tol * scale) {
    throw InvalidStateError("ChoiMatrix: not positive semidefinite");
  }
  const Matrix t = trace_output(op_.matrix(), d_a) - Matrix::Identity(d_a, d_a);
  if (max_abs_entry(t) > 1e-8) {
    std::ostringstream msg;
    msg << "ChoiMatrix: partial trace deviates from identity by " << max_abs_entry(t);
    throw InvalidStateError(msg.str());
  }
}

ChoiMatrix ChoiMatrix::identity_channel(Index d_a) { return ChoiMatrix(d_a, identity_choi(d_a)); }

ChoiMatrix ChoiMatrix::depolarizing(Index d_a) {
  return ChoiMatrix(d_a, Matrix::Identity(d_a * d_a, d_a * d_a) / static_cast<double>(d_a));
}

Matrix apply_choi(const ChoiMatrix& choi, const Matrix& rho_a) {
  const Index d = choi.d_a();
  if (rho_a.rows() != d || rho_a.cols() != d) throw DimensionError("apply_choi: dimension mismatch");
  const Matrix& e = choi.matrix();
  Matrix out = Matrix::Zero(d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      if (rho_a(a, b) == Complex(0.0)) continue;
      out += rho_a(a, b) * e.block(a * d, b * d, d, d);
    }
  return out;
}

HermitianOperator apply_choi(const ChoiMatrix& choi, const HermitianOperator& rho_a) {
  return HermitianOperator(apply_choi(choi, rho_a.matrix()));
}

Matrix apply_local_channel(const ChoiMatrix& choi, const Matrix& rho_ab, const BipartiteSpace& space) {
  const Index d = choi.d_a();
  if (space.d_a != d || rho_ab.rows() != space.dim() || rho_ab.cols() != space.dim()) {
    throw DimensionError("apply_local_channel: dimension mismatch");
  }
  const Matrix& e = choi.matrix();
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  // out[(a' j),(b' l)] = sum_{a,b} E[(a a'),(b b')] rho[(a j),(b l)]
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      for (Index ap = 0; ap < d; ++ap)
        for (Index bp = 0; bp < d; ++bp) {
          const Complex w = e(a * d + ap, b * d + bp);
          if (w == Complex(0.0)) continue;
          for (Index j = 0; j < space.d_b; ++j)
            for (Index l = 0; l < space.d_b; ++l)
              out(space.flat(ap, j), space.flat(bp, l)) += w * rho_ab(space.flat(a, j), space.flat(b, l));
        }
  return out;
}

namespace {

// The solver stops well inside the promised slackness bound sqrt(tol).
constexpr double kSlacknessMargin = 1e-2;

// Orthonormal (under tr(XY)) real basis of d x d Hermitian matrices; the dual
// variable Y is stored by its coordinates in this basis.
class HermitianBasis {
 public:
  explicit HermitianBasis(Index d) : d_(d) {
    const double r = 1.0 / std::sqrt(2.0);
    for (Index a = 0; a < d; ++a) entries_.push_back({{a, a, Complex(1.0)}});
    for (Index a = 0; a < d; ++a)
      for (Index b = a + 1; b < d; ++b) {
        entries_.push_back({{a, b, Complex(r)}, {b, a, Complex(r)}});
        entries_.push_back({{a, b, Complex(0.0, r)}, {b, a, Complex(0.0, -r)}});
      }
  }

  Index size() const { return static_cast<Index>(entries_.size()); }

  // Re tr(B_k T) for every k.
  RealVector coords(const Matrix& t) const {
    RealVector out(size());
    for (Index k = 0; k < size(); ++k) {
      Complex s = 0.0;
      for (const auto& e : entries_[static_cast<std::size_t>(k)]) s += e.value * t(e.col, e.row);
      out(k) = s.real();
    }
    return out;
  }

  Matrix combine(const RealVector& y) const {
    Matrix out = Matrix::Zero(d_, d_);
    for (Index k = 0; k < size(); ++k)
      for (const auto& e : entries_[static_cast<std::size_t>(k)]) out(e.row, e.col) += y(k) * e.value;
    return out;
  }

  struct Entry {
    Index row;
    Index col;
    Complex value;
  };
  const std::vector<Entry>& entries(Index k) const { return entries_[static_cast<std::size_t>(k)]; }

 private:
  Index d_;
  std::vector<std::vector<Entry>> entries_;
};

// Largest step t with L L^dagger + t * delta still PSD.
double max_step(const Eigen::LLT<Matrix>& chol, const Matrix& delta) {
  const auto l = chol.matrixL();
  Matrix z = l.solve(delta);
  z = l.solve(z.adjoint().eval()).adjoint();
  const double lmin = lambda_min(z);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

// Schur complement M_ij = Re tr(B_i tr_A'[X (B_j (x) I) Z]); the NT system uses X = Z = W.
RealMatrix schur_complement(const Matrix& x, const Matrix& z, const HermitianBasis& basis, Index d) {
  // k[a][b](c, e) = sum_{c', t} X[(c c'), (a t)] Z[(b t), (e c')]
  std::vector<Matrix> k(static_cast<std::size_t>(d * d), Matrix::Zero(d, d));
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      Matrix& kab = k[static_cast<std::size_t>(a * d + b)];
      for (Index c = 0; c < d; ++c)
        for (Index e = 0; e < d; ++e) {
          Complex s = 0.0;
          for (Index cp = 0; cp < d; ++cp)
            for (Index t = 0; t < d; ++t) s += x(c * d + cp, a * d + t) * z(b * d + t, e * d + cp);
          kab(c, e) = s;
        }
    }
  const Index m = basis.size();
  std::vector<Matrix> traced(static_cast<std::size_t>(m), Matrix::Zero(d, d));
  for (Index j = 0; j < m; ++j)
    for (const auto& en : basis.entries(j))
      traced[static_cast<std::size_t>(j)] += en.value * k[static_cast<std::size_t>(en.row * d + en.col)];
  RealMatrix schur(m, m);
  for (Index j = 0; j < m; ++j) schur.col(j) = basis.coords(traced[static_cast<std::size_t>(j)]);
  return 0.5 * (schur + schur.transpose());
}

// Congruence (T^{-1/2} (x) I) X (T^{-1/2} (x) I) with T = tr_A' X; restores the
// trace constraint exactly and keeps X positive.
Matrix restore_trace(const Matrix& x, Index d) {
  const EigenSystem t = eig_hermitian(herm(trace_output(x, d)));
  if (t.values.minCoeff() <= 0.0) return x;
  const Matrix t_inv_sqrt = spectral_sum(t, t.values.cwiseSqrt().cwiseInverse());
  const Matrix k = lift_to_aa(t_inv_sqrt);
  return herm(k * x * k);
}

}  // namespace

SdpSolution solve_channel_sdp(const Matrix& cost_in, Index d, const SdpOptions& options) {
  const Index n = d * d;
  if (d < 1 || d > 16) throw DimensionError("solve_channel_sdp: d_a must be in [1, 16]");
  if (cost_in.rows() != n || cost_in.cols() != n) throw DimensionError("solve_channel_sdp: cost dimension");
  if (!(options.tol >= 1e-12 && options.tol <= 1e-4)) {
    throw Error("solve_channel_sdp: tol must lie in [1e-12, 1e-4]");
  }
  const Matrix cost = herm(cost_in);
  const HermitianBasis basis(d);
  const RealVector b = basis.coords(Matrix::Identity(d, d));

  auto a_op = [&](const Matrix& x) { return basis.coords(trace_output(x, d)); };
  auto slack = [&](const RealVector& y) { return herm(cost - lift_to_aa(basis.combine(y))); };

  Matrix x = Matrix::Identity(n, n) / static_cast<double>(d);
  RealVector y = basis.coords(Matrix::Identity(d, d) * (lambda_min(cost) - 1.0));
  Matrix s = slack(y);

  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iterations; ++iter) {
    const double pobj = (cost * x).trace().real();
    const double dobj = b.dot(y);
    const double gap = pobj - dobj;
    const RealVector rp = b - a_op(x);
    const double mu = (x * s).trace().real() / static_cast<double>(n);
    const bool gap_ok = std::abs(gap) <= options.tol * std::max(1.0, std::abs(pobj));
    if (gap_ok && rp.cwiseAbs().maxCoeff() <= 1e-10 && (x * s).norm() <= kSlacknessMargin * std::sqrt(options.tol)) {
      converged = true;
      break;
    }

    Eigen::LLT<Matrix> chol_x(x);
    Eigen::LLT<Matrix> chol_s(s);
    if (chol_x.info() != Eigen::Success || chol_s.info() != Eigen::Success) break;

    // Nesterov-Todd scaling: G^{-1} X G^{-dagger} = G^dagger S G = diag(v).
    const Matrix lx = chol_x.matrixL();
    const Matrix ls = chol_s.matrixL();
    Eigen::JacobiSVD<Matrix> svd(ls.adjoint() * lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector v = svd.singularValues();
    if (!(v.minCoeff() > 0.0)) break;
    const Matrix g = lx * svd.matrixV() * v.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();
    const Matrix w = g * g.adjoint();
    const auto g_lu = g.partialPivLu();

    const RealMatrix schur = schur_complement(w, w, basis, d);
    Eigen::LDLT<RealMatrix> schur_fact(schur);
    if (schur_fact.info() != Eigen::Success) break;

    // Right-hand side in scaled space: solves V R + R V = 2 (sigma mu I - V^2 - corr).
    auto scaled_rhs = [&](double target, const Matrix& corr) {
      Matrix r(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          const Complex t = (i == j ? Complex(target - v(i) * v(i)) : Complex(0.0)) - corr(i, j);
          r(i, j) = 2.0 * t / (v(i) + v(j));
        }
      return herm(g * r * g.adjoint());
    };

    // NT direction for target rc: dX + W dS W = rc, dS = -dY (x) I, tr_A' dX = rp.
    auto direction = [&](const Matrix& rc, Matrix& dx, Matrix& ds, RealVector& dy) {
      dy = schur_fact.solve(rp - a_op(rc));
      const Matrix dy_lift = lift_to_aa(basis.combine(dy));
      ds = -herm(dy_lift);
      dx = herm(rc + w * dy_lift * w);
    };

    Matrix dx;
    Matrix ds;
    RealVector dy;
    double sigma = 1.0;
    if (gap_ok) {
      // Gap already small but X S far from the central path: a centering
      // step pulls the complementarity product toward a multiple of I.
      sigma = std::min(1.0, 0.1 * options.tol * std::max(1.0, std::abs(pobj)) / (mu * static_cast<double>(n)));
      direction(scaled_rhs(sigma * mu, Matrix::Zero(n, n)), dx, ds, dy);
    } else {
      direction(scaled_rhs(0.0, Matrix::Zero(n, n)), dx, ds, dy);
      const double ap_aff = std::min(1.0, options.step_fraction * max_step(chol_x, dx));
      const double ad_aff = std::min(1.0, options.step_fraction * max_step(chol_s, ds));
      const double mu_aff = ((x + ap_aff * dx) * (s + ad_aff * ds)).trace().real() / static_cast<double>(n);
      sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
      // Scaled product G^{-1} dX dS G, symmetrized.
      const Matrix corr = herm(g_lu.solve(Matrix(dx * ds * g)));
      direction(scaled_rhs(sigma * mu, corr), dx, ds, dy);
    }
    const double ap = std::min(1.0, options.step_fraction * max_step(chol_x, dx));
    const double ad = std::min(1.0, options.step_fraction * max_step(chol_s, ds));

    x = restore_trace(herm(x + ap * dx), d);
    y += ad * dy;
    s = slack(y);
  }

  const Matrix y_mat = herm(basis.combine(y));
  s = slack(y);
  SdpSolution sol{ChoiMatrix(d, x), HermitianOperator(y_mat)};
  sol.primal_value = (cost * x).trace().real();
  sol.dual_value = y_mat.trace().real();
  sol.gap = sol.primal_value - sol.dual_value;
  sol.slackness_residual = (x * s).norm();
  sol.iterations = iter;
  sol.converged = converged;
  return sol;
}

SdpSolution solve_extraction(const COperator& c, const SdpOptions& options) {
  return solve_channel_sdp(c.matrix.matrix(), c.d_a, options);
}

CertificateReport verify_certificate(const ChoiMatrix& choi, const Matrix& dual_y, const COperator& c,
                                     double tol, const Tolerances& tolerances) {
  const Index d = c.d_a;
  if (choi.d_a() != d || dual_y.rows() != d || dual_y.cols() != d) {
    throw DimensionError("verify_certificate: dimension mismatch");
  }
  const Matrix& cost = c.matrix.matrix();
  const Matrix& e = choi.matrix();
  const Matrix y = herm(dual_y);
  const Matrix s = cost - lift_to_aa(y);

  CertificateReport r;
  r.trace_residual = max_abs_entry(trace_output(e, d) - Matrix::Identity(d, d));
  r.primal_min_eig = lambda_min(e);
  r.dual_min_eig = lambda_min(s);
  const double primal = (cost * e).trace().real();
  r.gap = primal - y.trace().real();
  r.slackness = (e * s).norm();

  const double psd_threshold = -tolerances.psd_tol * std::max(1.0, op_norm(c.matrix));
  const bool y_hermitian =
      max_abs_entry(dual_y - dual_y.adjoint()) <= tolerances.herm_tol * std::max(1.0, max_abs_entry(dual_y));
  r.primal_feasible = r.trace_residual <= 1e-8 && r.primal_min_eig >= psd_threshold;
  r.dual_feasible = y_hermitian && r.dual_min_eig >= psd_threshold;
  r.gap_ok = std::abs(r.gap) <= tol * std::max(1.0, std::abs(primal));
  r.slackness_ok = r.slackness <= std::sqrt(tol);
  r.passed = r.primal_feasible && r.dual_feasible && r.gap_ok && r.slackness_ok;
  return r;
}

CertificateReport verify_certificate(const SdpSolution& sol, const COperator& c, double tol,
                                     const Tolerances& tolerances) {
  return verify_certificate(sol.choi, sol.dual_y.matrix(), c, tol, tolerances);
}

}  // namespace cplp
