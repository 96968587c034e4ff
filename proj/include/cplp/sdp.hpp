#pragma once

#include <optional>

#include "cplp/c_operator.hpp"

namespace cplp {

/// Choi matrix of a channel A -> A'. PSD, with tr_A' E = I_A.
class ChoiMatrix {
 public:
  ChoiMatrix(Index d_a, const Matrix& m, const Tolerances& tol = {});

  static ChoiMatrix identity_channel(Index d_a);
  /// E = I (x) I / d_a, the completely depolarizing channel rho -> tr(rho) I / d_a.
  static ChoiMatrix depolarizing(Index d_a);

  Index d_a() const { return d_a_; }
  const Matrix& matrix() const { return op_.matrix(); }

 private:
  Index d_a_;
  HermitianOperator op_;
};

/// Channel output for an input operator on A.
Matrix apply_choi(const ChoiMatrix& choi, const Matrix& rho_a);
HermitianOperator apply_choi(const ChoiMatrix& choi, const HermitianOperator& rho_a);

/// (E_A (x) I_B)(rho_AB), evaluated entrywise without going through C.
Matrix apply_local_channel(const ChoiMatrix& choi, const Matrix& rho_ab, const BipartiteSpace& space);

struct SdpOptions {
  double tol = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.98;
};

/// Primal/dual optimum of
///   min tr[C E]  s.t.  tr_A' E = I_A, E >= 0
///   max tr[Y]    s.t.  C - Y (x) I >= 0.
struct SdpSolution {
  ChoiMatrix choi;
  HermitianOperator dual_y;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  /// ||E (C - Y (x) I)||_F.
  double slackness_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Primal-dual interior point with Nesterov-Todd scaling. Only Herm(cost)
/// enters the objective. Exhausting the iteration budget returns the last
/// iterate with `converged == false`.
SdpSolution solve_channel_sdp(const Matrix& cost, Index d_a, const SdpOptions& options = {});

SdpSolution solve_extraction(const COperator& c, const SdpOptions& options = {});

struct CertificateReport {
  double trace_residual = 0.0;   // max |tr_A' E - I| entry
  double primal_min_eig = 0.0;   // lambda_min(E)
  double dual_min_eig = 0.0;     // lambda_min(C - Y (x) I)
  double gap = 0.0;              // tr[C E] - tr[Y]
  double slackness = 0.0;        // ||E (C - Y (x) I)||_F
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool gap_ok = false;
  bool slackness_ok = false;
  bool passed = false;
};

/// Recomputes every optimality condition from scratch. Thresholds:
/// trace residual 1e-8, PSD checks -psd_tol * max(1, ||C||), gap within
/// tol * max(1, |tr C E|), slackness sqrt(tol).
CertificateReport verify_certificate(const ChoiMatrix& choi, const Matrix& dual_y,
                                     const COperator& c, double tol = 1e-8,
                                     const Tolerances& tolerances = {});
CertificateReport verify_certificate(const SdpSolution& sol, const COperator& c, double tol = 1e-8,
                                     const Tolerances& tolerances = {});

}  // namespace cplp
