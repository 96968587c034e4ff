#pragma once

#include <optional>

#include "cplp/c_operator.hpp"
#include "cplp/sdp.hpp"

namespace cplp {

/// Builds C = tr_B[rho^{T_A} H_{A'B}] and checks the energy identity
/// tr[C d_a|Phi><Phi|] = tr[H rho]; a violation throws (it can only come from
/// an index-convention error).
COperator build_c_operator(const DensityMatrix& rho, const HermitianOperator& h,
                           const Tolerances& tol = {});

/// Verdict of the local-passivity test on C.
///
/// `is_passive` holds iff the candidate Y = tr_A'[d_a|Phi><Phi| C] is
/// Hermitian (residual <= herm_threshold) and
/// lambda_min(C - Herm(Y) (x) I) >= psd_threshold.
struct PassivityReport {
  bool is_passive = false;
  /// Hermiticity residual lies in (herm_threshold, 100 * herm_threshold].
  bool borderline = false;
  double lambda_min = 0.0;
  double herm_residual = 0.0;
  double herm_threshold = 0.0;
  double psd_threshold = 0.0;
  /// max(0, -lambda_min(C - Herm(Y) (x) I)).
  double epsilon = 0.0;
  /// -epsilon * d_a; the optimal energy change is never below this.
  double extraction_lower_bound = 0.0;
  double state_energy = 0.0;
  Index d_a = 0;
  std::optional<SdpSolution> sdp;
};

PassivityReport check_theorem1(const COperator& c, const Tolerances& tol = {});

/// -epsilon * d_a.
double extraction_bound(const COperator& c, const Tolerances& tol = {});

/// Convenience wrapper: build C, run the check, and optionally the SDP.
PassivityReport analyze(const DensityMatrix& rho, const HermitianOperator& h, bool run_sdp,
                        const SdpOptions& sdp_options = {}, const Tolerances& tol = {});

}  // namespace cplp
