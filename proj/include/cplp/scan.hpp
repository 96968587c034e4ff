#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cplp/bounds.hpp"
#include "cplp/models.hpp"
#include "cplp/passivity.hpp"

namespace cplp {

/// Hamiltonian plus the family of states exp(-H/T)/Z, optionally conjugated by
/// U = exp(i G). The eigendecomposition is computed once.
class ThermalModel {
 public:
  ThermalModel(HermitianOperator h, BipartiteSpace space,
               std::optional<HermitianOperator> rotation_generator = std::nullopt,
               const Tolerances& tol = {});

  const HermitianOperator& hamiltonian() const { return h_; }
  const BipartiteSpace& space() const { return space_; }
  const EigenSystem& eigensystem() const { return eig_; }
  bool rotated() const { return unitary_.has_value(); }

  DensityMatrix state_at_beta(double beta) const;
  PassivityReport verdict_at_temperature(double t) const;

 private:
  HermitianOperator h_;
  BipartiteSpace space_;
  Tolerances tol_;
  EigenSystem eig_;
  std::optional<Matrix> unitary_;
};

/// Model family with the coupling kappa left free.
struct ModelFamily {
  enum class Kind { chain, two_qubit };
  Kind kind = Kind::two_qubit;
  SpinChainSpec chain;
  TwoQubitSpec two_qubit;
  std::optional<HermitianOperator> rotation_generator;

  ThermalModel build(double kappa, const Tolerances& tol = {}) const;
  std::string describe() const;
};

struct ThresholdOptions {
  double t_lo = 1e-2;
  double t_hi = 1e2;
  int grid_points = 64;
  int bisection_steps = 40;
  Tolerances tol;
};

enum class ThresholdFlag {
  found,
  at_least_t_hi,  // passive on the whole window; t_star = t_hi
  none,           // not passive at t_lo
};

std::string to_string(ThresholdFlag flag);

struct ThresholdResult {
  /// NaN when flag == none.
  double t_star = 0.0;
  ThresholdFlag flag = ThresholdFlag::none;
  /// The coarse grid shows at most one verdict change.
  bool monotonicity_verified = true;
  /// Every verdict change on the grid, refined by bisection, in increasing T.
  std::vector<double> transitions;
  /// Verdict passive at bracket_lo, non-passive at bracket_hi.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// T* = sup{T : passive at every sampled T' <= T}: log grid over the window to
/// find the first passive -> non-passive change, then log-bisection.
ThresholdResult threshold_temperature(const ThermalModel& model, const ThresholdOptions& options = {});

struct ScanPoint {
  double parameter = 0.0;
  double t_star = 0.0;
  /// NaN when no bound was requested or it is unavailable.
  double t_bound = 0.0;
  bool monotonicity_verified = true;
  std::vector<double> transitions;
  std::vector<std::string> flags;
};

struct ScanResult {
  std::string parameter_name = "kappa";
  std::string model;
  ThresholdOptions options;
  bool with_bound = false;
  std::vector<ScanPoint> points;
};

/// One threshold per kappa. Points run on up to `jobs` threads (0: hardware
/// concurrency); output order follows the grid. Per-point failures become NaN
/// with an "error" flag. With `with_bound` each point also carries T_b.
ScanResult sweep_kappa(const ModelFamily& family, const std::vector<double>& kappa_grid,
                       const ThresholdOptions& options = {}, unsigned jobs = 0, bool with_bound = false);

struct ChainConvergence {
  std::vector<int> n_list;
  std::vector<ScanResult> curves;
  /// max_k |T*_{n_list[i+1]}(k) - T*_{n_list[i]}(k)| over points where both are finite.
  std::vector<double> max_consecutive_diff;
};

/// T*(kappa) of the XY chain with A = site 1, field 1, for each chain length.
ChainConvergence chain_convergence(double gamma, const std::vector<double>& kappa_grid,
                                   const std::vector<int>& n_list, const ThresholdOptions& options = {},
                                   unsigned jobs = 0);

/// n points log- or linearly spaced from lo to hi inclusive (n = 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);

/// Deterministic "%.17g" rendering; NaN prints as "nan".
std::string format_double(double x);

/// Header "parameter,t_star,t_bound,flags"; flags joined with ';'.
void write_csv(std::ostream& out, const ScanResult& result);

}  // namespace cplp
