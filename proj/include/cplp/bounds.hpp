#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cplp/operators.hpp"

namespace cplp {

/// Spectrum and per-level Schmidt data of a bipartite Hamiltonian.
///
/// Energies are shifted so that E_0 = 0; the analytic bounds below are only
/// meaningful in that gauge. `energy_offset` is the original E_0.
struct SpectralData {
  Index d_a = 0;
  Index d_b = 0;
  std::vector<double> energies;
  std::vector<double> schmidt_mins;
  std::vector<double> schmidt_maxs;
  double energy_offset = 0.0;
  bool ground_degenerate = false;
  bool ground_full_rank = false;
  /// d_a > d_b: no state can have full Schmidt rank on A.
  bool schmidt_rank_impossible = false;
};

SpectralData spectral_data(const HermitianOperator& h, const BipartiteSpace& space,
                           const Tolerances& tol = {});

/// Throws PreconditionError unless the ground level is nondegenerate with
/// full Schmidt rank.
void require_bound_preconditions(const SpectralData& sd);

/// max_{i>=1} E_i q_{i,max}^2.
double max_excited_weight(const SpectralData& sd);

/// (1 + E_1 q_{0,min}^2 / max_{i>=1}[E_i q_{i,max}^2])^{-1}; every eigenmixture
/// with ground population at least this value is CP-local passive.
double threshold_population(const SpectralData& sd);

/// Ground population of exp(-beta H) / Z on the shifted spectrum.
double ground_population(const SpectralData& sd, double beta);
/// <H>_beta on the shifted spectrum.
double mean_energy(const SpectralData& sd, double beta);

enum class BoundFlag {
  crossing,        // root found inside the window
  below_window,    // condition already holds at the smallest beta
  no_crossing,     // condition fails on the whole window; beta = beta_hi
};

std::string to_string(BoundFlag flag);

struct TemperatureBound {
  double beta = 0.0;
  double temperature = 0.0;
  BoundFlag flag = BoundFlag::crossing;
  /// The difference <H>_beta - E_1 p_0(beta) q_{0,min}^2 changes sign once on
  /// the sampled window.
  bool single_crossing = true;
};

/// beta_b solving <H>_beta = E_1 p_0(beta) q_{0,min}^2, found by log-bisection on
/// [beta_lo, beta_hi]. When the sampled difference crosses zero more than once
/// the largest crossing is returned, so the condition holds for every sampled
/// beta above the result.
TemperatureBound threshold_temperature_bound(const SpectralData& sd, double beta_lo = 1e-3,
                                             double beta_hi = 1e3);

struct FrustrationReport {
  double e_f = 0.0;
  /// E_f / max(gap(H_A), gap(H_B)); infinite when both local gaps vanish.
  double lhs = 0.0;
  /// 1 - q_{0,max}.
  double middle = 0.0;
  /// (d_A - 1) q_{0,min}.
  double lower_bound_q = 0.0;
  double max_local_gap = 0.0;
  bool inequality_holds = false;
};

/// Frustration energy E_0(H) - E_0(H_A + H_B) - E_0(V) and the chain
/// E_f / max_i gap_i >= 1 - q_{0,max} >= (d_A - 1) q_{0,min}.
/// Throws DimensionError if h_total != h_a (x) I + I (x) h_b + v within 1e-9.
FrustrationReport frustration(const HermitianOperator& h_total, const HermitianOperator& h_a,
                              const HermitianOperator& h_b, const HermitianOperator& v,
                              const BipartiteSpace& space, const Tolerances& tol = {});

struct ClusteringEstimate {
  /// Lower bound on max_{||M||,||N||<=1} |tr[(M (x) N) rho] - tr[M rho_A] tr[N rho_B]|.
  double value = 0.0;
  int restarts = 0;
  int iterations = 0;
};

/// Alternating maximisation over Hermitian M, N with closed-form sign-function
/// steps; 5 seeded random starts. Requires flat dimension <= 1024.
ClusteringEstimate clustering_estimate(const DensityMatrix& rho, std::uint64_t seed = 0,
                                       int restarts = 5);

struct Theorem3Inputs {
  SpectralData spectral_ab1;
  double k = 1.0;
  double c1 = 0.0;
  double c2 = 1.0;
  std::function<double(double)> epsilon_fn;
  double h_a_norm = 0.0;
  Index d_a = 0;
  std::function<double(double)> boundary_size_fn;
  double l = 1.0;
};

struct Theorem3Result {
  double lambda_l = 0.0;
  bool condition_holds = false;
  /// Only meaningful when `condition_holds`.
  double p0_bound = 1.0;
  double beta_star_hint = 0.0;
  /// Ground thermal population cannot reach p0_bound inside [1e-3, 1e3].
  bool beta_hint_at_edge = false;
};

/// lambda(l) = K d_A^2 ||H_A|| |dB_2|(l) (eps(l/2) + c1 exp(-c2 l)) and the
/// resulting ground-population bound
///   p0 = (1 + lambda / m) (1 + E_1 q_{0,min}^2 / m)^{-1},  m = max_{i>=1} E_i q_{i,max}^2.
/// Throws Error if epsilon_fn is negative or increasing on its sampled points.
Theorem3Result theorem3_check(const Theorem3Inputs& in);

}  // namespace cplp
