#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cplp/operators.hpp"

namespace cplp {

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();

/// `op` on `site` (0-based, site 0 is the most significant tensor factor)
/// of an `n_sites` qubit register.
Matrix on_site(const Matrix& op, int site, int n_sites);
}  // namespace pauli

/// Open-boundary nearest-neighbour XY chain in a transverse field:
///   H = field * sum_l Z_l + kappa * sum_l ((1+gamma)/2 X_l X_{l+1} + (1-gamma)/2 Y_l Y_{l+1}).
/// Sites are numbered from 1; subsystem A is the prefix `a_region`.
struct SpinChainSpec {
  int n_sites = 2;
  double kappa = 0.0;
  double gamma = 0.0;
  double field = 1.0;
  std::vector<int> a_region{1};
};

enum class TwoQubitForm {
  xy_symmetric,  // omega/2 (Z_A + Z_B) + kappa/2 (XX + YY)
  xx_only,       // kappa XX
  anisotropic,   // Z_A + Z_B + kappa ((1+gamma)/2 XX + (1-gamma)/2 YY)
};

struct TwoQubitSpec {
  TwoQubitForm form = TwoQubitForm::xy_symmetric;
  double omega = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
};

std::optional<TwoQubitForm> parse_two_qubit_form(const std::string& name);
std::string to_string(TwoQubitForm form);

struct Model {
  HermitianOperator hamiltonian;
  BipartiteSpace space;
};

/// Split H = H_A (x) I + I (x) H_B + V used by the frustration analysis.
struct LocalDecomposition {
  HermitianOperator h_a;
  HermitianOperator h_b;
  HermitianOperator v;
};

constexpr int kMaxChainSites = 12;

Model build_chain(const SpinChainSpec& spec);
LocalDecomposition decompose_chain(const SpinChainSpec& spec);

Model build_two_qubit(const TwoQubitSpec& spec);
LocalDecomposition decompose_two_qubit(const TwoQubitSpec& spec);

struct Eigenmixture {
  DensityMatrix state;
  /// Set when the spectrum has a degenerate level, so the eigenbasis (and
  /// therefore the state) depends on the eigensolver's choice of basis.
  bool degenerate_basis = false;
};

/// sum_i p_i |E_i><E_i| with populations ordered by ascending energy.
Eigenmixture eigenmixture(const HermitianOperator& h, const BipartiteSpace& space,
                          const std::vector<double>& populations, const Tolerances& tol = {});

/// exp(i G), computed from the eigendecomposition of G.
Matrix unitary_from_generator(const HermitianOperator& generator);

/// U gibbs(h, beta) U^dagger with U = exp(i G).
DensityMatrix rotated_thermal(const HermitianOperator& h, const BipartiteSpace& space, double beta,
                              const HermitianOperator& rotation_generator,
                              const Tolerances& tol = {});

}  // namespace cplp
