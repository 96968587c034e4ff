#pragma once

#include "cplp/operators.hpp"

namespace cplp {

/// Cost operator on A (x) A' whose pairing with a Choi matrix E gives the
/// post-channel energy: tr[H (E_A (x) I_B) rho] = tr[C E].
///
/// Index convention on A (x) A': |a>_A |a'>_A' sits at a * d_a + a', with A
/// the channel input and A' the channel output.
struct COperator {
  Index d_a = 0;
  HermitianOperator matrix;
  /// tr_A'[d_a |Phi><Phi| C]; Hermitian only when the state allows it.
  Matrix y_candidate;
  /// tr[H rho].
  double state_energy = 0.0;
};

/// d_a |Phi><Phi| = sum_ij |i><j| (x) |i><j|, the Choi matrix of the identity channel.
Matrix identity_choi(Index d_a);

/// X (x) I on A (x) A'.
Matrix lift_to_aa(const Matrix& x);

/// tr_A' of an operator on A (x) A'.
Matrix trace_output(const Matrix& m, Index d_a);

}  // namespace cplp
