#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Everything here is written with explicit index loops so that it shares no
// code path with the library routines it checks.

#include <cstdint>
#include <random>
#include <vector>

#include "cplp/config.hpp"

namespace oracle {

using cplp::Complex;
using cplp::Index;
using cplp::Matrix;
using cplp::RealMatrix;
using cplp::Vector;

using Rng = std::mt19937_64;

Matrix ginibre(Index rows, Index cols, Rng& rng);
/// Hermitian with operator norm exactly `norm`.
Matrix random_hermitian(Index dim, double norm, Rng& rng);
Vector random_unit_vector(Index dim, Rng& rng);
/// Random full-rank density matrix (Ginibre G G^dagger / tr).
Matrix random_density(Index dim, Rng& rng);

/// Kraus operators of a random channel on C^d with `rank` Kraus terms, from a
/// Haar-like isometry (QR of a Ginibre matrix).
std::vector<Matrix> random_kraus(Index d, Index rank, Rng& rng);
/// E[(a a'), (b b')] = sum_m K_m[a', a] conj(K_m[b', b]).
Matrix choi_from_kraus(const std::vector<Matrix>& kraus);
/// Random Choi matrix by Ginibre sampling and congruence normalisation.
Matrix random_choi(Index d, Rng& rng);

/// sum_m (K_m (x) I) rho (K_m (x) I)^dagger, written out with index loops.
Matrix apply_kraus_on_a(const std::vector<Matrix>& kraus, const Matrix& rho, Index d_a, Index d_b);
/// Channel action from a Choi matrix: out[a', b'] = sum X[a, b] E[(a a'), (b b')].
Matrix apply_choi_loops(const Matrix& choi, const Matrix& x, Index d);

/// Explicit-loop partial traces for a d_a x d_b split.
Matrix trace_out_b(const Matrix& m, Index d_a, Index d_b);
Matrix trace_out_a(const Matrix& m, Index d_a, Index d_b);

/// Minimum of tr[C W W^dagger] over W with tr_A'(W W^dagger) = I, by projected
/// gradient on the Burer-Monteiro factor W (d^2 x d^2); best of `restarts`.
double gradient_channel_minimum(const Matrix& c, Index d, Rng& rng, int restarts = 3, int steps = 20000);

/// Minimum energy change over all d_a^{d_a} deterministic maps of A's level.
double brute_force_classical(const RealMatrix& energies, const RealMatrix& populations);

/// max over Pauli products M on A's qubits and N on B's qubits of
/// |tr[(M (x) N) rho] - tr[M rho_A] tr[N rho_B]|.
double pauli_product_correlation(const Matrix& rho, int qubits_a, int qubits_b);

/// Squared Schmidt coefficients via the reduced density matrix on A (ascending).
std::vector<double> reduced_spectrum_a(const Vector& psi, Index d_a, Index d_b);

/// Superoperator trace tr(I - E) = d^2 - <Phi~|E|Phi~>.
double trace_identity_minus(const Matrix& choi, Index d);
/// max over `samples` random unit u, v of ||(I - E)(|u><v|)||_1.
double sampled_one_one_norm(const Matrix& choi, Index d, int samples, Rng& rng);

}  // namespace oracle
