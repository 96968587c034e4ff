#pragma once

#include <limits>
#include <vector>

#include "cplp/config.hpp"

namespace cplp {

/// Dense Hermitian matrix. Construction checks Hermiticity against
/// `herm_tol * max(1, max|entry|)` and stores the symmetrized matrix.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m, double herm_tol = Tolerances{}.herm_tol);

  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);
  static HermitianOperator diagonal(const RealVector& diag);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double hermiticity_residual() const { return residual_; }

  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double s) const;

 private:
  Matrix m_;
  double residual_ = 0.0;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

/// Two-party split of a finite Hilbert space. The composite basis vector
/// |i>_A |j>_B sits at flat index i * d_b + j.
struct BipartiteSpace {
  Index d_a = 1;
  Index d_b = 1;

  BipartiteSpace() = default;
  BipartiteSpace(Index a, Index b);

  Index dim() const { return d_a * d_b; }
  Index flat(Index i, Index j) const { return i * d_b + j; }

  bool operator==(const BipartiteSpace&) const = default;
};

enum class Subsystem { A, B };

/// Unit-trace PSD operator attached to a bipartite space.
class DensityMatrix {
 public:
  DensityMatrix(BipartiteSpace space, HermitianOperator op, const Tolerances& tol = {});

  const BipartiteSpace& space() const { return space_; }
  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }

 private:
  BipartiteSpace space_;
  HermitianOperator op_;
};

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

Matrix kron(const Matrix& x, const Matrix& y);
HermitianOperator tensor(const HermitianOperator& x, const HermitianOperator& y);

Matrix partial_trace(const Matrix& m, const BipartiteSpace& space, Subsystem which);
HermitianOperator partial_trace(const HermitianOperator& m, const BipartiteSpace& space,
                                Subsystem which);

Matrix partial_transpose_a(const Matrix& m, const BipartiteSpace& space);
HermitianOperator partial_transpose_a(const HermitianOperator& m, const BipartiteSpace& space);

/// Throws ConvergenceError if the solver does not converge.
EigenSystem eig_hermitian(const HermitianOperator& m);
EigenSystem eig_hermitian(const Matrix& hermitian);

/// Smallest eigenvalue of the Hermitian part of `m`.
double lambda_min(const Matrix& m);

/// exp(-beta (E_i - E_0)) normalized. beta = +inf gives the uniform
/// distribution over levels within `deg_tol * max(1, spread)` of E_0.
RealVector thermal_populations(const RealVector& energies, double beta, double deg_tol = 1e-8);

DensityMatrix gibbs(const HermitianOperator& h, const BipartiteSpace& space, double beta,
                    const Tolerances& tol = {});
DensityMatrix gibbs(const EigenSystem& eig, const BipartiteSpace& space, double beta,
                    const Tolerances& tol = {});

/// Uniform mixture over the ground eigenspace.
DensityMatrix ground_projector_state(const HermitianOperator& h, const BipartiteSpace& space,
                                     const Tolerances& tol = {});

/// Builds V diag(w) V^dagger.
Matrix spectral_sum(const EigenSystem& eig, const RealVector& weights);

/// Squared Schmidt coefficients of a pure state, descending, of length
/// min(d_a, d_b). The vector is normalized first; a zero vector throws.
std::vector<double> schmidt_spectrum(const Vector& state, const BipartiteSpace& space);

double op_norm(const HermitianOperator& m);
double trace_norm(const HermitianOperator& m);
double max_abs_entry(const Matrix& m);

/// Commutator norm ||[a, b]||_F.
double commutator_norm(const Matrix& a, const Matrix& b);

/// Hermitian part (m + m^dagger) / 2.
Matrix herm(const Matrix& m);

constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

}  // namespace cplp
