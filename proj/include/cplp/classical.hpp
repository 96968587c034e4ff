#pragma once

#include <utility>
#include <vector>

#include "cplp/operators.hpp"

namespace cplp {

/// Energies E_{i,j} and populations p_{i,j} of a bipartite system whose state
/// and Hamiltonian are both diagonal in the product basis |i>_A |j>_B.
///
/// On construction rows are sorted by row sum and columns by column sum of E.
/// If that yields E_{i,j} <= E_{i+1,j} and E_{i,j} <= E_{i,j+1} everywhere the
/// instance is stored in that order (`canonical() == true`); otherwise the
/// input order is kept.
class ClassicalInstance {
 public:
  /// Throws InvalidStateError on negative or non-normalised populations and
  /// DimensionError on shape mismatch.
  ClassicalInstance(RealMatrix energies, RealMatrix populations);

  const RealMatrix& energies() const { return energies_; }
  const RealMatrix& populations() const { return populations_; }
  Index d_a() const { return energies_.rows(); }
  Index d_b() const { return energies_.cols(); }
  bool canonical() const { return canonical_; }
  /// stored row r is input row row_order()[r]; likewise for columns.
  const std::vector<Index>& row_order() const { return row_order_; }
  const std::vector<Index>& col_order() const { return col_order_; }

 private:
  RealMatrix energies_;
  RealMatrix populations_;
  bool canonical_ = false;
  std::vector<Index> row_order_;
  std::vector<Index> col_order_;
};

struct ClassicalResult {
  /// e_tilde(i, k) = sum_j E_{i,j} p_{k,j}: energy when A's level k is sent to i.
  RealMatrix e_tilde;
  /// i*_k = argmin_i e_tilde(i, k), ties resolved toward k, then the smallest i.
  std::vector<Index> optimal_targets;
  double delta_e = 0.0;
  bool is_passive = false;
};

ClassicalResult solve_classical(const ClassicalInstance& inst);

struct SupportCheck {
  bool holds = false;
  /// Monotone ordering unavailable; the condition was not evaluated.
  bool skipped = false;
  /// (k, j) with p_{k,j} > 0 and E_{k-1,j} != E_{k,j}.
  std::vector<std::pair<Index, Index>> witnesses;
};

SupportCheck check_support_condition(const ClassicalInstance& inst);

/// Diagonal quantum embedding: H = sum E_{i,j} |ij><ij|, rho = sum p_{i,j} |ij><ij|.
struct ClassicalEmbedding {
  BipartiteSpace space;
  HermitianOperator hamiltonian;
  DensityMatrix state;
};

ClassicalEmbedding embed(const ClassicalInstance& inst);

}  // namespace cplp
