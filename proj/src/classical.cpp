#include "cplp/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cplp {

namespace {

double tie_tolerance(const RealMatrix& m) { return 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()); }

std::vector<Index> order_by(const RealVector& keys) {
  std::vector<Index> idx(static_cast<std::size_t>(keys.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return keys(a) < keys(b); });
  return idx;
}

RealMatrix permute(const RealMatrix& m, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  RealMatrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      out(r, c) = m(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
  return out;
}

bool monotone(const RealMatrix& e) {
  const double tol = tie_tolerance(e);
  for (Index i = 0; i < e.rows(); ++i)
    for (Index j = 0; j < e.cols(); ++j) {
      if (i + 1 < e.rows() && e(i, j) > e(i + 1, j) + tol) return false;
      if (j + 1 < e.cols() && e(i, j) > e(i, j + 1) + tol) return false;
    }
  return true;
}

}  // namespace

ClassicalInstance::ClassicalInstance(RealMatrix energies, RealMatrix populations) {
  if (energies.rows() < 1 || energies.cols() < 1 || energies.rows() != populations.rows() ||
      energies.cols() != populations.cols()) {
    throw DimensionError("ClassicalInstance: E and p must have the same nonempty shape");
  }
  if (!energies.allFinite() || !populations.allFinite()) throw InvalidStateError("ClassicalInstance: non-finite entry");
  if (populations.minCoeff() < 0.0) throw InvalidStateError("ClassicalInstance: negative population");
  if (std::abs(populations.sum() - 1.0) > 1e-9) throw InvalidStateError("ClassicalInstance: populations must sum to 1");

  const std::vector<Index> rows = order_by(energies.rowwise().sum());
  const std::vector<Index> cols = order_by(energies.colwise().sum().transpose());
  const RealMatrix sorted = permute(energies, rows, cols);
  canonical_ = monotone(sorted);
  if (canonical_) {
    energies_ = sorted;
    populations_ = permute(populations, rows, cols);
    row_order_ = rows;
    col_order_ = cols;
  } else {
    energies_ = std::move(energies);
    populations_ = std::move(populations);
    row_order_.resize(static_cast<std::size_t>(energies_.rows()));
    col_order_.resize(static_cast<std::size_t>(energies_.cols()));
    std::iota(row_order_.begin(), row_order_.end(), Index{0});
    std::iota(col_order_.begin(), col_order_.end(), Index{0});
  }
}

ClassicalResult solve_classical(const ClassicalInstance& inst) {
  const RealMatrix& e = inst.energies();
  const RealMatrix& p = inst.populations();
  ClassicalResult r;
  r.e_tilde = e * p.transpose();
  const double tol = tie_tolerance(r.e_tilde);
  const Index d = inst.d_a();
  r.is_passive = true;
  for (Index k = 0; k < d; ++k) {
    const double best = r.e_tilde.col(k).minCoeff();
    Index target = k;
    if (r.e_tilde(k, k) > best + tol) {
      for (Index i = 0; i < d; ++i)
        if (r.e_tilde(i, k) <= best + tol) {
          target = i;
          break;
        }
    }
    r.optimal_targets.push_back(target);
    r.delta_e += r.e_tilde(target, k) - r.e_tilde(k, k);
    r.is_passive = r.is_passive && target == k;
  }
  return r;
}

SupportCheck check_support_condition(const ClassicalInstance& inst) {
  SupportCheck out;
  if (!inst.canonical()) {
    out.skipped = true;
    return out;
  }
  const RealMatrix& e = inst.energies();
  const RealMatrix& p = inst.populations();
  const double tol = tie_tolerance(e);
  for (Index k = 1; k < inst.d_a(); ++k)
    for (Index j = 0; j < inst.d_b(); ++j)
      if (p(k, j) > 0.0 && std::abs(e(k - 1, j) - e(k, j)) > tol) out.witnesses.emplace_back(k, j);
  out.holds = out.witnesses.empty();
  return out;
}

ClassicalEmbedding embed(const ClassicalInstance& inst) {
  const BipartiteSpace space(inst.d_a(), inst.d_b());
  RealVector h(space.dim());
  RealVector rho(space.dim());
  for (Index i = 0; i < inst.d_a(); ++i)
    for (Index j = 0; j < inst.d_b(); ++j) {
      h(space.flat(i, j)) = inst.energies()(i, j);
      rho(space.flat(i, j)) = inst.populations()(i, j);
    }
  return {space, HermitianOperator::diagonal(h), DensityMatrix(space, HermitianOperator::diagonal(rho))};
}

}  // namespace cplp
