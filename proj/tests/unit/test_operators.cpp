#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cplp/operators.hpp"
#include "oracles.hpp"

using namespace cplp;

TEST(HermitianOperator, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, NotHermitianError);
}

TEST(HermitianOperator, SymmetrizesSmallResidual) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 1e-13;
  const HermitianOperator h(m);
  EXPECT_NEAR(h.hermiticity_residual(), 1e-13, 1e-20);
  EXPECT_EQ(h.matrix()(0, 1), h.matrix()(1, 0));
}

TEST(BipartiteSpace, FlatIndexAndValidation) {
  const BipartiteSpace s(2, 3);
  EXPECT_EQ(s.dim(), 6);
  EXPECT_EQ(s.flat(1, 2), 5);
  EXPECT_THROW(BipartiteSpace(0, 2), DimensionError);
}

TEST(DensityMatrix, ValidatesTraceAndPositivity) {
  const BipartiteSpace s(1, 2);
  EXPECT_THROW(DensityMatrix(s, HermitianOperator::identity(2)), InvalidStateError);
  EXPECT_THROW(DensityMatrix(s, HermitianOperator::diagonal(RealVector{{1.5, -0.5}})), InvalidStateError);
  EXPECT_THROW(DensityMatrix(BipartiteSpace(2, 2), HermitianOperator::identity(2) * 0.5), DimensionError);
  EXPECT_NO_THROW(DensityMatrix(s, HermitianOperator::identity(2) * 0.5));
}

TEST(PartialTrace, MatchesLoopOracle) {
  oracle::Rng rng(7);
  for (Index da : {1, 2, 3})
    for (Index db : {1, 2, 4}) {
      const BipartiteSpace s(da, db);
      const Matrix m = oracle::ginibre(s.dim(), s.dim(), rng);
      EXPECT_LT((partial_trace(m, s, Subsystem::B) - oracle::trace_out_b(m, da, db)).norm(), 1e-12);
      EXPECT_LT((partial_trace(m, s, Subsystem::A) - oracle::trace_out_a(m, da, db)).norm(), 1e-12);
    }
}

TEST(PartialTrace, OfProductIsFactor) {
  oracle::Rng rng(11);
  const Matrix x = oracle::random_density(3, rng);
  const Matrix y = oracle::random_density(2, rng);
  const BipartiteSpace s(3, 2);
  EXPECT_LT((partial_trace(kron(x, y), s, Subsystem::B) - x).norm(), 1e-12);
  EXPECT_LT((partial_trace(kron(x, y), s, Subsystem::A) - y).norm(), 1e-12);
}

TEST(PartialTranspose, IsInvolutionAndTransposesAFactor) {
  oracle::Rng rng(3);
  const Matrix x = oracle::ginibre(2, 2, rng);
  const Matrix y = oracle::ginibre(3, 3, rng);
  const BipartiteSpace s(2, 3);
  EXPECT_LT((partial_transpose_a(kron(x, y), s) - kron(x.transpose(), y)).norm(), 1e-12);
  const Matrix m = oracle::ginibre(6, 6, rng);
  EXPECT_LT((partial_transpose_a(partial_transpose_a(m, s), s) - m).norm(), 1e-12);
}

TEST(Eig, ReconstructsAndSortsAscending) {
  oracle::Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const HermitianOperator h(oracle::random_hermitian(5, 3.0, rng));
    const EigenSystem es = eig_hermitian(h);
    for (Index i = 1; i < es.values.size(); ++i) EXPECT_LE(es.values(i - 1), es.values(i));
    EXPECT_LT((spectral_sum(es, es.values) - h.matrix()).norm(), 1e-10);
    EXPECT_NEAR(op_norm(h), 3.0, 1e-10);
  }
}

TEST(ThermalPopulations, MatchExplicitBoltzmann) {
  const RealVector e{{-1.0, 0.5, 2.0}};
  const double beta = 0.7;
  const double z = std::exp(0.0) + std::exp(-beta * 1.5) + std::exp(-beta * 3.0);
  const RealVector p = thermal_populations(e, beta);
  EXPECT_NEAR(p(0), 1.0 / z, 1e-15);
  EXPECT_NEAR(p(1), std::exp(-beta * 1.5) / z, 1e-15);
  EXPECT_NEAR(p(2), std::exp(-beta * 3.0) / z, 1e-15);
}

TEST(ThermalPopulations, InfiniteBetaSpreadsOverGroundLevel) {
  const RealVector p = thermal_populations(RealVector{{0.0, 0.0, 1.0}}, kInfiniteBeta);
  EXPECT_DOUBLE_EQ(p(0), 0.5);
  EXPECT_DOUBLE_EQ(p(1), 0.5);
  EXPECT_DOUBLE_EQ(p(2), 0.0);
}

TEST(Gibbs, LargeBetaDoesNotOverflow) {
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{-500.0, 0.0, 300.0, 600.0}});
  const DensityMatrix rho = gibbs(h, BipartiteSpace(2, 2), 50.0);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-15);
}

TEST(Gibbs, EqualsExponentialSeries) {
  oracle::Rng rng(9);
  const HermitianOperator h(oracle::random_hermitian(4, 1.0, rng));
  const double beta = 0.3;
  // exp(-beta H) by a truncated Taylor series.
  Matrix term = Matrix::Identity(4, 4);
  Matrix sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * (-beta * h.matrix()) / static_cast<double>(k);
    sum += term;
  }
  sum /= sum.trace();
  EXPECT_LT((gibbs(h, BipartiteSpace(2, 2), beta).matrix() - sum).norm(), 1e-12);
}

TEST(Schmidt, MatchesReducedDensitySpectrum) {
  oracle::Rng rng(13);
  for (Index da : {2, 3})
    for (Index db : {2, 3, 4}) {
      const Vector psi = oracle::ginibre(da * db, 1, rng).col(0) * 3.0;
      std::vector<double> got = schmidt_spectrum(psi, BipartiteSpace(da, db));
      std::vector<double> want = oracle::reduced_spectrum_a(psi, da, db);
      std::sort(want.rbegin(), want.rend());
      want.resize(static_cast<std::size_t>(std::min(da, db)));
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
    }
}

TEST(Schmidt, ZeroVectorThrows) {
  EXPECT_THROW(schmidt_spectrum(Vector::Zero(4), BipartiteSpace(2, 2)), Error);
}

TEST(Norms, TraceNormAndCommutator) {
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{-2.0, 1.0, 0.5}});
  EXPECT_DOUBLE_EQ(trace_norm(h), 3.5);
  EXPECT_DOUBLE_EQ(op_norm(h), 2.0);
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  b(0, 0) = 1.0;
  b(1, 1) = -1.0;
  // [X, Z] = -2iY, Frobenius norm 2 sqrt(2).
  EXPECT_NEAR(commutator_norm(a, b), 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(commutator_norm(a, a), 0.0, 0.0);
}

TEST(LambdaMin, UsesHermitianPart) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 2.0;
  EXPECT_NEAR(lambda_min(m), -1.0, 1e-14);
}
