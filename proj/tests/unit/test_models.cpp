#include <gtest/gtest.h>

#include <cmath>

#include "cplp/models.hpp"
#include "oracles.hpp"

using namespace cplp;

namespace {

Matrix px() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}
Matrix py() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0, -1);
  m(1, 0) = Complex(0, 1);
  return m;
}
Matrix pz() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
Matrix id2() { return Matrix::Identity(2, 2); }

// Kronecker product written independently of cplp::kron.
Matrix kr(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TEST(Pauli, OnSiteOrdering) {
  EXPECT_LT((pauli::on_site(pauli::z(), 0, 3) - kr(kr(pz(), id2()), id2())).norm(), 1e-15);
  EXPECT_LT((pauli::on_site(pauli::x(), 2, 3) - kr(kr(id2(), id2()), px())).norm(), 1e-15);
}

TEST(TwoQubit, FormsMatchExplicitPauliSums) {
  TwoQubitSpec s;
  s.omega = 2.0;
  s.kappa = 10.0;
  s.form = TwoQubitForm::xy_symmetric;
  const Matrix xy = 1.0 * (kr(pz(), id2()) + kr(id2(), pz())) + 5.0 * (kr(px(), px()) + kr(py(), py()));
  EXPECT_LT((build_two_qubit(s).hamiltonian.matrix() - xy).norm(), 1e-13);

  s.form = TwoQubitForm::xx_only;
  s.kappa = 0.5;
  EXPECT_LT((build_two_qubit(s).hamiltonian.matrix() - 0.5 * kr(px(), px())).norm(), 1e-14);

  s.form = TwoQubitForm::anisotropic;
  s.kappa = 2.0;
  s.gamma = 0.25;
  const Matrix an = kr(pz(), id2()) + kr(id2(), pz()) + 2.0 * (0.625 * kr(px(), px()) + 0.375 * kr(py(), py()));
  EXPECT_LT((build_two_qubit(s).hamiltonian.matrix() - an).norm(), 1e-13);
}

TEST(TwoQubit, DecompositionSumsToHamiltonian) {
  for (TwoQubitForm f : {TwoQubitForm::xy_symmetric, TwoQubitForm::xx_only, TwoQubitForm::anisotropic}) {
    const TwoQubitSpec s{f, -2.0, 1.3, 0.4};
    const Model m = build_two_qubit(s);
    const LocalDecomposition d = decompose_two_qubit(s);
    const Matrix sum = kron(d.h_a.matrix(), id2()) + kron(id2(), d.h_b.matrix()) + d.v.matrix();
    EXPECT_LT((sum - m.hamiltonian.matrix()).norm(), 1e-13) << to_string(f);
  }
}

TEST(TwoQubit, FormNamesRoundTrip) {
  for (TwoQubitForm f : {TwoQubitForm::xy_symmetric, TwoQubitForm::xx_only, TwoQubitForm::anisotropic})
    EXPECT_EQ(parse_two_qubit_form(to_string(f)), f);
  EXPECT_FALSE(parse_two_qubit_form("heisenberg").has_value());
}

TEST(Chain, TwoSitesEqualsAnisotropicPair) {
  SpinChainSpec c;
  c.n_sites = 2;
  c.kappa = 1.7;
  c.gamma = 0.3;
  const TwoQubitSpec q{TwoQubitForm::anisotropic, 0.0, 1.7, 0.3};
  EXPECT_LT((build_chain(c).hamiltonian.matrix() - build_two_qubit(q).hamiltonian.matrix()).norm(), 1e-13);
}

TEST(Chain, ThreeSitesExplicit) {
  SpinChainSpec c;
  c.n_sites = 3;
  c.kappa = 0.8;
  c.gamma = 0.7;
  c.field = 1.0;
  const double jx = 0.8 * 0.85, jy = 0.8 * 0.15;
  Matrix h = kr(kr(pz(), id2()), id2()) + kr(kr(id2(), pz()), id2()) + kr(kr(id2(), id2()), pz());
  h += jx * (kr(kr(px(), px()), id2()) + kr(id2(), kr(px(), px())));
  h += jy * (kr(kr(py(), py()), id2()) + kr(id2(), kr(py(), py())));
  const Model m = build_chain(c);
  EXPECT_EQ(m.space.d_a, 2);
  EXPECT_EQ(m.space.d_b, 4);
  EXPECT_LT((m.hamiltonian.matrix() - h).norm(), 1e-13);
}

TEST(Chain, RegionSplitAndDecomposition) {
  SpinChainSpec c;
  c.n_sites = 4;
  c.kappa = 1.1;
  c.gamma = 0.2;
  c.a_region = {1, 2};
  const Model m = build_chain(c);
  EXPECT_EQ(m.space.d_a, 4);
  EXPECT_EQ(m.space.d_b, 4);
  const LocalDecomposition d = decompose_chain(c);
  const Matrix sum = kron(d.h_a.matrix(), Matrix::Identity(4, 4)) + kron(Matrix::Identity(4, 4), d.h_b.matrix()) +
                     d.v.matrix();
  EXPECT_LT((sum - m.hamiltonian.matrix()).norm(), 1e-12);
}

TEST(Chain, InvalidSpecsThrow) {
  SpinChainSpec c;
  c.n_sites = 1;
  EXPECT_THROW(build_chain(c), DimensionError);
  c.n_sites = kMaxChainSites + 1;
  EXPECT_THROW(build_chain(c), DimensionError);
  c.n_sites = 3;
  c.a_region = {2};
  EXPECT_THROW(build_chain(c), DimensionError);
  c.a_region = {1, 2, 3};
  EXPECT_THROW(build_chain(c), DimensionError);
  c.a_region = {1};
  c.kappa = std::nan("");
  EXPECT_THROW(build_chain(c), Error);
}

TEST(Unitary, ExpOfXX) {
  const HermitianOperator g(kr(px(), px()));
  const Matrix want = std::cos(1.0) * Matrix::Identity(4, 4) + Complex(0, std::sin(1.0)) * kr(px(), px());
  EXPECT_LT((unitary_from_generator(g) - want).norm(), 1e-14);
}

TEST(Eigenmixture, PopulationsFollowAscendingEnergy) {
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{3.0, -1.0, 0.0, 2.0}});
  const Eigenmixture em = eigenmixture(h, BipartiteSpace(2, 2), {0.4, 0.3, 0.2, 0.1});
  EXPECT_FALSE(em.degenerate_basis);
  EXPECT_NEAR(em.state.matrix()(1, 1).real(), 0.4, 1e-14);
  EXPECT_NEAR(em.state.matrix()(2, 2).real(), 0.3, 1e-14);
  EXPECT_NEAR(em.state.matrix()(3, 3).real(), 0.2, 1e-14);
  EXPECT_NEAR(em.state.matrix()(0, 0).real(), 0.1, 1e-14);
}

TEST(Eigenmixture, FlagsDegenerateBasisAndValidates) {
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{0.0, 1.0, 1.0, 2.0}});
  EXPECT_TRUE(eigenmixture(h, BipartiteSpace(2, 2), {0.25, 0.25, 0.25, 0.25}).degenerate_basis);
  EXPECT_THROW(eigenmixture(h, BipartiteSpace(2, 2), {0.5, 0.5, 0.5, -0.5}), InvalidStateError);
  EXPECT_THROW(eigenmixture(h, BipartiteSpace(2, 2), {0.5, 0.5}), DimensionError);
}

TEST(RotatedThermal, ConjugatesGibbs) {
  oracle::Rng rng(21);
  const HermitianOperator h(oracle::random_hermitian(4, 2.0, rng));
  const HermitianOperator g(oracle::random_hermitian(4, 1.0, rng));
  const BipartiteSpace s(2, 2);
  const Matrix u = unitary_from_generator(g);
  const Matrix want = u * gibbs(h, s, 0.8).matrix() * u.adjoint();
  EXPECT_LT((rotated_thermal(h, s, 0.8, g).matrix() - want).norm(), 1e-13);
  EXPECT_LT((u * u.adjoint() - Matrix::Identity(4, 4)).norm(), 1e-13);
}
