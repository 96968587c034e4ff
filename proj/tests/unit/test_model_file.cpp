#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cplp/model_file.hpp"
#include "oracles.hpp"

using namespace cplp;

namespace {

std::string experiment(const std::string& name) { return std::string(CPLP_EXPERIMENTS_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("cplp_model_file_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(ModelFile, EveryExperimentParses) {
  for (const auto& entry : std::filesystem::directory_iterator(CPLP_EXPERIMENTS_DIR)) {
    const Json doc = load_json_file(entry.path().string());
    if (doc.contains("energies")) {
      EXPECT_NO_THROW(parse_classical(doc)) << entry.path();
    } else if (doc.contains("scan") || doc.contains("chain_lengths")) {
      EXPECT_NO_THROW(parse_recipe(doc)) << entry.path();
    } else {
      const ModelFile mf = parse_model(doc);
      EXPECT_NO_THROW(build_state(mf)) << entry.path();
    }
  }
}

TEST(ModelFile, RotatedThermalDocument) {
  const ModelFile mf = parse_model(load_json_file(experiment("rotated_xy_thermal.json")));
  ASSERT_TRUE(mf.state.has_value());
  EXPECT_EQ(mf.state->kind, StateSpec::Kind::rotated_thermal);
  EXPECT_NEAR(mf.state->beta, 1.0 / 6.0, 1e-15);
  ASSERT_TRUE(mf.family.has_value());
  EXPECT_DOUBLE_EQ(mf.kappa, 10.0);
  const DensityMatrix rho = build_state(mf);
  const HermitianOperator g(kron(pauli::x(), pauli::x()));
  const Matrix want = rotated_thermal(mf.model.hamiltonian, mf.model.space, 1.0 / 6.0, g).matrix();
  EXPECT_LT((rho.matrix() - want).norm(), 1e-13);
}

TEST(ModelFile, ExplicitModelAndStateKeys) {
  const Json doc = Json::parse(R"({
    "explicit": {"d_a": 1, "d_b": 2, "h_real": [[1, 0], [0, -1]], "h_imag": [[0, 0.5], [-0.5, 0]]},
    "state": {"kind": "thermal", "beta": "inf"}
  })");
  const ModelFile mf = parse_model(doc);
  EXPECT_EQ(mf.model.space.d_b, 2);
  EXPECT_TRUE(std::isinf(mf.state->beta));
  EXPECT_EQ(mf.model.hamiltonian.matrix()(0, 1), Complex(0.0, 0.5));

  Json zero_t = doc;
  zero_t["state"] = {{"kind", "thermal"}, {"T", 0}};
  EXPECT_TRUE(std::isinf(parse_model(zero_t).state->beta));

  Json mixture = doc;
  mixture["state"] = {{"kind", "eigenmixture"}, {"populations", {0.75, 0.25}}};
  const DensityMatrix rho = build_state(parse_model(mixture));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-14);
}

TEST(ModelFile, MalformedInputsThrow) {
  EXPECT_THROW(load_json_file(write_temp("empty.json", "  \n")), InputError);
  EXPECT_THROW(load_json_file(write_temp("bad.json", "{\"family\": ")), InputError);
  EXPECT_THROW(load_json_file("/nonexistent/cplp.json"), InputError);
  EXPECT_THROW(parse_model(Json::parse(R"({"family": "ladder", "params": {}})")), InputError);
  EXPECT_THROW(parse_model(Json::parse(R"({"family": "two_qubit", "params": {"form": "xyz"}})")), InputError);
  EXPECT_THROW(parse_model(Json::parse(R"({"family": "two_qubit", "params": {"kappa": "big"}})")), InputError);
  EXPECT_THROW(parse_model(Json::parse(R"({"family": "two_qubit", "params": {}, "state": {"kind": "thermal", "T": 1, "beta": 1}})")),
               InputError);
  EXPECT_THROW(parse_model(Json::parse(R"({"family": "two_qubit", "params": {}, "state": {"kind": "hot", "T": 1}})")),
               InputError);
  EXPECT_THROW(parse_model(Json::parse(R"({"explicit": {"d_a": 2, "d_b": 2, "h_real": [[1, 2], [3, 4]]}})")), InputError);
  EXPECT_THROW(build_state(parse_model(Json::parse(R"({"family": "two_qubit", "params": {}})"))), InputError);
  EXPECT_THROW(parse_model(Json::parse("[1, 2]")), InputError);
}

TEST(ModelFile, ChainParameters) {
  const ModelFile mf = parse_model(Json::parse(
      R"({"family": "chain", "params": {"n_sites": 4, "gamma": 0.7, "kappa": 1.2, "a_sites": 2}, "state": {"kind": "thermal", "T": 1}})"));
  EXPECT_EQ(mf.model.space.d_a, 4);
  EXPECT_EQ(mf.model.space.d_b, 4);
  ASSERT_TRUE(mf.decomposition.has_value());
}

TEST(Recipe, GridAndWindow) {
  const ScanRecipe r = parse_recipe(load_json_file(experiment("anisotropic_bound_scan.json")));
  EXPECT_TRUE(r.with_bound);
  EXPECT_EQ(r.grid.size(), 10u);
  EXPECT_DOUBLE_EQ(r.grid.front(), 0.5);
  EXPECT_DOUBLE_EQ(r.grid.back(), 5.0);
  const ScanRecipe b1 = parse_recipe(load_json_file(experiment("separable_ground_scan.json")));
  EXPECT_DOUBLE_EQ(b1.options.t_lo, 1e-3);
  EXPECT_EQ(b1.grid, (std::vector<double>{0.5, 1.0, 1.5, 1.9}));
  const ScanRecipe chain = parse_recipe(load_json_file(experiment("chain_convergence.json")));
  EXPECT_EQ(chain.chain_lengths, (std::vector<int>{2, 3, 4, 5, 6, 7}));
}

TEST(Recipe, GridSpecString) {
  EXPECT_EQ(parse_grid("1:2:3"), (std::vector<double>{1.0, 1.5, 2.0}));
  EXPECT_THROW(parse_grid("1:2"), InputError);
  EXPECT_THROW(parse_grid("a:2:3"), InputError);
  EXPECT_THROW(parse_grid("1:2:0"), InputError);
}

TEST(Certificate, JsonRoundTrip) {
  oracle::Rng rng(83);
  const ChoiMatrix choi(2, oracle::random_choi(2, rng));
  const Matrix y = oracle::random_hermitian(2, 1.0, rng);
  const Certificate back = certificate_from_json(Json::parse(certificate_to_json(choi, y).dump()));
  EXPECT_EQ(back.choi.matrix(), choi.matrix());
  EXPECT_EQ(back.dual_y, y);
  EXPECT_THROW(certificate_from_json(Json::parse(R"({"d_a": 2})")), InputError);
}

TEST(Classical, DocumentParses) {
  const ClassicalInstance inst = parse_classical(load_json_file(experiment("classical_example.json")));
  EXPECT_EQ(inst.d_a(), 2);
  EXPECT_THROW(parse_classical(Json::parse(R"({"energies": [[0, 1]], "populations": [[0.2, 0.2]]})")), InputError);
}
