#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const std::string kBinary = CPLP_BINARY;
const std::string kExperiments = CPLP_EXPERIMENTS_DIR;
const std::string kSchema = CPLP_SCHEMA;
const std::string kValidator = CPLP_VALIDATOR;

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("cplp_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Invocation {
  int code = -1;
  std::string stdout_path;
  Json json() const {
    std::ifstream f(stdout_path);
    return Json::parse(f);
  }
};

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Invocation run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  Invocation r;
  r.stdout_path = (scratch() / ("out" + std::to_string(counter++) + ".json")).string();
  r.code = shell(env + " " + kBinary + " " + args + " > " + r.stdout_path + " 2> /dev/null");
  return r;
}

std::string experiment(const std::string& name) { return kExperiments + "/" + name; }

std::string write_scratch(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

// 0 valid, 1 invalid, 77 validator unavailable.
int validate(const std::string& definition, const std::string& doc) {
  return shell("python3 " + kValidator + " " + kSchema + " " + definition + " " + doc);
}

#define EXPECT_SCHEMA(definition, path)                                 \
  do {                                                                  \
    const int v_ = validate(definition, path);                          \
    if (v_ != 77) { EXPECT_EQ(v_, 0) << (definition) << " " << (path); } \
  } while (0)

}  // namespace

TEST(Cli, CheckPassiveThermalXX) {
  const Invocation r = run("check " + experiment("xx_thermal.json"));
  EXPECT_EQ(r.code, 0);
  const Json j = r.json();
  EXPECT_TRUE(j["report"]["is_passive"].get<bool>());
  EXPECT_EQ(j["state_kind"], "thermal");
  EXPECT_SCHEMA("check", r.stdout_path);
}

TEST(Cli, CheckNotPassiveRotatedHot) {
  const std::string model = write_scratch("rotated_hot.json", R"({
    "family": "two_qubit", "params": {"form": "xy_symmetric", "omega": 2, "kappa": 10},
    "state": {"kind": "rotated_thermal", "T": 30, "generator": "xx"}})");
  const Invocation r = run("check " + model);
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.json()["report"]["is_passive"].get<bool>());
  EXPECT_GT(r.json()["report"]["epsilon"].get<double>(), 0.0);
  EXPECT_SCHEMA("check", r.stdout_path);
}

TEST(Cli, CheckTolOverride) {
  const Invocation flag = run("check --tol 1e-6 " + experiment("xx_thermal.json"));
  EXPECT_EQ(flag.json()["tolerances"]["psd_tol"].get<double>(), 1e-6);
  const Invocation env = run("check " + experiment("xx_thermal.json"), "CPLP_TOL=1e-7");
  EXPECT_EQ(env.json()["tolerances"]["psd_tol"].get<double>(), 1e-7);
  EXPECT_EQ(run("check " + experiment("xx_thermal.json"), "CPLP_TOL=abc").code, 2);
}

TEST(Cli, ExtractThenVerify) {
  const std::string cert = (scratch() / "cert.json").string();
  const std::string model = write_scratch("active.json", R"({
    "family": "two_qubit", "params": {"form": "anisotropic", "kappa": 2.5, "gamma": 0.0001},
    "state": {"kind": "thermal", "T": 5}})");
  const Invocation ex = run("extract " + model + " --choi-out " + cert);
  ASSERT_EQ(ex.code, 0);
  const Json j = ex.json();
  EXPECT_TRUE(j["sdp"]["converged"].get<bool>());
  EXPECT_TRUE(j["certificate"]["passed"].get<bool>());
  EXPECT_LT(j["sdp"]["delta_e"].get<double>(), -1e-3);
  EXPECT_GE(j["sdp"]["delta_e"].get<double>(), j["passivity"]["extraction_lower_bound"].get<double>() - 1e-7);
  EXPECT_SCHEMA("extract", ex.stdout_path);
  EXPECT_SCHEMA("certificate_file", cert);

  const Invocation ok = run("verify " + model + " --certificate " + cert);
  EXPECT_EQ(ok.code, 0);
  EXPECT_SCHEMA("verify", ok.stdout_path);

  std::ifstream in(cert);
  Json c = Json::parse(in);
  c["dual_y"]["real"][0][0] = c["dual_y"]["real"][0][0].get<double>() - 0.5;
  const std::string bad = write_scratch("bad_cert.json", c.dump());
  EXPECT_EQ(run("verify " + model + " --certificate " + bad).code, 1);
  EXPECT_EQ(run("verify " + model + " --certificate " + experiment("classical_example.json")).code, 2);
}

TEST(Cli, ScanWritesCsvAndMetadata) {
  const std::string out = (scratch() / "bound_scan.csv").string();
  const Invocation r = run("scan " + experiment("anisotropic_bound_scan.json") + " --grid 0.5:5:3 --jobs 2 --out " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_SCHEMA("scan_summary", r.stdout_path);
  std::ifstream csv(out);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "parameter,t_star,t_bound,flags");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 3);
  const std::string meta = (scratch() / "bound_scan.json").string();
  ASSERT_TRUE(fs::exists(meta));
  EXPECT_SCHEMA("scan_metadata", meta);
}

TEST(Cli, ChainScanWritesOneCsvPerLength) {
  const std::string recipe = write_scratch("chain.json", R"({
    "family": "chain", "params": {"n_sites": 2, "gamma": 0.7},
    "state": {"kind": "thermal"},
    "scan": {"grid": [0.5, 1.5, 2], "grid_points": 16, "bisection_steps": 10},
    "chain_lengths": [2, 3]})");
  const std::string out = (scratch() / "chain.csv").string();
  const Invocation r = run("scan " + recipe + " --out " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(scratch() / "chain_n2.csv"));
  EXPECT_TRUE(fs::exists(scratch() / "chain_n3.csv"));
  EXPECT_SCHEMA("scan_metadata", (scratch() / "chain.json").string());
}

TEST(Cli, ScanBadParamIsInputError) {
  EXPECT_EQ(run("scan " + experiment("anisotropic_bound_scan.json") + " --param omega --out " + (scratch() / "x.csv").string()).code, 2);
  EXPECT_EQ(run("scan " + experiment("anisotropic_bound_scan.json") + " --grid 1:2 --out " + (scratch() / "x.csv").string()).code, 2);
}

TEST(Cli, BoundsReport) {
  const Invocation r = run("bounds " + experiment("anisotropic_bounds.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = r.json();
  EXPECT_GT(j["p_star_bound"].get<double>(), 0.0);
  EXPECT_LT(j["p_star_bound"].get<double>(), 1.0);
  EXPECT_TRUE(j["frustration_inequality"]["inequality_holds"].get<bool>());
  EXPECT_DOUBLE_EQ(j["spectral"]["energies"][0].get<double>(), 0.0);
  EXPECT_TRUE(j.contains("clustering_lower_bound"));
  EXPECT_SCHEMA("bounds", r.stdout_path);
}

TEST(Cli, BoundsPreconditionExit) {
  const Invocation r = run("bounds " + experiment("xx_thermal.json"));
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.json()["error"]["kind"], "precondition");
  EXPECT_SCHEMA("bounds", r.stdout_path);
}

TEST(Cli, ClassicalWorkedExample) {
  const Invocation r = run("classical " + experiment("classical_example.json"));
  EXPECT_EQ(r.code, 1);
  const Json j = r.json();
  EXPECT_DOUBLE_EQ(j["delta_e"].get<double>(), -2.0);
  EXPECT_EQ(j["support_condition"]["witnesses"], Json::parse("[[1, 0], [1, 1]]"));
  EXPECT_SCHEMA("classical", r.stdout_path);
}

TEST(Cli, InputErrors) {
  const Invocation empty = run("check " + write_scratch("empty.json", ""));
  EXPECT_EQ(empty.code, 2);
  EXPECT_SCHEMA("error_document", empty.stdout_path);
  EXPECT_EQ(run("check " + write_scratch("broken.json", "{\"family\":")).code, 2);
  EXPECT_EQ(run("check /nonexistent/model.json").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check").code, 2);
  const std::string neg = write_scratch("neg.json", R"({
    "explicit": {"d_a": 2, "d_b": 1, "h_real": [[1, 0], [0, 2]]},
    "state": {"kind": "eigenmixture", "populations": [1.5, -0.5]}})");
  EXPECT_EQ(run("check " + neg).code, 2);
}

TEST(Cli, ExtractNonConvergenceExit) {
  // Double precision cannot certify this instance at 1e-12; the solver stalls and reports its last iterate.
  const Invocation r = run("extract --tol 1e-12 " + experiment("anisotropic_bounds.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.json()["sdp"]["converged"].get<bool>());
}
