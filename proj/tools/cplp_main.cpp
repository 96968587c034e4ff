// cplp: command-line front end for the CP-local passivity toolkit.
//
// Exit codes: 0 passive / success, 1 not passive (or certificate rejected),
// 2 input error, 3 solver non-convergence, 4 analytic-bound precondition failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cplp/bounds.hpp"
#include "cplp/classical.hpp"
#include "cplp/model_file.hpp"
#include "cplp/passivity.hpp"
#include "cplp/report_json.hpp"
#include "cplp/scan.hpp"
#include "cplp/sdp.hpp"

namespace {

using namespace cplp;

constexpr int kExitPassive = 0;
constexpr int kExitNotPassive = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitPrecondition = 4;

struct Common {
  double tol = 1e-8;
  bool tol_given = false;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << "cplp: " << message << '\n';
  emit(error_json(kind, message));
  return code;
}

SdpOptions sdp_options(const Common& c) {
  SdpOptions o;
  o.tol = c.tol;
  return o;
}

// --tol on `check` tightens or loosens the PSD threshold of the passivity test.
Tolerances check_tolerances(const Common& c) {
  Tolerances t;
  if (c.tol_given) t.psd_tol = c.tol;
  return t;
}

Json model_header(const ModelFile& mf) {
  Json j = {{"model", mf.description}};
  if (mf.state) {
    j["state_kind"] = to_string(mf.state->kind);
    if (mf.state->kind != StateSpec::Kind::eigenmixture) {
      j["beta"] = std::isfinite(mf.state->beta) ? Json(mf.state->beta) : Json("inf");
    }
  }
  return j;
}

int cmd_check(const std::string& path, const Common& c) {
  const Tolerances tol = check_tolerances(c);
  const ModelFile mf = parse_model(load_json_file(path), tol);
  const DensityMatrix rho = build_state(mf, tol);
  const PassivityReport rep = check_theorem1(build_c_operator(rho, mf.model.hamiltonian, tol), tol);
  Json out = model_header(mf);
  out["report"] = to_json(rep);
  out["tolerances"] = to_json(tol);
  out["gauge"] = "the passivity verdict is invariant under H -> H + c I; no energy shift applied";
  emit(out);
  return rep.is_passive ? kExitPassive : kExitNotPassive;
}

int cmd_extract(const std::string& path, const std::string& choi_out, const Common& c) {
  const Tolerances tol;
  const ModelFile mf = parse_model(load_json_file(path), tol);
  const DensityMatrix rho = build_state(mf, tol);
  const COperator cop = build_c_operator(rho, mf.model.hamiltonian, tol);
  const PassivityReport rep = check_theorem1(cop, tol);
  const SdpSolution sol = solve_extraction(cop, sdp_options(c));
  const CertificateReport cert = verify_certificate(sol, cop, c.tol, tol);
  Json out = model_header(mf);
  out["solver_tol"] = c.tol;
  out["sdp"] = to_json(sol, cop.state_energy);
  out["certificate"] = to_json(cert);
  out["passivity"] = to_json(rep);
  if (!choi_out.empty()) {
    std::ofstream f(choi_out);
    if (!f) return fail(kExitInput, "io", "cannot write " + choi_out);
    f << certificate_to_json(sol.choi, sol.dual_y.matrix()).dump(2) << '\n';
    out["choi_out"] = choi_out;
  }
  emit(out);
  if (!sol.converged) {
    std::cerr << "cplp: solver did not converge; reporting the last iterate\n";
    return kExitSolver;
  }
  return kExitPassive;
}

int cmd_verify(const std::string& path, const std::string& cert_path, const Common& c) {
  const Tolerances tol;
  const ModelFile mf = parse_model(load_json_file(path), tol);
  const DensityMatrix rho = build_state(mf, tol);
  const COperator cop = build_c_operator(rho, mf.model.hamiltonian, tol);
  const Certificate cert = certificate_from_json(load_json_file(cert_path));
  if (cert.choi.d_a() != cop.d_a) throw InputError("certificate: d_a does not match the model");
  const CertificateReport rep = verify_certificate(cert.choi, cert.dual_y, cop, c.tol, tol);
  Json out = model_header(mf);
  out["solver_tol"] = c.tol;
  out["certificate"] = to_json(rep);
  out["primal_value"] = (cop.matrix.matrix() * cert.choi.matrix()).trace().real();
  out["state_energy"] = cop.state_energy;
  emit(out);
  return rep.passed ? kExitPassive : kExitNotPassive;
}

std::filesystem::path sibling(const std::filesystem::path& out, const std::string& suffix, const std::string& ext) {
  std::filesystem::path p = out;
  p.replace_filename(out.stem().string() + suffix + ext);
  return p;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw InputError("cannot write " + p.string());
  f << text;
}

int cmd_scan(const std::string& path, const std::string& param, const std::string& grid, const std::string& out,
             const Common& c) {
  ScanRecipe recipe = parse_recipe(load_json_file(path));
  if (!param.empty() && param != "kappa") throw InputError("--param: only kappa is supported");
  if (!grid.empty()) recipe.grid = parse_grid(grid);
  if (recipe.grid.empty()) throw InputError("scan: no grid (use --grid lo:hi:n or scan.grid in the recipe)");
  if (out.empty()) throw InputError("scan: --out is required");
  const std::filesystem::path out_path(out);

  std::vector<ScanResult> results;
  Json meta;
  if (!recipe.chain_lengths.empty()) {
    const ChainConvergence cc =
        chain_convergence(recipe.family.chain.gamma, recipe.grid, recipe.chain_lengths, recipe.options, c.jobs);
    for (std::size_t i = 0; i < cc.curves.size(); ++i) {
      std::ostringstream csv;
      write_csv(csv, cc.curves[i]);
      write_file(sibling(out_path, "_n" + std::to_string(cc.n_list[i]), out_path.extension().string()), csv.str());
    }
    results = cc.curves;
    meta = to_json(cc);
  } else {
    ScanResult r = sweep_kappa(recipe.family, recipe.grid, recipe.options, c.jobs, recipe.with_bound);
    std::ostringstream csv;
    write_csv(csv, r);
    write_file(out_path, csv.str());
    meta = to_json(r);
    results.push_back(std::move(r));
  }
  meta["recipe"] = path;
  write_file(sibling(out_path, "", ".json"), meta.dump(2) + "\n");

  std::size_t total = 0;
  std::size_t failed = 0;
  for (const ScanResult& r : results)
    for (const ScanPoint& p : r.points) {
      ++total;
      for (const std::string& f : p.flags) failed += f.rfind("error", 0) == 0 ? 1 : 0;
    }
  Json summary = {{"points", total}, {"failed_points", failed}, {"csv", out}, {"metadata", sibling(out_path, "", ".json").string()}};
  emit(summary);
  return total > 0 && failed == total ? kExitInput : kExitPassive;
}

int cmd_bounds(const std::string& path, const Common& c) {
  const Tolerances tol;
  const ModelFile mf = parse_model(load_json_file(path), tol);
  const SpectralData sd = spectral_data(mf.model.hamiltonian, mf.model.space, tol);
  Json out = model_header(mf);
  out["gauge"] = kGaugeNote;
  out["spectral"] = to_json(sd);
  try {
    const double p_star = threshold_population(sd);
    const TemperatureBound tb = threshold_temperature_bound(sd);
    out["p_star_bound"] = p_star;
    out["t_bound"] = to_json(tb);
  } catch (const PreconditionError& e) {
    out["error"] = {{"kind", "precondition"}, {"message", e.what()}};
    std::cerr << "cplp: " << e.what() << '\n';
    emit(out);
    return kExitPrecondition;
  }
  if (mf.decomposition) {
    const LocalDecomposition& d = *mf.decomposition;
    out["frustration_inequality"] = to_json(frustration(mf.model.hamiltonian, d.h_a, d.h_b, d.v, mf.model.space, tol));
  } else {
    out["frustration_inequality"] = nullptr;
  }
  if (mf.state) {
    const ClusteringEstimate ce = clustering_estimate(build_state(mf, tol), c.seed);
    out["clustering_lower_bound"] = {{"value", ce.value}, {"restarts", ce.restarts}, {"seed", c.seed}};
  }
  emit(out);
  return kExitPassive;
}

int cmd_classical(const std::string& path) {
  const ClassicalInstance inst = parse_classical(load_json_file(path));
  const ClassicalResult r = solve_classical(inst);
  Json out = to_json(r, inst);
  out["support_condition"] = to_json(check_support_condition(inst));
  emit(out);
  return r.is_passive ? kExitPassive : kExitNotPassive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CP-local passivity analysis of bipartite quantum states"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("CPLP_TOL")) {
    try {
      std::size_t used = 0;
      common.tol = std::stod(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      common.tol_given = true;
    } catch (const std::exception&) {
      return fail(kExitInput, "input", std::string("CPLP_TOL is not a number: ") + env);
    }
  }
  std::string model;
  std::string choi_out;
  std::string certificate;
  std::string param;
  std::string grid;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "solver tolerance (check: PSD tolerance)")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { common.tol_given = true; });
    sub->add_option("--seed", common.seed, "seed for randomized estimates");
  };

  CLI::App* check = app.add_subcommand("check", "CP-local passivity verdict");
  check->add_option("model", model, "model JSON")->required();
  add_common(check);

  CLI::App* extract = app.add_subcommand("extract", "optimal local channel via the SDP");
  extract->add_option("model", model, "model JSON")->required();
  extract->add_option("--choi-out", choi_out, "write the optimal Choi matrix and dual Y");
  add_common(extract);

  CLI::App* verify = app.add_subcommand("verify", "re-check a saved primal/dual certificate");
  verify->add_option("model", model, "model JSON")->required();
  verify->add_option("--certificate", certificate, "certificate JSON from extract --choi-out")->required();
  add_common(verify);

  CLI::App* scan = app.add_subcommand("scan", "threshold temperature over a kappa grid");
  scan->add_option("recipe", model, "recipe JSON")->required();
  scan->add_option("--param", param, "swept parameter (kappa)");
  scan->add_option("--grid", grid, "lo:hi:n");
  scan->add_option("--out", out, "CSV output path; metadata goes next to it as .json")->required();
  scan->add_option("--jobs", common.jobs, "worker threads (default: available parallelism)");
  add_common(scan);

  CLI::App* bounds = app.add_subcommand("bounds", "analytic sufficient conditions");
  bounds->add_option("model", model, "model JSON")->required();
  add_common(bounds);

  CLI::App* classical = app.add_subcommand("classical", "classical (diagonal) instance");
  classical->add_option("instance", model, "instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return cmd_check(model, common);
    if (*extract) return cmd_extract(model, choi_out, common);
    if (*verify) return cmd_verify(model, certificate, common);
    if (*scan) return cmd_scan(model, param, grid, out, common);
    if (*bounds) return cmd_bounds(model, common);
    if (*classical) return cmd_classical(model);
  } catch (const InputError& e) {
    return fail(kExitInput, "input", e.what());
  } catch (const InvalidStateError& e) {
    return fail(kExitInput, "input", e.what());
  } catch (const DimensionError& e) {
    return fail(kExitInput, "input", e.what());
  } catch (const NotHermitianError& e) {
    return fail(kExitInput, "input", e.what());
  } catch (const PreconditionError& e) {
    return fail(kExitPrecondition, "precondition", e.what());
  } catch (const ConvergenceError& e) {
    return fail(kExitSolver, "convergence", e.what());
  } catch (const Error& e) {
    return fail(kExitInput, "input", e.what());
  }
  return kExitInput;
}
