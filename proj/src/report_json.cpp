#include "cplp/report_json.hpp"

#include <cmath>

namespace cplp {

namespace {

// NaN and infinities have no JSON literal; they become null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json real_matrix_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Json index_list(const std::vector<Index>& v) {
  Json out = Json::array();
  for (Index i : v) out.push_back(i);
  return out;
}

Json number_list(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

}  // namespace

Json to_json(const Tolerances& tol) {
  return {{"herm_tol", tol.herm_tol}, {"psd_tol", tol.psd_tol}, {"eig_tol", tol.eig_tol}, {"deg_tol", tol.deg_tol}};
}

Json to_json(const PassivityReport& rep) {
  Json j = {{"is_passive", rep.is_passive},
            {"borderline", rep.borderline},
            {"lambda_min", num(rep.lambda_min)},
            {"herm_residual", num(rep.herm_residual)},
            {"herm_threshold", num(rep.herm_threshold)},
            {"psd_threshold", num(rep.psd_threshold)},
            {"epsilon", num(rep.epsilon)},
            {"extraction_lower_bound", num(rep.extraction_lower_bound)},
            {"state_energy", num(rep.state_energy)},
            {"d_a", rep.d_a}};
  if (rep.sdp) j["sdp"] = to_json(*rep.sdp, rep.state_energy);
  return j;
}

Json to_json(const SdpSolution& sol, double state_energy) {
  return {{"primal_value", num(sol.primal_value)},
          {"dual_value", num(sol.dual_value)},
          {"delta_e", num(sol.primal_value - state_energy)},
          {"state_energy", num(state_energy)},
          {"gap", num(sol.gap)},
          {"slackness_residual", num(sol.slackness_residual)},
          {"iterations", sol.iterations},
          {"converged", sol.converged}};
}

Json to_json(const CertificateReport& rep) {
  return {{"passed", rep.passed},
          {"primal_feasible", rep.primal_feasible},
          {"dual_feasible", rep.dual_feasible},
          {"gap_ok", rep.gap_ok},
          {"slackness_ok", rep.slackness_ok},
          {"trace_residual", num(rep.trace_residual)},
          {"primal_min_eig", num(rep.primal_min_eig)},
          {"dual_min_eig", num(rep.dual_min_eig)},
          {"gap", num(rep.gap)},
          {"slackness", num(rep.slackness)}};
}

Json to_json(const SpectralData& sd) {
  return {{"d_a", sd.d_a},
          {"d_b", sd.d_b},
          {"energies", number_list(sd.energies)},
          {"schmidt_mins", number_list(sd.schmidt_mins)},
          {"schmidt_maxs", number_list(sd.schmidt_maxs)},
          {"energy_offset", num(sd.energy_offset)},
          {"ground_degenerate", sd.ground_degenerate},
          {"ground_full_rank", sd.ground_full_rank},
          {"schmidt_rank_impossible", sd.schmidt_rank_impossible}};
}

Json to_json(const TemperatureBound& b) {
  return {{"beta", num(b.beta)},
          {"temperature", num(b.temperature)},
          {"flag", to_string(b.flag)},
          {"single_crossing", b.single_crossing}};
}

Json to_json(const FrustrationReport& f) {
  return {{"e_f", num(f.e_f)},
          {"lhs", num(f.lhs)},
          {"one_minus_q0_max", num(f.middle)},
          {"lower_bound_q", num(f.lower_bound_q)},
          {"max_local_gap", num(f.max_local_gap)},
          {"inequality_holds", f.inequality_holds}};
}

Json to_json(const ClassicalResult& r, const ClassicalInstance& inst) {
  return {{"e_tilde", real_matrix_json(r.e_tilde)},
          {"optimal_targets", index_list(r.optimal_targets)},
          {"delta_e", num(r.delta_e)},
          {"is_passive", r.is_passive},
          {"canonical", inst.canonical()},
          {"row_order", index_list(inst.row_order())},
          {"col_order", index_list(inst.col_order())}};
}

Json to_json(const SupportCheck& s) {
  Json w = Json::array();
  for (const auto& [k, j] : s.witnesses) w.push_back({k, j});
  return {{"holds", s.holds}, {"skipped", s.skipped}, {"witnesses", w}};
}

Json to_json(const ScanResult& r) {
  Json points = Json::array();
  for (const ScanPoint& p : r.points) {
    points.push_back({{"parameter", num(p.parameter)},
                      {"t_star", num(p.t_star)},
                      {"t_bound", num(p.t_bound)},
                      {"monotonicity_verified", p.monotonicity_verified},
                      {"transitions", number_list(p.transitions)},
                      {"flags", p.flags}});
  }
  Json j = {{"parameter", r.parameter_name},
            {"model", r.model},
            {"t_window", {r.options.t_lo, r.options.t_hi}},
            {"grid_points", r.options.grid_points},
            {"bisection_steps", r.options.bisection_steps},
            {"tolerances", to_json(r.options.tol)},
            {"with_bound", r.with_bound},
            {"points", points}};
  if (r.with_bound) j["gauge"] = kGaugeNote;
  return j;
}

Json to_json(const ChainConvergence& c) {
  Json curves = Json::array();
  for (std::size_t i = 0; i < c.curves.size(); ++i) {
    Json curve = to_json(c.curves[i]);
    curve["n_sites"] = c.n_list[i];
    curves.push_back(curve);
  }
  return {{"n_list", c.n_list}, {"max_consecutive_diff", number_list(c.max_consecutive_diff)}, {"curves", curves}};
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace cplp
