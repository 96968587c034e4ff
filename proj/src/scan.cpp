#include "cplp/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace cplp {

ThermalModel::ThermalModel(HermitianOperator h, BipartiteSpace space,
                           std::optional<HermitianOperator> rotation_generator, const Tolerances& tol)
    : h_(std::move(h)), space_(space), tol_(tol), eig_(eig_hermitian(h_)) {
  if (h_.dim() != space_.dim()) throw DimensionError("ThermalModel: H does not match the space");
  if (rotation_generator) {
    if (rotation_generator->dim() != space_.dim()) throw DimensionError("ThermalModel: rotation dimension");
    unitary_ = unitary_from_generator(*rotation_generator);
  }
}

DensityMatrix ThermalModel::state_at_beta(double beta) const {
  DensityMatrix rho = gibbs(eig_, space_, beta, tol_);
  if (!unitary_) return rho;
  const Matrix& u = *unitary_;
  return DensityMatrix(space_, HermitianOperator(herm(u * rho.matrix() * u.adjoint()), 1e-9), tol_);
}

PassivityReport ThermalModel::verdict_at_temperature(double t) const {
  if (!(t > 0.0)) throw Error("verdict_at_temperature: T must be positive");
  return check_theorem1(build_c_operator(state_at_beta(1.0 / t), h_, tol_), tol_);
}

ThermalModel ModelFamily::build(double kappa, const Tolerances& tol) const {
  if (kind == Kind::chain) {
    SpinChainSpec spec = chain;
    spec.kappa = kappa;
    Model m = build_chain(spec);
    return ThermalModel(std::move(m.hamiltonian), m.space, rotation_generator, tol);
  }
  TwoQubitSpec spec = two_qubit;
  spec.kappa = kappa;
  Model m = build_two_qubit(spec);
  return ThermalModel(std::move(m.hamiltonian), m.space, rotation_generator, tol);
}

std::string ModelFamily::describe() const {
  std::string s;
  if (kind == Kind::chain) {
    s = "chain n_sites=" + std::to_string(chain.n_sites) + " gamma=" + format_double(chain.gamma) +
        " field=" + format_double(chain.field) + " a_sites=" + std::to_string(chain.a_region.size());
  } else {
    s = "two_qubit form=" + to_string(two_qubit.form) + " omega=" + format_double(two_qubit.omega) +
        " gamma=" + format_double(two_qubit.gamma);
  }
  if (rotation_generator) s += " rotated";
  return s;
}

std::string to_string(ThresholdFlag flag) {
  switch (flag) {
    case ThresholdFlag::found:
      return "found";
    case ThresholdFlag::at_least_t_hi:
      return "ge_t_hi";
    case ThresholdFlag::none:
      return "no_threshold";
  }
  return "unknown";
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw Error("linspace: need at least one point");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  if (n > 1) out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > 0.0)) throw Error("logspace: bounds must be positive");
  std::vector<double> out = linspace(std::log(lo), std::log(hi), n);
  for (double& x : out) x = std::exp(x);
  out.front() = lo;
  if (n > 1) out.back() = hi;
  return out;
}

ThresholdResult threshold_temperature(const ThermalModel& model, const ThresholdOptions& options) {
  if (!(options.t_lo > 0.0 && options.t_hi > options.t_lo)) throw Error("threshold_temperature: invalid window");
  if (options.grid_points < 2 || options.bisection_steps < 0) throw Error("threshold_temperature: invalid grid");
  auto passive = [&](double t) { return model.verdict_at_temperature(t).is_passive; };
  auto refine = [&](double lo, double hi) {
    // lo and hi carry different verdicts; keeps that property while shrinking.
    const bool at_lo = passive(lo);
    double a = std::log(lo);
    double b = std::log(hi);
    for (int it = 0; it < options.bisection_steps; ++it) {
      const double mid = 0.5 * (a + b);
      (passive(std::exp(mid)) == at_lo ? a : b) = mid;
    }
    return std::pair{std::exp(a), std::exp(b)};
  };

  const std::vector<double> grid = logspace(options.t_lo, options.t_hi, options.grid_points);
  std::vector<bool> verdicts;
  for (double t : grid) verdicts.push_back(passive(t));

  ThresholdResult r;
  int first_drop = -1;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (verdicts[i] == verdicts[i - 1]) continue;
    const auto [lo, hi] = refine(grid[i - 1], grid[i]);
    r.transitions.push_back(std::sqrt(lo * hi));
    if (first_drop < 0 && verdicts[i - 1] && verdicts[0]) {
      first_drop = static_cast<int>(i);
      r.bracket_lo = lo;
      r.bracket_hi = hi;
    }
  }
  r.monotonicity_verified = r.transitions.size() <= 1;
  if (!verdicts[0]) {
    r.flag = ThresholdFlag::none;
    r.t_star = std::numeric_limits<double>::quiet_NaN();
  } else if (first_drop < 0) {
    r.flag = ThresholdFlag::at_least_t_hi;
    r.t_star = options.t_hi;
    r.bracket_lo = options.t_hi;
    r.bracket_hi = options.t_hi;
  } else {
    r.flag = ThresholdFlag::found;
    r.t_star = std::sqrt(r.bracket_lo * r.bracket_hi);
  }
  return r;
}

namespace {

ScanPoint scan_point(const ModelFamily& family, double kappa, const ThresholdOptions& options, bool with_bound) {
  ScanPoint p;
  p.parameter = kappa;
  p.t_bound = std::numeric_limits<double>::quiet_NaN();
  try {
    const ThermalModel model = family.build(kappa, options.tol);
    const ThresholdResult t = threshold_temperature(model, options);
    p.t_star = t.t_star;
    p.monotonicity_verified = t.monotonicity_verified;
    p.transitions = t.transitions;
    if (t.flag != ThresholdFlag::found) p.flags.push_back(to_string(t.flag));
    if (!t.monotonicity_verified) p.flags.push_back("non_monotone");
    if (with_bound) {
      try {
        const SpectralData sd = spectral_data(model.hamiltonian(), model.space(), options.tol);
        const TemperatureBound b = threshold_temperature_bound(sd);
        p.t_bound = b.temperature;
        if (b.flag != BoundFlag::crossing) p.flags.push_back("bound_" + to_string(b.flag));
        if (!b.single_crossing) p.flags.push_back("bound_multiple_crossings");
      } catch (const PreconditionError&) {
        p.flags.push_back("bound_unavailable");
      }
    }
  } catch (const Error& e) {
    p.t_star = std::numeric_limits<double>::quiet_NaN();
    p.flags.push_back(std::string("error: ") + e.what());
  }
  return p;
}

}  // namespace

ScanResult sweep_kappa(const ModelFamily& family, const std::vector<double>& kappa_grid,
                       const ThresholdOptions& options, unsigned jobs, bool with_bound) {
  ScanResult result;
  result.model = family.describe();
  result.options = options;
  result.with_bound = with_bound;
  result.points.resize(kappa_grid.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(kappa_grid.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < kappa_grid.size(); i = next++) {
      result.points[i] = scan_point(family, kappa_grid[i], options, with_bound);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return result;
}

ChainConvergence chain_convergence(double gamma, const std::vector<double>& kappa_grid,
                                   const std::vector<int>& n_list, const ThresholdOptions& options,
                                   unsigned jobs) {
  ChainConvergence out;
  out.n_list = n_list;
  for (int n : n_list) {
    if (n < 2 || n > 10) throw Error("chain_convergence: chain lengths must lie in [2, 10]");
    ModelFamily family;
    family.kind = ModelFamily::Kind::chain;
    family.chain.n_sites = n;
    family.chain.gamma = gamma;
    family.chain.field = 1.0;
    family.chain.a_region = {1};
    out.curves.push_back(sweep_kappa(family, kappa_grid, options, jobs));
  }
  for (std::size_t c = 1; c < out.curves.size(); ++c) {
    double worst = 0.0;
    for (std::size_t k = 0; k < kappa_grid.size(); ++k) {
      const double a = out.curves[c].points[k].t_star;
      const double b = out.curves[c - 1].points[k].t_star;
      if (std::isfinite(a) && std::isfinite(b)) worst = std::max(worst, std::abs(a - b));
    }
    out.max_consecutive_diff.push_back(worst);
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const ScanResult& result) {
  out << "parameter,t_star,t_bound,flags\n";
  for (const ScanPoint& p : result.points) {
    std::string flags;
    for (const std::string& f : p.flags) {
      if (!flags.empty()) flags += ';';
      flags += f;
    }
    // Flags may carry error text; keep the CSV well-formed.
    std::replace(flags.begin(), flags.end(), ',', ' ');
    std::replace(flags.begin(), flags.end(), '\n', ' ');
    out << format_double(p.parameter) << ',' << format_double(p.t_star) << ',' << format_double(p.t_bound) << ','
        << flags << '\n';
  }
}

}  // namespace cplp
