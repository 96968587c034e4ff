#include "cplp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace cplp {

namespace {

struct SchmidtExtremes {
  double q_min = 0.0;
  double q_max = 0.0;
};

// Extreme eigenvalues of the reduced state on A. When d_a > d_b that state
// has at least d_a - d_b zero eigenvalues.
SchmidtExtremes schmidt_extremes(const Vector& v, const BipartiteSpace& space) {
  const std::vector<double> q = schmidt_spectrum(v, space);
  return {space.d_a > space.d_b ? 0.0 : q.back(), q.front()};
}

Matrix sign_of(const Matrix& hermitian) {
  const EigenSystem e = eig_hermitian(herm(hermitian));
  RealVector s(e.values.size());
  for (Index i = 0; i < s.size(); ++i) s(i) = e.values(i) < 0.0 ? -1.0 : 1.0;
  return spectral_sum(e, s);
}

double local_gap(const HermitianOperator& h) {
  if (h.dim() < 2) return 0.0;
  const RealVector e = eig_hermitian(h).values;
  return e(1) - e(0);
}

double ground_energy(const HermitianOperator& h) { return eig_hermitian(h).values(0); }

}  // namespace

SpectralData spectral_data(const HermitianOperator& h, const BipartiteSpace& space,
                           const Tolerances& tol) {
  if (h.dim() != space.dim()) throw DimensionError("spectral_data: H does not match the space");
  const EigenSystem eig = eig_hermitian(h);
  SpectralData sd;
  sd.d_a = space.d_a;
  sd.d_b = space.d_b;
  sd.energy_offset = eig.values(0);
  sd.schmidt_rank_impossible = space.d_a > space.d_b;
  for (Index i = 0; i < eig.values.size(); ++i) {
    sd.energies.push_back(eig.values(i) - sd.energy_offset);
    const SchmidtExtremes q = schmidt_extremes(eig.vectors.col(i), space);
    sd.schmidt_mins.push_back(q.q_min);
    sd.schmidt_maxs.push_back(q.q_max);
  }
  const double scale = std::max(1.0, op_norm(h));
  sd.ground_degenerate = sd.energies.size() > 1 && sd.energies[1] < tol.deg_tol * scale;
  // Full rank: smallest Schmidt coefficient (not squared) above eig_tol relative.
  sd.ground_full_rank = !sd.schmidt_rank_impossible &&
                        sd.schmidt_mins[0] > tol.eig_tol * tol.eig_tol * sd.schmidt_maxs[0];
  return sd;
}

void require_bound_preconditions(const SpectralData& sd) {
  if (sd.energies.size() < 2) throw PreconditionError("spectrum has a single level");
  if (sd.ground_degenerate) throw PreconditionError("ground state is degenerate");
  if (sd.schmidt_rank_impossible) throw PreconditionError("d_A > d_B: ground state cannot have full Schmidt rank");
  if (!sd.ground_full_rank) throw PreconditionError("ground state does not have full Schmidt rank");
}

double max_excited_weight(const SpectralData& sd) {
  double m = 0.0;
  for (std::size_t i = 1; i < sd.energies.size(); ++i)
    m = std::max(m, sd.energies[i] * sd.schmidt_maxs[i] * sd.schmidt_maxs[i]);
  return m;
}

double threshold_population(const SpectralData& sd) {
  require_bound_preconditions(sd);
  const double q0 = sd.schmidt_mins[0];
  return 1.0 / (1.0 + sd.energies[1] * q0 * q0 / max_excited_weight(sd));
}

double ground_population(const SpectralData& sd, double beta) {
  double z = 0.0;
  for (double e : sd.energies) z += std::exp(-beta * e);
  return 1.0 / z;
}

double mean_energy(const SpectralData& sd, double beta) {
  double z = 0.0;
  double u = 0.0;
  for (double e : sd.energies) {
    const double w = std::exp(-beta * e);
    z += w;
    u += w * e;
  }
  return u / z;
}

std::string to_string(BoundFlag flag) {
  switch (flag) {
    case BoundFlag::crossing:
      return "crossing";
    case BoundFlag::below_window:
      return "below_window";
    case BoundFlag::no_crossing:
      return "no_crossing";
  }
  return "unknown";
}

TemperatureBound threshold_temperature_bound(const SpectralData& sd, double beta_lo, double beta_hi) {
  require_bound_preconditions(sd);
  if (!(beta_lo > 0.0 && beta_hi > beta_lo)) throw Error("threshold_temperature_bound: invalid window");
  const double q0 = sd.schmidt_mins[0];
  const double e1 = sd.energies[1];
  auto f = [&](double beta) { return mean_energy(sd, beta) - e1 * ground_population(sd, beta) * q0 * q0; };

  constexpr int kSamples = 200;
  const double log_lo = std::log(beta_lo);
  const double step = (std::log(beta_hi) - log_lo) / (kSamples - 1);
  std::vector<double> values(kSamples);
  for (int i = 0; i < kSamples; ++i) values[static_cast<std::size_t>(i)] = f(std::exp(log_lo + step * i));

  TemperatureBound out;
  int changes = 0;
  int last_positive = -1;
  for (int i = 0; i < kSamples; ++i) {
    if (values[static_cast<std::size_t>(i)] > 0.0) last_positive = i;
    if (i > 0 && (values[static_cast<std::size_t>(i)] > 0.0) != (values[static_cast<std::size_t>(i - 1)] > 0.0)) ++changes;
  }
  out.single_crossing = changes <= 1;
  if (last_positive < 0) {
    out.beta = beta_lo;
    out.flag = BoundFlag::below_window;
  } else if (last_positive == kSamples - 1) {
    out.beta = beta_hi;
    out.flag = BoundFlag::no_crossing;
  } else {
    double lo = log_lo + step * last_positive;
    double hi = lo + step;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(std::exp(mid)) > 0.0 ? lo : hi) = mid;
    }
    out.beta = std::exp(hi);
    out.flag = BoundFlag::crossing;
  }
  out.temperature = 1.0 / out.beta;
  return out;
}

FrustrationReport frustration(const HermitianOperator& h_total, const HermitianOperator& h_a,
                              const HermitianOperator& h_b, const HermitianOperator& v,
                              const BipartiteSpace& space, const Tolerances& tol) {
  if (h_total.dim() != space.dim() || v.dim() != space.dim() || h_a.dim() != space.d_a ||
      h_b.dim() != space.d_b) {
    throw DimensionError("frustration: operator dimensions do not match the space");
  }
  const Matrix sum = kron(h_a.matrix(), Matrix::Identity(space.d_b, space.d_b)) +
                     kron(Matrix::Identity(space.d_a, space.d_a), h_b.matrix()) + v.matrix();
  const double scale = std::max(1.0, max_abs_entry(h_total.matrix()));
  if (max_abs_entry(h_total.matrix() - sum) > 1e-9 * scale) {
    throw DimensionError("frustration: H != H_A + H_B + V");
  }
  FrustrationReport r;
  const EigenSystem eig = eig_hermitian(h_total);
  r.e_f = eig.values(0) - ground_energy(h_a) - ground_energy(h_b) - ground_energy(v);
  if (r.e_f < -1e-9 * scale) {
    std::ostringstream msg;
    msg << "frustration: negative frustration energy " << r.e_f;
    throw Error(msg.str());
  }
  r.e_f = std::max(r.e_f, 0.0);
  r.max_local_gap = std::max(local_gap(h_a), local_gap(h_b));
  r.lhs = r.max_local_gap > tol.deg_tol ? r.e_f / r.max_local_gap : std::numeric_limits<double>::infinity();
  const SchmidtExtremes q = schmidt_extremes(eig.vectors.col(0), space);
  r.middle = 1.0 - q.q_max;
  r.lower_bound_q = static_cast<double>(space.d_a - 1) * q.q_min;
  r.inequality_holds = r.lhs >= r.middle - 1e-9 && r.middle >= r.lower_bound_q - 1e-9;
  return r;
}

ClusteringEstimate clustering_estimate(const DensityMatrix& rho, std::uint64_t seed, int restarts) {
  const BipartiteSpace& space = rho.space();
  if (space.dim() > 1024) throw DimensionError("clustering_estimate: dimension above 1024");
  if (restarts < 1) throw Error("clustering_estimate: need at least one restart");
  const Matrix& r = rho.matrix();
  const Matrix ra = partial_trace(r, space, Subsystem::B);
  const Matrix rb = partial_trace(r, space, Subsystem::A);
  const Matrix delta = r - kron(ra, rb);
  const Matrix id_a = Matrix::Identity(space.d_a, space.d_a);
  const Matrix id_b = Matrix::Identity(space.d_b, space.d_b);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ClusteringEstimate best;
  best.restarts = restarts;
  for (int start = 0; start < restarts; ++start) {
    Matrix g(space.d_b, space.d_b);
    for (Index i = 0; i < g.size(); ++i) g.data()[i] = Complex(normal(rng), normal(rng));
    Matrix n_op = sign_of(herm(g));
    double value = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const Matrix ga = herm(partial_trace(Matrix(kron(id_a, n_op) * delta), space, Subsystem::B));
      const Matrix m_op = sign_of(ga);
      const Matrix gb = herm(partial_trace(Matrix(kron(m_op, id_b) * delta), space, Subsystem::A));
      n_op = sign_of(gb);
      const double next = (n_op * gb).trace().real();
      ++best.iterations;
      const bool done = std::abs(next - value) <= 1e-8 * std::max(std::abs(next), 1e-300);
      value = next;
      if (done) break;
    }
    best.value = std::max(best.value, value);
  }
  return best;
}

Theorem3Result theorem3_check(const Theorem3Inputs& in) {
  if (!in.epsilon_fn || !in.boundary_size_fn) throw Error("theorem3_check: missing callable");
  if (!(in.l > 0.0) || !(in.k > 0.0) || in.c1 < 0.0 || !(in.c2 > 0.0) || in.h_a_norm < 0.0 || in.d_a < 1) {
    throw Error("theorem3_check: invalid constants");
  }
  double previous = std::numeric_limits<double>::infinity();
  for (double x : {0.25 * in.l, 0.5 * in.l, in.l, 2.0 * in.l}) {
    const double e = in.epsilon_fn(x);
    if (!(e >= 0.0) || e > previous) throw Error("theorem3_check: epsilon(l) must be nonnegative and nonincreasing");
    previous = e;
  }
  const SpectralData& sd = in.spectral_ab1;
  require_bound_preconditions(sd);

  Theorem3Result r;
  const double da = static_cast<double>(in.d_a);
  r.lambda_l = in.k * da * da * in.h_a_norm * in.boundary_size_fn(in.l) *
               (in.epsilon_fn(0.5 * in.l) + in.c1 * std::exp(-in.c2 * in.l));
  const double q0 = sd.schmidt_mins[0];
  const double lead = sd.energies[1] * q0 * q0;
  const double m = max_excited_weight(sd);
  r.condition_holds = lead > r.lambda_l;
  r.p0_bound = (1.0 + r.lambda_l / m) * (1.0 / (1.0 + lead / m));
  if (!r.condition_holds) {
    r.p0_bound = 1.0;
    r.beta_star_hint = std::numeric_limits<double>::quiet_NaN();
    return r;
  }

  constexpr double kBetaLo = 1e-3;
  constexpr double kBetaHi = 1e3;
  if (ground_population(sd, kBetaLo) >= r.p0_bound) {
    r.beta_star_hint = kBetaLo;
    r.beta_hint_at_edge = true;
    return r;
  }
  if (ground_population(sd, kBetaHi) < r.p0_bound) {
    r.beta_star_hint = kBetaHi;
    r.beta_hint_at_edge = true;
    return r;
  }
  double lo = std::log(kBetaLo);
  double hi = std::log(kBetaHi);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ground_population(sd, std::exp(mid)) < r.p0_bound ? lo : hi) = mid;
  }
  r.beta_star_hint = std::exp(hi);
  return r;
}

}  // namespace cplp
