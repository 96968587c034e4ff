#include "cplp/passivity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cplp {

COperator build_c_operator(const DensityMatrix& rho, const HermitianOperator& h,
                           const Tolerances& tol) {
  const BipartiteSpace& space = rho.space();
  if (h.dim() != space.dim()) throw DimensionError("build_c_operator: H and rho dimensions differ");
  const Index da = space.d_a;
  const Index db = space.d_b;
  const Matrix& r = rho.matrix();
  const Matrix& hm = h.matrix();

  // C[(a a'),(b b')] = sum_{j,k} rho^{T_A}[(a j),(b k)] H[(a' k),(b' j)]
  //                  = sum_{j,k} rho[(b j),(a k)] H[(a' k),(b' j)]
  Matrix c = Matrix::Zero(da * da, da * da);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < da; ++b)
      for (Index ap = 0; ap < da; ++ap)
        for (Index bp = 0; bp < da; ++bp) {
          Complex s = 0.0;
          for (Index j = 0; j < db; ++j)
            for (Index k = 0; k < db; ++k) s += r(space.flat(b, j), space.flat(a, k)) * hm(space.flat(ap, k), space.flat(bp, j));
          c(a * da + ap, b * da + bp) = s;
        }

  // Y[a, b] = sum_c C[(c c),(b a)]
  Matrix y = Matrix::Zero(da, da);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < da; ++b)
      for (Index k = 0; k < da; ++k) y(a, b) += c(k * da + k, b * da + a);

  const double energy = (hm * r).trace().real();
  const double via_c = (identity_choi(da) * c).trace().real();
  const double scale = std::max(1.0, max_abs_entry(hm));
  if (std::abs(energy - via_c) > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "build_c_operator: energy identity violated (" << energy << " vs " << via_c << ")";
    throw Error(msg.str());
  }
  return {da, HermitianOperator(c, std::max(tol.herm_tol, 1e-9)), y, energy};
}

PassivityReport check_theorem1(const COperator& c, const Tolerances& tol) {
  PassivityReport rep;
  rep.d_a = c.d_a;
  rep.state_energy = c.state_energy;
  const Matrix& y = c.y_candidate;
  rep.herm_residual = max_abs_entry(y - y.adjoint());
  rep.herm_threshold = tol.herm_tol * std::max(1.0, max_abs_entry(c.matrix.matrix()));
  rep.psd_threshold = -tol.psd_tol * std::max(1.0, op_norm(c.matrix));

  const Matrix m = c.matrix.matrix() - lift_to_aa(herm(y));
  rep.lambda_min = lambda_min(m);
  rep.epsilon = std::max(0.0, -rep.lambda_min);
  rep.extraction_lower_bound = -rep.epsilon * static_cast<double>(c.d_a);

  const bool hermitian = rep.herm_residual <= rep.herm_threshold;
  rep.borderline = !hermitian && rep.herm_residual <= 100.0 * rep.herm_threshold;
  rep.is_passive = hermitian && rep.lambda_min >= rep.psd_threshold;
  return rep;
}

double extraction_bound(const COperator& c, const Tolerances& tol) {
  return check_theorem1(c, tol).extraction_lower_bound;
}

PassivityReport analyze(const DensityMatrix& rho, const HermitianOperator& h, bool run_sdp,
                        const SdpOptions& sdp_options, const Tolerances& tol) {
  const COperator c = build_c_operator(rho, h, tol);
  PassivityReport rep = check_theorem1(c, tol);
  if (run_sdp) rep.sdp = solve_extraction(c, sdp_options);
  return rep;
}

}  // namespace cplp
