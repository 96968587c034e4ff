#pragma once

#include "cplp/bounds.hpp"
#include "cplp/classical.hpp"
#include "cplp/model_file.hpp"
#include "cplp/passivity.hpp"
#include "cplp/scan.hpp"
#include "cplp/sdp.hpp"

namespace cplp {

/// Stated in every report that uses the analytic bounds.
inline constexpr const char* kGaugeNote =
    "energies shifted so that E_0 = 0 before evaluating the population and temperature bounds";

Json to_json(const Tolerances& tol);
Json to_json(const PassivityReport& rep);
/// Includes delta_e = primal_value - state_energy.
Json to_json(const SdpSolution& sol, double state_energy);
Json to_json(const CertificateReport& rep);
Json to_json(const SpectralData& sd);
Json to_json(const TemperatureBound& b);
Json to_json(const FrustrationReport& f);
Json to_json(const ClassicalResult& r, const ClassicalInstance& inst);
Json to_json(const SupportCheck& s);
Json to_json(const ScanResult& r);
Json to_json(const ChainConvergence& c);

/// {"error": {"kind": kind, "message": message}}.
Json error_json(const std::string& kind, const std::string& message);

}  // namespace cplp
