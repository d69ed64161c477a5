#pragma once

#include <string_view>

#include <json.hpp>

#include "fsde/noise.hpp"

namespace fsde::sde {

enum class OracleKind { drift_only, ito_gbm, young_exponential, mixed_exponential };

OracleKind oracle_kind_from_string(std::string_view name);
std::string_view to_string(OracleKind kind);

struct OracleParams {
    double x0 = 1.0;
    double sigma = 0.5;  ///< W volatility (ito_gbm, mixed_exponential)
    double mu = 0.0;     ///< drift rate (ito_gbm)
    double scale = 1.0;  ///< fBm coefficient (young_exponential)
    double c0 = 1.0;     ///< drift_only: b(t) = c0 + c1 cos(omega t)
    double c1 = 0.0;
    double omega = 0.0;
};

/// Exact solutions on the nodes of the noise grid:
///   drift_only         x0 + c0 t + c1 sin(omega t) / omega
///   ito_gbm            x0 exp((mu - sigma^2/2) t + sigma W_t)
///   young_exponential  x0 exp(scale B^H_t)
///   mixed_exponential  x0 exp(sigma W_t - sigma^2 t/2 + B^H_t)
SamplePath closed_form_oracle(OracleKind kind, const OracleParams& params, const noise::NoiseBundle& noise);

/// Matching registry family and oracle parameters, for families that have one.
/// Throws LookupError otherwise.
OracleParams oracle_params_for(OracleKind kind, const nlohmann::json& family_params, double x0);
std::string_view family_for(OracleKind kind);

}  // namespace fsde::sde
