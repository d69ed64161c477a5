#include "fsde/oracle.hpp"

#include <cmath>
#include <string>

#include "fsde/errors.hpp"

namespace fsde::sde {

OracleKind oracle_kind_from_string(std::string_view name)
{
    if (name == "drift_only") return OracleKind::drift_only;
    if (name == "ito_gbm") return OracleKind::ito_gbm;
    if (name == "young_exponential") return OracleKind::young_exponential;
    if (name == "mixed_exponential") return OracleKind::mixed_exponential;
    throw LookupError("unknown oracle kind: " + std::string(name));
}

std::string_view to_string(OracleKind kind)
{
    switch (kind) {
    case OracleKind::drift_only: return "drift_only";
    case OracleKind::ito_gbm: return "ito_gbm";
    case OracleKind::young_exponential: return "young_exponential";
    case OracleKind::mixed_exponential: return "mixed_exponential";
    }
    return "unknown";
}

std::string_view family_for(OracleKind kind)
{
    switch (kind) {
    case OracleKind::drift_only: return "drift_only";
    case OracleKind::ito_gbm: return "gbm";
    case OracleKind::young_exponential: return "young_exp";
    case OracleKind::mixed_exponential: return "mixed_exp";
    }
    throw LookupError("no family for oracle");
}

OracleParams oracle_params_for(OracleKind kind, const nlohmann::json& p, double x0)
{
    OracleParams o;
    o.x0 = x0;
    switch (kind) {
    case OracleKind::drift_only:
        o.c0 = p.value("c0", 1.0);
        o.c1 = p.value("c1", 0.0);
        o.omega = p.value("omega", 0.0);
        break;
    case OracleKind::ito_gbm:
        o.mu = p.value("mu", 0.0);
        o.sigma = p.value("sigma", 0.5);
        break;
    case OracleKind::young_exponential: o.scale = p.value("scale", 1.0); break;
    case OracleKind::mixed_exponential: o.sigma = p.value("sigma", 0.5); break;
    }
    return o;
}

SamplePath closed_form_oracle(OracleKind kind, const OracleParams& p, const noise::NoiseBundle& noise)
{
    const TimeGrid& grid = noise.grid();
    Matrix out(static_cast<Eigen::Index>(grid.size()), 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        double v = 0.0;
        switch (kind) {
        case OracleKind::drift_only: {
            const double wave = p.omega == 0.0 ? t : std::sin(p.omega * t) / p.omega;
            v = p.x0 + p.c0 * t + p.c1 * wave;
            break;
        }
        case OracleKind::ito_gbm:
            v = p.x0 * std::exp((p.mu - 0.5 * p.sigma * p.sigma) * t + p.sigma * noise.bm(i, 0));
            break;
        case OracleKind::young_exponential: v = p.x0 * std::exp(p.scale * noise.fbm(i, 0)); break;
        case OracleKind::mixed_exponential:
            v = p.x0 * std::exp(p.sigma * noise.bm(i, 0) - 0.5 * p.sigma * p.sigma * t + noise.fbm(i, 0));
            break;
        }
        out(static_cast<Eigen::Index>(i), 0) = v;
    }
    return {grid, std::move(out)};
}

}  // namespace fsde::sde
