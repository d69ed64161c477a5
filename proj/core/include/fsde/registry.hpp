#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fsde/coefficients.hpp"

namespace fsde::sde {

struct FamilyInfo {
    std::string name;
    std::string summary;
    nlohmann::json defaults;
};

/// Named, parameterized coefficient families with declared constants.
///
///   linear        b = drift x, sW = sw diag(x), sH = a diag(x); d = r = m
///   affine        b = b0 + b1 x, sW = w0 + w1 x, sH = h0 + h1 x
///   sin, cos      b = -kappa x, sW = sw, sH = scale sin(x) or scale cos(x)
///   time_hoelder  b = -kappa x, sW = sw, sH = (1 + c t^beta) sin(x) on [0, horizon]
///   drift_only    b = c0 + c1 cos(omega t)
///   gbm           b = mu x, sW = sigma x
///   young_exp     sH = scale x
///   mixed_exp     sW = sigma x, sH = x
class CoefficientRegistry {
  public:
    /// Throws LookupError for unknown names; unknown parameter keys are a ParameterError.
    [[nodiscard]] CoefficientSet make(std::string_view name, const nlohmann::json& params = {}) const;
    /// Accepts `name` or `name(key=value, ...)`.
    [[nodiscard]] CoefficientSet parse(std::string_view spec) const;
    /// Rebuilds from CoefficientSet::to_json output.
    [[nodiscard]] CoefficientSet from_json(const nlohmann::json& j) const;

    [[nodiscard]] std::vector<FamilyInfo> families() const;
    [[nodiscard]] bool contains(std::string_view name) const;
};

const CoefficientRegistry& coefficient_registry();

}  // namespace fsde::sde
