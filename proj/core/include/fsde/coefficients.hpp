#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "fsde/path.hpp"

namespace fsde::sde {

using DenseMatrix = Eigen::MatrixXd;

/// Constants the coefficients are declared to satisfy:
///   |b(t,x)-b(t,y)| <= L1 |x-y|            |b(t,x)| <= L2 (1+|x|)
///   |sW(t,x)-sW(t,y)| <= L3 |x-y|          |sW(t,x)| <= L4 (1+|x|)
///   |d_i sH(t,x)| <= L5                    |d_i sH(t,x) - d_i sH(t,y)| <= L6 |x-y|^delta
///   |sH(t,x)-sH(s,x)| + |d_i sH(t,x)-d_i sH(s,x)| <= L7 |t-s|^beta
///   |sH(t,x)| <= growth (1+|x|)
/// Matrix norms are Frobenius norms.
struct DeclaredConstants {
    double L1 = 0.0;
    double L2 = 0.0;
    double L3 = 0.0;
    double L4 = 0.0;
    double L5 = 0.0;
    double L6 = 0.0;
    double L7 = 0.0;
    double beta = 1.0;
    double delta = 1.0;
    double growth = 0.0;

    [[nodiscard]] nlohmann::json to_json() const;
    static DeclaredConstants from_json(const nlohmann::json& j);
};

/// The triple (b, sigma_W, sigma_H) of dimensions (d, r, m).
struct CoefficientSet {
    using Drift = std::function<Vector(double, const Vector&)>;
    using Diffusion = std::function<DenseMatrix(double, const Vector&)>;
    /// Entry i is the d x m matrix d sigma_H / d x_i.
    using Jacobian = std::function<std::vector<DenseMatrix>(double, const Vector&)>;

    std::string family;
    nlohmann::json params = nlohmann::json::object();
    std::size_t d = 1;
    std::size_t r = 1;
    std::size_t m = 1;
    Drift b;
    Diffusion sigma_w;
    Diffusion sigma_h;
    Jacobian dsigma_h;  ///< may be empty; central differences are used then
    DeclaredConstants constants;

    /// Throws ParameterError when maps are missing or constants out of range.
    void validate() const;
    /// d sigma_H / d x_i, analytic if provided.
    [[nodiscard]] std::vector<DenseMatrix> jacobian(double t, const Vector& x) const;
    /// {family, params}; enough to rebuild the set through the registry.
    [[nodiscard]] nlohmann::json to_json() const;
};

/// One inequality of the assumptions, checked over random probes.
struct AssumptionCheck {
    std::string name;
    bool passed = true;
    double worst_ratio = 0.0;  ///< max of lhs / rhs over the probes
    nlohmann::json witness = nlohmann::json::object();
};

struct AssumptionReport {
    std::vector<AssumptionCheck> checks;
    std::size_t probes = 0;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] const AssumptionCheck& check(const std::string& name) const;
    [[nodiscard]] nlohmann::json to_json() const;
};

struct ProbeBox {
    double horizon = 1.0;
    /// Probe states have log-uniform magnitudes in [1e-3, max_magnitude].
    double max_magnitude = 1e6;
};

/// Samples (t, s, x, y) probes and checks every declared inequality.
/// Failures are report entries with the worst witness, not exceptions.
AssumptionReport validate_assumptions(const CoefficientSet& coeffs, std::size_t probe_budget, std::uint64_t seed,
                                      ProbeBox box = {});

}  // namespace fsde::sde
