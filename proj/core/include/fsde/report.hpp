#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace fsde {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least squares y = intercept + slope x; needs two distinct x values.
/// Optional nonnegative weights; r2 is the weighted coefficient of determination.
LinearFit fit_line(std::span<const double> x, std::span<const double> y, std::span<const double> weights = {});

/// Measured sides of one inequality lhs <= C rhs and the constant it implies.
struct EstimateReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double implied_constant = 0.0;  ///< lhs / rhs; 0 when both vanish
    double cap = 1.0;
    bool passed = false;
    bool inconclusive = false;  ///< Monte Carlo standard error above 10% of lhs
    double std_error = 0.0;
    nlohmann::json meta = nlohmann::json::object();

    /// passed <=> lhs <= cap * rhs. A vanishing lhs always passes.
    static EstimateReport make(std::string name, double lhs, double rhs, double cap,
                               nlohmann::json meta = nlohmann::json::object());
    /// Re-evaluates `passed` against a new cap.
    void recheck(double new_cap);

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Error against mesh on a log-log scale.
struct ConvergenceStudy {
    std::string name;
    std::vector<double> meshes;
    std::vector<double> errors;
    double fitted_order = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool exact = false;           ///< every error is zero
    bool low_confidence = false;  ///< r2 < 0.8
    bool failed = false;
    nlohmann::json meta = nlohmann::json::object();

    /// Fits log(error) = intercept + order * log(mesh). Meshes must be
    /// strictly decreasing and errors nonnegative.
    static ConvergenceStudy fit(std::string name, std::vector<double> meshes, std::vector<double> errors);

    [[nodiscard]] nlohmann::json to_json() const;
    /// `mesh,error` rows for plotting.
    [[nodiscard]] std::string to_csv() const;
};

/// Doubles that JSON cannot carry (inf, nan) become strings.
nlohmann::json json_number(double value);

}  // namespace fsde
