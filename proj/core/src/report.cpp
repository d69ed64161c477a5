#include "fsde/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fsde/csv.hpp"
#include "fsde/errors.hpp"

namespace fsde {

LinearFit fit_line(std::span<const double> x, std::span<const double> y, std::span<const double> weights)
{
    if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs two or more paired points");
    if (!weights.empty() && weights.size() != x.size()) throw DomainError("one weight per point");
    auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
    double sw = 0.0;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(w(i) >= 0.0)) throw DomainError("weights must be nonnegative");
        sw += w(i);
        mx += w(i) * x[i];
        my += w(i) * y[i];
    }
    if (sw == 0.0) throw DomainError("weights sum to zero");
    mx /= sw;
    my /= sw;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w(i) * (x[i] - mx) * (x[i] - mx);
        sxy += w(i) * (x[i] - mx) * (y[i] - my);
        syy += w(i) * (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("line fit needs distinct abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

nlohmann::json json_number(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

EstimateReport EstimateReport::make(std::string name, double lhs, double rhs, double cap, nlohmann::json meta)
{
    EstimateReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.meta = std::move(meta);
    if (lhs == 0.0) {
        r.implied_constant = 0.0;
    } else if (rhs == 0.0) {
        r.implied_constant = std::numeric_limits<double>::infinity();
    } else {
        r.implied_constant = lhs / rhs;
    }
    r.recheck(cap);
    return r;
}

void EstimateReport::recheck(double new_cap)
{
    cap = new_cap;
    passed = lhs == 0.0 || (std::isfinite(lhs) && lhs <= cap * rhs);
}

nlohmann::json EstimateReport::to_json() const
{
    return {{"name", name},
            {"lhs", json_number(lhs)},
            {"rhs", json_number(rhs)},
            {"implied_constant", json_number(implied_constant)},
            {"cap", json_number(cap)},
            {"passed", passed},
            {"inconclusive", inconclusive},
            {"std_error", json_number(std_error)},
            {"meta", meta}};
}

ConvergenceStudy ConvergenceStudy::fit(std::string name, std::vector<double> meshes, std::vector<double> errors)
{
    if (meshes.size() != errors.size()) throw DomainError("meshes and errors differ in length");
    if (meshes.size() < 2) throw DomainError("a convergence study needs two or more meshes");
    for (std::size_t i = 1; i < meshes.size(); ++i) {
        if (!(meshes[i] < meshes[i - 1])) throw DomainError("meshes must be strictly decreasing");
    }
    for (double e : errors) {
        if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("errors must be finite and nonnegative");
    }

    ConvergenceStudy s;
    s.name = std::move(name);
    s.meshes = std::move(meshes);
    s.errors = std::move(errors);
    if (std::all_of(s.errors.begin(), s.errors.end(), [](double e) { return e == 0.0; })) {
        s.exact = true;
        s.fitted_order = std::numeric_limits<double>::infinity();
        s.r2 = 1.0;
        return s;
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < s.meshes.size(); ++i) {
        if (s.errors[i] == 0.0) continue;
        lx.push_back(std::log(s.meshes[i]));
        ly.push_back(std::log(s.errors[i]));
    }
    if (lx.size() < 2) {
        s.low_confidence = true;
        return s;
    }
    const LinearFit f = fit_line(lx, ly);
    s.fitted_order = f.slope;
    s.intercept = f.intercept;
    s.r2 = f.r2;
    s.low_confidence = f.r2 < 0.8;
    s.failed = s.fitted_order <= 0.0 && f.r2 > 0.8;
    return s;
}

nlohmann::json ConvergenceStudy::to_json() const
{
    nlohmann::json e = nlohmann::json::array();
    for (double v : errors) e.push_back(json_number(v));
    return {{"name", name},
            {"meshes", meshes},
            {"errors", e},
            {"fitted_order", json_number(fitted_order)},
            {"r2", json_number(r2)},
            {"exact", exact},
            {"low_confidence", low_confidence},
            {"failed", failed},
            {"meta", meta}};
}

std::string ConvergenceStudy::to_csv() const
{
    std::ostringstream out;
    out << "mesh,error\n";
    for (std::size_t i = 0; i < meshes.size(); ++i) {
        out << format_double(meshes[i]) << ',' << format_double(errors[i]) << '\n';
    }
    return out.str();
}

}  // namespace fsde
