#include "fsde/registry.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "fsde/errors.hpp"

namespace fsde::sde {

namespace {

using Params = nlohmann::json;

DenseMatrix scalar(double v)
{
    return DenseMatrix::Constant(1, 1, v);
}

Vector scalar_vec(double v)
{
    return Vector::Constant(1, v);
}

std::vector<DenseMatrix> scalar_jac(double v)
{
    return {scalar(v)};
}

CoefficientSet linear(const Params& p)
{
    const double dd = p.at("d").get<double>();
    if (dd < 1 || dd != std::floor(dd)) throw ParameterError("linear: d must be a positive integer");
    const auto d = static_cast<std::size_t>(dd);
    const double a = p.at("a").get<double>();
    const double drift = p.at("drift").get<double>();
    const double sw = p.at("sw").get<double>();
    CoefficientSet c;
    c.d = c.r = c.m = d;
    c.b = [drift](double, const Vector& x) -> Vector { return drift * x; };
    c.sigma_w = [sw](double, const Vector& x) -> DenseMatrix { return (sw * x).asDiagonal(); };
    c.sigma_h = [a](double, const Vector& x) -> DenseMatrix { return (a * x).asDiagonal(); };
    c.dsigma_h = [a, d](double, const Vector&) {
        std::vector<DenseMatrix> out(d, DenseMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
        for (std::size_t i = 0; i < d; ++i) out[i](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = a;
        return out;
    };
    c.constants.L1 = c.constants.L2 = std::abs(drift);
    c.constants.L3 = c.constants.L4 = std::abs(sw);
    c.constants.L5 = c.constants.growth = std::abs(a);
    return c;
}

CoefficientSet affine(const Params& p)
{
    const double b0 = p.at("b0").get<double>();
    const double b1 = p.at("b1").get<double>();
    const double w0 = p.at("w0").get<double>();
    const double w1 = p.at("w1").get<double>();
    const double h0 = p.at("h0").get<double>();
    const double h1 = p.at("h1").get<double>();
    CoefficientSet c;
    c.b = [=](double, const Vector& x) { return scalar_vec(b0 + b1 * x(0)); };
    c.sigma_w = [=](double, const Vector& x) { return scalar(w0 + w1 * x(0)); };
    c.sigma_h = [=](double, const Vector& x) { return scalar(h0 + h1 * x(0)); };
    c.dsigma_h = [=](double, const Vector&) { return scalar_jac(h1); };
    c.constants.L1 = std::abs(b1);
    c.constants.L2 = std::max(std::abs(b0), std::abs(b1));
    c.constants.L3 = std::abs(w1);
    c.constants.L4 = std::max(std::abs(w0), std::abs(w1));
    c.constants.L5 = std::abs(h1);
    c.constants.growth = std::max(std::abs(h0), std::abs(h1));
    return c;
}

CoefficientSet trig(const Params& p, bool use_sin)
{
    const double kappa = p.at("kappa").get<double>();
    const double sw = p.at("sw").get<double>();
    const double scale = p.at("scale").get<double>();
    CoefficientSet c;
    c.b = [kappa](double, const Vector& x) { return scalar_vec(-kappa * x(0)); };
    c.sigma_w = [sw](double, const Vector&) { return scalar(sw); };
    if (use_sin) {
        c.sigma_h = [scale](double, const Vector& x) { return scalar(scale * std::sin(x(0))); };
        c.dsigma_h = [scale](double, const Vector& x) { return scalar_jac(scale * std::cos(x(0))); };
    } else {
        c.sigma_h = [scale](double, const Vector& x) { return scalar(scale * std::cos(x(0))); };
        c.dsigma_h = [scale](double, const Vector& x) { return scalar_jac(-scale * std::sin(x(0))); };
    }
    c.constants.L1 = c.constants.L2 = std::abs(kappa);
    c.constants.L4 = std::abs(sw);
    c.constants.L5 = c.constants.L6 = c.constants.growth = std::abs(scale);
    return c;
}

CoefficientSet time_hoelder(const Params& p)
{
    const double kappa = p.at("kappa").get<double>();
    const double sw = p.at("sw").get<double>();
    const double cc = p.at("c").get<double>();
    const double beta = p.at("beta").get<double>();
    const double horizon = p.at("horizon").get<double>();
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("time_hoelder: beta must lie in (0,1]");
    if (!(horizon > 0.0)) throw ParameterError("time_hoelder: horizon must be positive");
    auto a = [cc, beta](double t) { return 1.0 + cc * std::pow(std::max(t, 0.0), beta); };
    CoefficientSet c;
    c.b = [kappa](double, const Vector& x) { return scalar_vec(-kappa * x(0)); };
    c.sigma_w = [sw](double, const Vector&) { return scalar(sw); };
    c.sigma_h = [a](double t, const Vector& x) { return scalar(a(t) * std::sin(x(0))); };
    c.dsigma_h = [a](double t, const Vector& x) { return scalar_jac(a(t) * std::cos(x(0))); };
    const double amax = std::max(1.0, a(horizon));
    c.constants.L1 = c.constants.L2 = std::abs(kappa);
    c.constants.L4 = std::abs(sw);
    c.constants.L5 = c.constants.L6 = c.constants.growth = amax;
    // |sin x| + |cos x| <= sqrt(2) and |t^beta - s^beta| <= |t-s|^beta.
    c.constants.L7 = std::numbers::sqrt2 * std::abs(cc);
    c.constants.beta = beta;
    return c;
}

CoefficientSet drift_only(const Params& p)
{
    const double c0 = p.at("c0").get<double>();
    const double c1 = p.at("c1").get<double>();
    const double omega = p.at("omega").get<double>();
    CoefficientSet c;
    c.b = [=](double t, const Vector&) { return scalar_vec(c0 + c1 * std::cos(omega * t)); };
    c.sigma_w = [](double, const Vector&) { return scalar(0.0); };
    c.sigma_h = [](double, const Vector&) { return scalar(0.0); };
    c.dsigma_h = [](double, const Vector&) { return scalar_jac(0.0); };
    c.constants.L2 = std::abs(c0) + std::abs(c1);
    return c;
}

CoefficientSet gbm(const Params& p)
{
    const double mu = p.at("mu").get<double>();
    const double sigma = p.at("sigma").get<double>();
    CoefficientSet c;
    c.b = [mu](double, const Vector& x) { return scalar_vec(mu * x(0)); };
    c.sigma_w = [sigma](double, const Vector& x) { return scalar(sigma * x(0)); };
    c.sigma_h = [](double, const Vector&) { return scalar(0.0); };
    c.dsigma_h = [](double, const Vector&) { return scalar_jac(0.0); };
    c.constants.L1 = c.constants.L2 = std::abs(mu);
    c.constants.L3 = c.constants.L4 = std::abs(sigma);
    return c;
}

CoefficientSet young_exp(const Params& p)
{
    const double scale = p.at("scale").get<double>();
    CoefficientSet c;
    c.b = [](double, const Vector&) { return scalar_vec(0.0); };
    c.sigma_w = [](double, const Vector&) { return scalar(0.0); };
    c.sigma_h = [scale](double, const Vector& x) { return scalar(scale * x(0)); };
    c.dsigma_h = [scale](double, const Vector&) { return scalar_jac(scale); };
    c.constants.L5 = c.constants.growth = std::abs(scale);
    return c;
}

CoefficientSet mixed_exp(const Params& p)
{
    const double sigma = p.at("sigma").get<double>();
    CoefficientSet c;
    c.b = [](double, const Vector&) { return scalar_vec(0.0); };
    c.sigma_w = [sigma](double, const Vector& x) { return scalar(sigma * x(0)); };
    c.sigma_h = [](double, const Vector& x) { return scalar(x(0)); };
    c.dsigma_h = [](double, const Vector&) { return scalar_jac(1.0); };
    c.constants.L3 = c.constants.L4 = std::abs(sigma);
    c.constants.L5 = c.constants.growth = 1.0;
    return c;
}

struct Family {
    std::string summary;
    Params defaults;
    std::function<CoefficientSet(const Params&)> build;
};

const std::map<std::string, Family, std::less<>>& families_table()
{
    static const std::map<std::string, Family, std::less<>> table{
        {"linear",
         {"b = drift x, sigma_W = sw diag(x), sigma_H = a diag(x)",
          {{"d", 1}, {"a", 1.0}, {"drift", 0.0}, {"sw", 0.0}},
          linear}},
        {"affine",
         {"b = b0 + b1 x, sigma_W = w0 + w1 x, sigma_H = h0 + h1 x",
          {{"b0", 0.0}, {"b1", 0.0}, {"w0", 0.0}, {"w1", 0.0}, {"h0", 0.0}, {"h1", 1.0}},
          affine}},
        {"sin",
         {"b = -kappa x, sigma_W = sw, sigma_H = scale sin(x)",
          {{"kappa", 0.0}, {"sw", 0.0}, {"scale", 1.0}},
          [](const Params& p) { return trig(p, true); }}},
        {"cos",
         {"b = -kappa x, sigma_W = sw, sigma_H = scale cos(x)",
          {{"kappa", 0.0}, {"sw", 0.0}, {"scale", 1.0}},
          [](const Params& p) { return trig(p, false); }}},
        {"time_hoelder",
         {"b = -kappa x, sigma_W = sw, sigma_H = (1 + c t^beta) sin(x)",
          {{"kappa", 0.0}, {"sw", 0.0}, {"c", 0.5}, {"beta", 0.6}, {"horizon", 1.0}},
          time_hoelder}},
        {"drift_only",
         {"b = c0 + c1 cos(omega t), no noise",
          {{"c0", 1.0}, {"c1", 0.0}, {"omega", 0.0}},
          drift_only}},
        {"gbm", {"b = mu x, sigma_W = sigma x", {{"mu", 0.0}, {"sigma", 0.5}}, gbm}},
        {"young_exp", {"sigma_H = scale x", {{"scale", 1.0}}, young_exp}},
        {"mixed_exp", {"sigma_W = sigma x, sigma_H = x", {{"sigma", 0.5}}, mixed_exp}},
    };
    return table;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

CoefficientSet CoefficientRegistry::make(std::string_view name, const nlohmann::json& params) const
{
    const auto& table = families_table();
    const auto it = table.find(name);
    if (it == table.end()) throw LookupError("unknown coefficient family: " + std::string(name));
    Params merged = it->second.defaults;
    if (!params.is_null()) {
        if (!params.is_object()) throw ParameterError("coefficient parameters must be a mapping");
        for (const auto& [key, value] : params.items()) {
            if (!merged.contains(key)) {
                throw ParameterError("family " + std::string(name) + " has no parameter '" + key + "'");
            }
            if (!value.is_number()) throw ParameterError("parameter '" + key + "' must be a number");
            merged[key] = value;
        }
    }
    CoefficientSet c = it->second.build(merged);
    c.family = std::string(name);
    c.params = merged;
    c.validate();
    return c;
}

CoefficientSet CoefficientRegistry::parse(std::string_view spec) const
{
    const auto open = spec.find('(');
    if (open == std::string_view::npos) return make(trim(spec));
    if (spec.back() != ')') throw ParameterError("malformed coefficient spec: " + std::string(spec));
    const std::string name = trim(spec.substr(0, open));
    std::string_view body = spec.substr(open + 1, spec.size() - open - 2);
    nlohmann::json params = nlohmann::json::object();
    while (!trim(body).empty()) {
        const auto comma = body.find(',');
        const std::string_view item = body.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParameterError("expected key=value in: " + std::string(item));
        const std::string key = trim(item.substr(0, eq));
        const std::string value = trim(item.substr(eq + 1));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size() || value.empty()) throw ParameterError("not a number: '" + value + "'");
        params[key] = v;
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
    }
    return make(name, params);
}

CoefficientSet CoefficientRegistry::from_json(const nlohmann::json& j) const
{
    if (!j.contains("family")) throw ParameterError("coefficient description lacks 'family'");
    return make(j.at("family").get<std::string>(), j.value("params", nlohmann::json::object()));
}

std::vector<FamilyInfo> CoefficientRegistry::families() const
{
    std::vector<FamilyInfo> out;
    for (const auto& [name, f] : families_table()) out.push_back({name, f.summary, f.defaults});
    return out;
}

bool CoefficientRegistry::contains(std::string_view name) const
{
    return families_table().contains(name);
}

const CoefficientRegistry& coefficient_registry()
{
    static const CoefficientRegistry registry;
    return registry;
}

}  // namespace fsde::sde
