#include "fsde/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "fsde/errors.hpp"
#include "fsde/report.hpp"
#include "fsde/rng.hpp"

namespace fsde::sde {

nlohmann::json DeclaredConstants::to_json() const
{
    return {{"L1", L1}, {"L2", L2}, {"L3", L3}, {"L4", L4}, {"L5", L5}, {"L6", L6},
            {"L7", L7}, {"beta", beta}, {"delta", delta}, {"growth", growth}};
}

DeclaredConstants DeclaredConstants::from_json(const nlohmann::json& j)
{
    DeclaredConstants c;
    c.L1 = j.value("L1", 0.0);
    c.L2 = j.value("L2", 0.0);
    c.L3 = j.value("L3", 0.0);
    c.L4 = j.value("L4", 0.0);
    c.L5 = j.value("L5", 0.0);
    c.L6 = j.value("L6", 0.0);
    c.L7 = j.value("L7", 0.0);
    c.beta = j.value("beta", 1.0);
    c.delta = j.value("delta", 1.0);
    c.growth = j.value("growth", 0.0);
    return c;
}

void CoefficientSet::validate() const
{
    if (d == 0 || r == 0 || m == 0) throw ParameterError("dimensions d, r, m must be positive");
    if (!b || !sigma_w || !sigma_h) throw ParameterError("coefficient maps b, sigma_W, sigma_H are required");
    const DeclaredConstants& c = constants;
    if (!(c.beta > 0.0 && c.beta <= 1.0)) throw ParameterError("beta must lie in (0,1]");
    if (!(c.delta > 0.0 && c.delta <= 1.0)) throw ParameterError("delta must lie in (0,1]");
    for (double L : {c.L1, c.L2, c.L3, c.L4, c.L5, c.L6, c.L7, c.growth}) {
        if (!(L >= 0.0)) throw ParameterError("declared constants must be nonnegative");
    }
}

std::vector<DenseMatrix> CoefficientSet::jacobian(double t, const Vector& x) const
{
    if (dsigma_h) return dsigma_h(t, x);
    std::vector<DenseMatrix> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x(static_cast<Eigen::Index>(i))));
        Vector xp = x;
        Vector xm = x;
        xp(static_cast<Eigen::Index>(i)) += h;
        xm(static_cast<Eigen::Index>(i)) -= h;
        out.push_back((sigma_h(t, xp) - sigma_h(t, xm)) / (2.0 * h));
    }
    return out;
}

nlohmann::json CoefficientSet::to_json() const
{
    return {{"family", family}, {"params", params}};
}

bool AssumptionReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const AssumptionCheck& c) { return c.passed; });
}

const AssumptionCheck& AssumptionReport::check(const std::string& name) const
{
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw LookupError("no assumption check named " + name);
}

nlohmann::json AssumptionReport::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"worst_ratio", json_number(c.worst_ratio)},
                       {"witness", c.witness}});
    }
    return {{"passed", passed()}, {"probes", probes}, {"checks", arr}};
}

namespace {

nlohmann::json vec_json(const Vector& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
    return a;
}

class Tracker {
  public:
    explicit Tracker(std::string name) { check_.name = std::move(name); }

    // lhs <= rhs up to rounding, with rhs the declared bound.
    void observe(double lhs, double rhs, const std::function<nlohmann::json()>& witness)
    {
        const double slack = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        const bool ok = std::isfinite(lhs) && lhs <= rhs + slack;
        double ratio = 0.0;
        if (lhs > 0.0) ratio = rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
        if (!std::isfinite(lhs)) ratio = std::numeric_limits<double>::infinity();
        if (!ok && check_.passed) {
            check_.passed = false;
            check_.witness = witness();
        }
        if (ratio > check_.worst_ratio) {
            check_.worst_ratio = ratio;
            if (check_.passed) check_.witness = witness();
        }
    }

    AssumptionCheck take() { return std::move(check_); }

  private:
    AssumptionCheck check_;
};

}  // namespace

AssumptionReport validate_assumptions(const CoefficientSet& coeffs, std::size_t probe_budget, std::uint64_t seed,
                                      ProbeBox box)
{
    if (probe_budget < 100) throw ParameterError("probe budget must be at least 100");
    coeffs.validate();
    const DeclaredConstants& c = coeffs.constants;
    const auto d = static_cast<Eigen::Index>(coeffs.d);

    RandomStream rng(seed, StreamId{StreamKind::probe, 0, 0});
    const double log_hi = std::log10(box.max_magnitude);
    auto magnitude = [&] {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        return sign * std::pow(10.0, -3.0 + (log_hi + 3.0) * rng.uniform());
    };
    auto state = [&] {
        Vector x(d);
        for (Eigen::Index i = 0; i < d; ++i) x(i) = magnitude();
        return x;
    };

    Tracker b_lip("Hb.lipschitz");
    Tracker b_growth("Hb.growth");
    Tracker w_lip("HsigmaW.lipschitz");
    Tracker w_growth("HsigmaW.growth");
    Tracker h_deriv("HsigmaH.derivative_bound");
    Tracker h_deriv_hoelder("HsigmaH.derivative_hoelder");
    Tracker h_time("HsigmaH.time_hoelder");
    Tracker h_growth("HsigmaH.growth");

    for (std::size_t k = 0; k < probe_budget; ++k) {
        const double t = box.horizon * rng.uniform();
        const double s = box.horizon * rng.uniform();
        const Vector x = state();
        Vector y = state();
        if (k % 2 == 1) {
            // Nearby pairs expose local behaviour that far pairs average out.
            for (Eigen::Index i = 0; i < d; ++i) y(i) = x(i) + 1e-3 * magnitude();
        }
        const double dxy = (x - y).norm();
        const double nx = x.norm();
        auto witness = [&] { return nlohmann::json{{"t", t}, {"s", s}, {"x", vec_json(x)}, {"y", vec_json(y)}}; };

        const Vector bx = coeffs.b(t, x);
        b_lip.observe((bx - coeffs.b(t, y)).norm(), c.L1 * dxy, witness);
        b_growth.observe(bx.norm(), c.L2 * (1.0 + nx), witness);

        const DenseMatrix wx = coeffs.sigma_w(t, x);
        w_lip.observe((wx - coeffs.sigma_w(t, y)).norm(), c.L3 * dxy, witness);
        w_growth.observe(wx.norm(), c.L4 * (1.0 + nx), witness);

        const DenseMatrix htx = coeffs.sigma_h(t, x);
        h_growth.observe(htx.norm(), c.growth * (1.0 + nx), witness);
        const auto jx = coeffs.jacobian(t, x);
        const auto jy = coeffs.jacobian(t, y);
        const auto jsx = coeffs.jacobian(s, x);
        const double hs_diff = (htx - coeffs.sigma_h(s, x)).norm();
        for (std::size_t i = 0; i < coeffs.d; ++i) {
            h_deriv.observe(jx[i].norm(), c.L5, witness);
            h_deriv_hoelder.observe((jx[i] - jy[i]).norm(), c.L6 * std::pow(dxy, c.delta), witness);
            h_time.observe(hs_diff + (jx[i] - jsx[i]).norm(), c.L7 * std::pow(std::abs(t - s), c.beta), witness);
        }
    }

    AssumptionReport report;
    report.probes = probe_budget;
    for (Tracker* tr : {&b_lip, &b_growth, &w_lip, &w_growth, &h_deriv, &h_deriv_hoelder, &h_time, &h_growth}) {
        report.checks.push_back(tr->take());
    }
    return report;
}

}  // namespace fsde::sde
