#include "fsde/audits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include <tbb/parallel_for.h>

#include "fsde/detail/kernel.hpp"
#include "fsde/errors.hpp"
#include "fsde/fraccalc.hpp"
#include "fsde/fracnorms.hpp"
#include "fsde/noise.hpp"
#include "fsde/registry.hpp"
#include "fsde/rng.hpp"

namespace fsde::verify {

namespace {

using Caps = std::map<std::string, double>;

double cap_for(const Caps& caps, const std::string& name)
{
    const auto it = caps.find(name);
    return it == caps.end() ? kNoCap : it->second;
}

std::vector<std::size_t> checkpoint_nodes(const TimeGrid& grid)
{
    std::vector<std::size_t> out;
    for (double frac : kCheckpoints) {
        const std::size_t k = grid.cell_index(frac * grid.horizon());
        if (k > 0 && (out.empty() || out.back() != k)) out.push_back(k);
    }
    return out;
}

// Picks the checkpoint with the largest implied constant.
EstimateReport worst_checkpoint(const std::string& name, const TimeGrid& grid, const std::vector<std::size_t>& nodes,
                                const std::vector<double>& lhs, const std::vector<double>& rhs, double cap,
                                nlohmann::json meta, const std::vector<double>* std_errors = nullptr)
{
    std::size_t best = 0;
    double best_ratio = -1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        double ratio = 0.0;
        if (lhs[j] > 0.0) ratio = rhs[j] > 0.0 ? lhs[j] / rhs[j] : std::numeric_limits<double>::infinity();
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = j;
        }
    }
    meta["t"] = grid[nodes[best]];
    EstimateReport r = EstimateReport::make(name, lhs[best], rhs[best], cap, std::move(meta));
    if (std_errors) {
        r.std_error = (*std_errors)[best];
        r.inconclusive = r.lhs > 0.0 && r.std_error > 0.1 * r.lhs;
    }
    return r;
}

Vector row(const SamplePath& p, std::size_t i)
{
    return p.at(i);
}

void check_dim(const SamplePath& f, const sde::CoefficientSet& c)
{
    if (f.dim() != c.d) throw ParameterError("corpus path dimension differs from d");
}

std::vector<double> left_integrals(const detail::PowerKernel& kernel, const std::vector<std::size_t>& nodes,
                                   const std::vector<double>& values)
{
    std::vector<double> out;
    for (std::size_t k : nodes) out.push_back(kernel.integrate_left(k, [&](std::size_t i) { return values[i]; }));
    return out;
}

}  // namespace

std::vector<NamedPath> make_path_corpus(const TimeGrid& grid, HurstParameter hurst, std::size_t fbm_paths,
                                        std::uint64_t seed)
{
    const double T = grid.horizon();
    std::vector<NamedPath> out;
    out.push_back({"zero", SamplePath::from_function(grid, [](double) { return 0.0; })});
    out.push_back({"one", SamplePath::from_function(grid, [](double) { return 1.0; })});
    out.push_back({"t", SamplePath::from_function(grid, [](double t) { return t; })});
    out.push_back({"t2", SamplePath::from_function(grid, [](double t) { return t * t; })});
    out.push_back({"sqrt_t", SamplePath::from_function(grid, [](double t) { return std::sqrt(t); })});
    out.push_back({"sin", SamplePath::from_function(grid, [T](double t) {
                       return std::sin(2.0 * std::numbers::pi * t / T);
                   })});
    out.push_back({"zigzag", SamplePath::from_function(grid, [T](double t) {
                       const double u = 4.0 * t / T;
                       return 0.5 * std::abs(u - 2.0 * std::floor(u / 2.0 + 0.5));
                   })});
    for (std::size_t i = 0; i < fbm_paths; ++i) {
        out.push_back({"fbm" + std::to_string(i), noise::generate_fbm(grid, hurst, 1, derive_seed(seed, 100 + i))});
    }
    return out;
}

SamplePath random_smooth_path(const TimeGrid& grid, std::uint64_t seed, std::uint64_t index)
{
    RandomStream rng(seed, {StreamKind::corpus, index, 0});
    std::array<double, 9> c{};
    for (double& v : c) v = rng.normal();
    const double w = 2.0 * std::numbers::pi / grid.horizon();
    return SamplePath::from_function(grid, [&](double t) {
        double acc = c[0];
        for (std::size_t k = 1; k <= 4; ++k) {
            const double kk = static_cast<double>(k);
            acc += (c[2 * k - 1] * std::cos(w * kk * t) + c[2 * k] * std::sin(w * kk * t)) / kk;
        }
        return acc;
    });
}

std::vector<EstimateReport> audit_gfa1(const TimeGrid& grid, HurstParameter hurst, FracOrder alpha,
                                       std::size_t trials, std::uint64_t seed, double cap)
{
    const noise::NoiseGenerator gen(grid, hurst, 1, 1);
    std::vector<EstimateReport> out(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        const SamplePath f = random_smooth_path(grid, seed, i);
        const SamplePath g = gen.fbm(seed, i);
        out[i] = fraccalc::bound_check_gfa1(f, g, alpha, grid.horizon(), cap);
        out[i].meta["trial"] = i;
        out[i].meta["seed"] = seed;
    }
    return out;
}

std::vector<std::pair<NamedPath, NamedPath>> make_pairs(const std::vector<NamedPath>& corpus, bool with_identical)
{
    std::vector<std::pair<NamedPath, NamedPath>> out;
    for (std::size_t i = 0; i + 1 < corpus.size(); ++i) out.emplace_back(corpus[i], corpus[i + 1]);
    if (with_identical) {
        for (const auto& f : corpus) out.emplace_back(f, f);
    }
    return out;
}

SamplePath drift_integral_path(const sde::CoefficientSet& coeffs, const SamplePath& f)
{
    check_dim(f, coeffs);
    const TimeGrid& grid = f.grid();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(coeffs.d));
    Vector prev = coeffs.b(grid[0], row(f, 0));
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(coeffs.d));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const Vector cur = coeffs.b(grid[i], row(f, i));
        acc += 0.5 * (prev + cur) * grid.step(i - 1);
        out.row(static_cast<Eigen::Index>(i)) = acc.transpose();
        prev = cur;
    }
    return {grid, std::move(out)};
}

namespace {

template <typename Coefficient>
SamplePath left_point_integral(const Coefficient& sigma, std::size_t d, const SamplePath& f, const SamplePath& driver)
{
    if (!(f.grid() == driver.grid())) throw DomainError("integrand and driver must share a grid");
    const TimeGrid& grid = f.grid();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(d));
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const Vector dz = row(driver, i + 1) - row(driver, i);
        acc += sigma(grid[i], row(f, i)) * dz;
        out.row(static_cast<Eigen::Index>(i + 1)) = acc.transpose();
    }
    return {grid, std::move(out)};
}

}  // namespace

SamplePath fbm_integral_path(const sde::CoefficientSet& coeffs, const SamplePath& f, const SamplePath& bh)
{
    check_dim(f, coeffs);
    if (bh.dim() != coeffs.m) throw ParameterError("fBm dimension differs from m");
    return left_point_integral(coeffs.sigma_h, coeffs.d, f, bh);
}

SamplePath ito_integral_path(const sde::CoefficientSet& coeffs, const SamplePath& f, const SamplePath& w)
{
    check_dim(f, coeffs);
    if (w.dim() != coeffs.r) throw ParameterError("BM dimension differs from r");
    return left_point_integral(coeffs.sigma_w, coeffs.d, f, w);
}

std::vector<EstimateReport> audit_drift_estimates(const std::vector<NamedPath>& corpus,
                                                  const std::vector<std::pair<NamedPath, NamedPath>>& pairs,
                                                  const sde::CoefficientSet& coeffs, AlphaParameter alpha,
                                                  const Caps& caps)
{
    std::vector<EstimateReport> out;
    if (corpus.empty() && pairs.empty()) return out;
    const TimeGrid& grid = corpus.empty() ? pairs.front().first.path.grid() : corpus.front().path.grid();
    const auto nodes = checkpoint_nodes(grid);
    const detail::PowerKernel weight(grid, alpha.value());
    const double a = alpha.value();

    for (const auto& [name, f] : corpus) {
        const SamplePath F = drift_integral_path(coeffs, f);
        std::vector<double> mag(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) mag[i] = f.magnitude(i);
        std::vector<double> lhs;
        std::vector<double> rhs = left_integrals(weight, nodes, mag);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            lhs.push_back(fracnorms::pointwise_alpha_norm_at(F, nodes[j], alpha));
            rhs[j] += 1.0;
        }
        out.push_back(worst_checkpoint(kFbf, grid, nodes, lhs, rhs, cap_for(caps, kFbf),
                                       {{"f", name}, {"alpha", a}, {"n", grid.steps()}}));
    }
    for (const auto& [f, h] : pairs) {
        const SamplePath diff = drift_integral_path(coeffs, f.path) - drift_integral_path(coeffs, h.path);
        const auto norms = fracnorms::pointwise_alpha_norms(f.path - h.path, alpha);
        std::vector<double> lhs;
        const std::vector<double> rhs = left_integrals(weight, nodes, norms);
        for (std::size_t k : nodes) lhs.push_back(fracnorms::pointwise_alpha_norm_at(diff, k, alpha));
        out.push_back(worst_checkpoint(kFbfh, grid, nodes, lhs, rhs, cap_for(caps, kFbfh),
                                       {{"f", f.name}, {"h", h.name}, {"alpha", a}, {"n", grid.steps()}}));
    }
    return out;
}

std::vector<EstimateReport> audit_fbm_integral_estimates(const std::vector<NamedPath>& corpus,
                                                         const std::vector<std::pair<NamedPath, NamedPath>>& pairs,
                                                         const sde::CoefficientSet& coeffs, const SamplePath& bh,
                                                         HurstParameter hurst, AlphaParameter alpha, const Caps& caps)
{
    const double a = alpha.value();
    const double H = hurst.value();
    if (!(1.0 - H < a && a < std::min(0.5, coeffs.constants.beta))) {
        throw ParameterError("alpha must lie in (1-H, min(1/2, beta))");
    }
    std::vector<EstimateReport> out;
    const TimeGrid& grid = bh.grid();
    const auto nodes = checkpoint_nodes(grid);
    const double lam = fracnorms::lambda_alpha(bh, alpha);
    const detail::PowerKernel near_kernel(grid, 2.0 * a);
    const detail::PowerKernel origin_kernel(grid, a);
    const double delta = coeffs.constants.delta;

    auto weighted = [&](const std::vector<double>& phi) {
        std::vector<double> r;
        for (std::size_t k : nodes) {
            const auto v = [&](std::size_t i) { return phi[i]; };
            r.push_back(lam * (near_kernel.integrate_left(k, v) + origin_kernel.integrate_right(0, k, v)));
        }
        return r;
    };

    for (const auto& [name, f] : corpus) {
        const SamplePath G = fbm_integral_path(coeffs, f, bh);
        auto phi = fracnorms::pointwise_alpha_norms(f, alpha);
        for (double& v : phi) v += 1.0;
        std::vector<double> lhs;
        for (std::size_t k : nodes) lhs.push_back(fracnorms::pointwise_alpha_norm_at(G, k, alpha));
        out.push_back(worst_checkpoint(kGsigmaHf2, grid, nodes, lhs, weighted(phi), cap_for(caps, kGsigmaHf2),
                                       {{"f", name}, {"alpha", a}, {"lambda_alpha", lam}, {"n", grid.steps()}}));
    }
    for (const auto& [f, h] : pairs) {
        const SamplePath diff = fbm_integral_path(coeffs, f.path, bh) - fbm_integral_path(coeffs, h.path, bh);
        const auto df = fracnorms::delta_seminorms(f.path, alpha, delta);
        const auto dh = fracnorms::delta_seminorms(h.path, alpha, delta);
        const auto norms = fracnorms::pointwise_alpha_norms(f.path - h.path, alpha);
        std::vector<double> psi(norms.size());
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = (1.0 + df[i] + dh[i]) * norms[i];
        std::vector<double> lhs;
        for (std::size_t k : nodes) lhs.push_back(fracnorms::pointwise_alpha_norm_at(diff, k, alpha));
        out.push_back(worst_checkpoint(
            kGHfh, grid, nodes, lhs, weighted(psi), cap_for(caps, kGHfh),
            {{"f", f.name}, {"h", h.name}, {"alpha", a}, {"delta", delta}, {"lambda_alpha", lam}, {"n", grid.steps()}}));
    }
    return out;
}

std::vector<NamedProcess> make_process_corpus()
{
    return {
        {"zero", [](double, double) { return 0.0; }},
        {"one", [](double, double) { return 1.0; }},
        {"w", [](double, double w) { return w; }},
        {"sin_w", [](double t, double w) { return std::sin(w) + t; }},
        {"one_plus_tw", [](double t, double w) { return 1.0 + t * w; }},
    };
}

namespace {

struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
    void add(double v)
    {
        sum += v;
        sumsq += v * v;
    }
    [[nodiscard]] double mean(double m) const { return sum / m; }
    [[nodiscard]] double std_error(double m) const
    {
        const double mu = sum / m;
        const double var = std::max(0.0, sumsq / m - mu * mu) * m / std::max(1.0, m - 1.0);
        return std::sqrt(var / m);
    }
};

// Per-replica contributions of one Ito audit item.
struct ItemSample {
    std::vector<double> lhs;   // one per checkpoint
    std::vector<double> node;  // one per grid node, integrand of the rhs
};

}  // namespace

std::vector<EstimateReport> audit_ito_estimates(const std::vector<NamedProcess>& corpus, bool with_identical,
                                                const sde::CoefficientSet& coeffs, AlphaParameter alpha,
                                                const ItoAuditConfig& config, const Caps& caps)
{
    if (config.mc_budget < 2) throw ParameterError("Monte Carlo budget must be at least 2");
    if (coeffs.d != 1 || coeffs.r != 1) throw ParameterError("Ito audits use scalar coefficients (d = r = 1)");
    const TimeGrid& grid = config.grid;
    const std::size_t n1 = grid.size();
    const auto nodes = checkpoint_nodes(grid);
    const double a = alpha.value();

    // Items: GWf per process, GsigmaWf2 per process, GW2 per pair.
    struct Item {
        std::string estimate;
        std::size_t f;
        std::size_t h;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < corpus.size(); ++i) items.push_back({kGWf, i, i});
    for (std::size_t i = 0; i < corpus.size(); ++i) items.push_back({kGsigmaWf2, i, i});
    for (std::size_t i = 0; i + 1 < corpus.size(); ++i) items.push_back({kGW2, i, i + 1});
    if (with_identical) {
        for (std::size_t i = 0; i < corpus.size(); ++i) items.push_back({kGW2, i, i});
    }

    std::vector<std::vector<Moments>> lhs_acc(items.size(), std::vector<Moments>(nodes.size()));
    std::vector<std::vector<double>> node_acc(items.size(), std::vector<double>(n1, 0.0));

    auto replica = [&](std::size_t j) {
        const SamplePath w = noise::generate_bm(grid, 1, config.seed, j);
        std::vector<SamplePath> procs;
        procs.reserve(corpus.size());
        for (const auto& p : corpus) {
            Matrix v(static_cast<Eigen::Index>(n1), 1);
            for (std::size_t i = 0; i < n1; ++i) v(static_cast<Eigen::Index>(i), 0) = p.fn(grid[i], w(i));
            procs.emplace_back(grid, std::move(v));
        }
        std::vector<std::vector<double>> proc_norms(corpus.size());
        std::vector<ItemSample> out(items.size());
        for (std::size_t q = 0; q < items.size(); ++q) {
            const Item& it = items[q];
            ItemSample& s = out[q];
            s.node.resize(n1);
            SamplePath integral = SamplePath::zeros(grid, 1);
            if (it.estimate == kGWf) {
                Matrix v(static_cast<Eigen::Index>(n1), 1);
                double acc = 0.0;
                v(0, 0) = 0.0;
                for (std::size_t i = 0; i + 1 < n1; ++i) {
                    acc += procs[it.f](i) * (w(i + 1) - w(i));
                    v(static_cast<Eigen::Index>(i + 1), 0) = acc;
                }
                integral = SamplePath(grid, std::move(v));
                for (std::size_t i = 0; i < n1; ++i) s.node[i] = procs[it.f](i) * procs[it.f](i);
            } else if (it.estimate == kGsigmaWf2) {
                integral = ito_integral_path(coeffs, procs[it.f], w);
                if (proc_norms[it.f].empty()) proc_norms[it.f] = fracnorms::pointwise_alpha_norms(procs[it.f], alpha);
                for (std::size_t i = 0; i < n1; ++i) s.node[i] = proc_norms[it.f][i] * proc_norms[it.f][i];
            } else {
                integral = ito_integral_path(coeffs, procs[it.f], w) - ito_integral_path(coeffs, procs[it.h], w);
                for (std::size_t i = 0; i < n1; ++i) {
                    const double dd = procs[it.f](i) - procs[it.h](i);
                    s.node[i] = dd * dd;
                }
            }
            for (std::size_t k : nodes) {
                const double nrm = fracnorms::pointwise_alpha_norm_at(integral, k, alpha);
                s.lhs.push_back(nrm * nrm);
            }
        }
        return out;
    };

    // Chunks keep memory bounded; accumulation order is fixed, so the result
    // does not depend on the thread schedule.
    constexpr std::size_t kChunk = 64;
    for (std::size_t start = 0; start < config.mc_budget; start += kChunk) {
        const std::size_t stop = std::min(config.mc_budget, start + kChunk);
        std::vector<std::vector<ItemSample>> chunk(stop - start);
        tbb::parallel_for(start, stop, [&](std::size_t j) { chunk[j - start] = replica(j); });
        for (const auto& rep : chunk) {
            for (std::size_t q = 0; q < items.size(); ++q) {
                for (std::size_t c = 0; c < nodes.size(); ++c) lhs_acc[q][c].add(rep[q].lhs[c]);
                for (std::size_t i = 0; i < n1; ++i) node_acc[q][i] += rep[q].node[i];
            }
        }
    }

    const double M = static_cast<double>(config.mc_budget);
    const detail::PowerKernel kernel(grid, 0.5 + a);
    std::vector<EstimateReport> out;
    for (std::size_t q = 0; q < items.size(); ++q) {
        const Item& it = items[q];
        std::vector<double> phi(n1);
        for (std::size_t i = 0; i < n1; ++i) phi[i] = node_acc[q][i] / M;
        if (it.estimate == kGsigmaWf2) {
            for (double& v : phi) v += 1.0;
        }
        std::vector<double> lhs;
        std::vector<double> se;
        for (const auto& m : lhs_acc[q]) {
            lhs.push_back(m.mean(M));
            se.push_back(m.std_error(M));
        }
        const std::vector<double> rhs = left_integrals(kernel, nodes, phi);
        nlohmann::json meta{{"f", corpus[it.f].name}, {"alpha", a}, {"mc_budget", config.mc_budget},
                            {"seed", config.seed}, {"n", grid.steps()}};
        if (it.estimate == kGW2) meta["h"] = corpus[it.h].name;
        out.push_back(worst_checkpoint(it.estimate, grid, nodes, lhs, rhs, cap_for(caps, it.estimate), std::move(meta),
                                       &se));
    }
    return out;
}

nlohmann::json CalibratedAudit::to_json() const
{
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [k, v] : constants) c[k] = json_number(v);
    return {{"constants", c}, {"headroom", headroom}, {"failures", failures}, {"inconclusive", inconclusive},
            {"reports", reports.size()}};
}

CalibratedAudit calibrate_and_audit(const std::function<std::vector<EstimateReport>(std::uint64_t)>& trial,
                                    const std::vector<std::uint64_t>& set_a, const std::vector<std::uint64_t>& set_b,
                                    double headroom)
{
    const std::set<std::uint64_t> a(set_a.begin(), set_a.end());
    for (auto s : set_b) {
        if (a.contains(s)) throw ParameterError("calibration and audit seed sets must be disjoint");
    }
    CalibratedAudit result;
    result.headroom = headroom;
    for (auto seed : set_a) {
        for (const auto& r : trial(seed)) {
            double& c = result.constants[r.name];
            if (r.lhs > 0.0) c = std::max(c, r.implied_constant);
        }
    }
    for (auto seed : set_b) {
        for (auto r : trial(seed)) {
            const auto it = result.constants.find(r.name);
            r.recheck(it == result.constants.end() ? 0.0 : headroom * it->second);
            if (!r.passed) ++result.failures;
            if (r.inconclusive) ++result.inconclusive;
            result.reports.push_back(std::move(r));
        }
    }
    return result;
}

EstimateSuite EstimateSuite::standard()
{
    const auto& reg = sde::coefficient_registry();
    EstimateSuite s;
    s.drift = reg.make("affine", {{"b0", 0.5}, {"b1", -1.0}, {"h1", 0.0}});
    s.fbm_coeffs = reg.make("time_hoelder", {{"c", 0.5}, {"beta", 0.6}});
    s.ito_coeffs = reg.make("affine", {{"w0", 0.2}, {"w1", 0.5}, {"h1", 0.0}});
    return s;
}

std::vector<EstimateReport> EstimateSuite::run(std::uint64_t seed, const Caps& caps) const
{
    auto wants = [&](const char* name) { return std::find(estimates.begin(), estimates.end(), name) != estimates.end(); };
    const auto corpus = make_path_corpus(grid, hurst, fbm_paths, derive_seed(seed, 1));
    std::vector<std::pair<NamedPath, NamedPath>> pairs;
    if (identical_pairs_only) {
        for (const auto& f : corpus) pairs.emplace_back(f, f);
    } else {
        pairs = make_pairs(corpus, true);
    }
    const std::vector<NamedPath> none;
    const std::vector<std::pair<NamedPath, NamedPath>> no_pairs;

    std::vector<EstimateReport> out;
    auto keep = [&](std::vector<EstimateReport> reports) {
        for (auto& r : reports) {
            const bool mixed_pair = r.meta.contains("h") && r.meta["h"] != r.meta["f"];
            if (identical_pairs_only && mixed_pair) continue;
            if (wants(r.name.c_str())) out.push_back(std::move(r));
        }
    };
    if (wants(kFbf) || wants(kFbfh)) {
        keep(audit_drift_estimates(wants(kFbf) ? corpus : none, wants(kFbfh) ? pairs : no_pairs, drift, alpha, caps));
    }
    if (wants(kGsigmaHf2) || wants(kGHfh)) {
        const SamplePath bh = noise::generate_fbm(grid, hurst, fbm_coeffs.m, derive_seed(seed, 2));
        keep(audit_fbm_integral_estimates(wants(kGsigmaHf2) ? corpus : none, wants(kGHfh) ? pairs : no_pairs,
                                          fbm_coeffs, bh, hurst, alpha, caps));
    }
    if (wants(kGWf) || wants(kGsigmaWf2) || wants(kGW2)) {
        ItoAuditConfig cfg{grid, mc_budget, derive_seed(seed, 3)};
        auto processes = make_process_corpus();
        keep(audit_ito_estimates(processes, true, ito_coeffs, alpha, cfg, caps));
    }
    return out;
}

}  // namespace fsde::verify
