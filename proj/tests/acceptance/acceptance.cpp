// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fsde/audits.hpp"
#include "fsde/cli/runner.hpp"
#include "fsde/euler.hpp"
#include "fsde/fraccalc.hpp"
#include "fsde/hoelder.hpp"
#include "fsde/noise.hpp"
#include "fsde/oracle.hpp"
#include "fsde/registry.hpp"
#include "fsde/report.hpp"
#include "fsde/studies.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace fsde;
namespace fc = fsde::fraccalc;
namespace oracle = fsde::test::oracle;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "!") + what;
    }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Sample covariance at 20 random node pairs within 3 standard errors, and the
// log-log slope of increment variance against lag.
Verdict fbm_law()
{
    Verdict v;
    const std::size_t n = 512;
    const std::size_t paths = 10000;
    const auto grid = TimeGrid::uniform(1.0, n);
    std::mt19937_64 pick(2026);
    std::uniform_int_distribution<std::size_t> node(1, n);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (int k = 0; k < 20; ++k) pairs.emplace_back(node(pick), node(pick));
    const std::vector<std::size_t> lags{1, 2, 4, 8, 16, 32, 64};

    for (double h : {0.6, 0.75, 0.9}) {
        const noise::NoiseGenerator gen(grid, HurstParameter(h), 1, 1);
        std::vector<std::vector<double>> prod(pairs.size());
        std::vector<double> sq(lags.size(), 0.0);
        std::vector<double> count(lags.size(), 0.0);
        for (std::size_t p = 0; p < paths; ++p) {
            const SamplePath b = gen.fbm(1, p);
            for (std::size_t k = 0; k < pairs.size(); ++k) prod[k].push_back(b(pairs[k].first) * b(pairs[k].second));
            for (std::size_t l = 0; l < lags.size(); ++l) {
                for (std::size_t i = 0; i + lags[l] <= n; i += lags[l]) {
                    const double d = b(i + lags[l]) - b(i);
                    sq[l] += d * d;
                    count[l] += 1.0;
                }
            }
        }
        double worst = 0.0;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto m = test::moments(prod[k]);
            const double exact = noise::fbm_covariance(grid[pairs[k].first], grid[pairs[k].second], h);
            worst = std::max(worst, std::abs(m.mean - exact) / m.std_error);
        }
        std::vector<double> x;
        std::vector<double> y;
        for (std::size_t l = 0; l < lags.size(); ++l) {
            x.push_back(std::log(grid.mesh() * static_cast<double>(lags[l])));
            y.push_back(std::log(sq[l] / count[l]));
        }
        const double slope = fit_line(x, y).slope;
        v.require(worst <= 3.0, "H=" + fmt("%.2g", h) + " max|cov err|/SE " + fmt("%.2f", worst));
        v.require(std::abs(slope - 2.0 * h) <= 0.05, "slope " + fmt("%.4f", slope));
    }
    return v;
}

double inversion_error(std::size_t n, const std::function<double(double)>& fn, double a)
{
    const auto grid = TimeGrid::uniform(1.0, n);
    const auto f = test::fn_path(grid, fn);
    const auto d = fc::weyl_derivative_left_all(fc::rl_integral_left_path(f, FracOrder(a)), FracOrder(a));
    double err = 0.0;
    for (std::size_t k = n / 8; k <= n; ++k) err = std::max(err, std::abs(d[k] - f(k)));
    return err;
}

// D^a I^a f = f on [T/8, T] for a polynomial corpus; power rules at x = 1.
Verdict fractional_operators()
{
    Verdict v;
    const std::vector<std::function<double(double)>> corpus{
        [](double) { return 1.0; },
        [](double t) { return t; },
        [](double t) { return t * t; },
        [](double t) { return 1.0 - 2.0 * t + 3.0 * t * t * t; },
    };
    double worst1024 = 0.0;
    bool decreasing = true;
    for (const auto& fn : corpus) {
        for (double a : {0.3, 0.5, 0.7}) {
            const double e256 = inversion_error(256, fn, a);
            const double e1024 = inversion_error(1024, fn, a);
            const double e4096 = inversion_error(4096, fn, a);
            worst1024 = std::max(worst1024, e1024);
            decreasing = decreasing && e1024 < e256 && e4096 < e1024;
        }
    }
    v.require(worst1024 <= 1e-2, "max inversion error n=1024 " + fmt("%.2e", worst1024));
    v.require(decreasing, "decreasing under refinement");

    const auto grid = TimeGrid::uniform(1.0, 256);
    const auto one = test::constant_path(grid, 1.0);
    const auto id = test::identity_path(grid);
    const double rules[][2] = {
        {fc::rl_integral_left(one, FracOrder(0.5), 1.0), oracle::kRlOneHalf},
        {fc::rl_integral_left(id, FracOrder(0.5), 1.0), oracle::kRlIdHalf},
        {fc::weyl_derivative_left(one, FracOrder(0.5), 1.0), oracle::kWeylOneHalf},
        {fc::weyl_derivative_left(id, FracOrder(0.5), 1.0), oracle::kWeylIdHalf},
        {fc::weyl_derivative_right(id, FracOrder(0.5), 0.0, 1.0), oracle::kWeylRightIdHalf},
    };
    double worst_rel = 0.0;
    for (const auto& r : rules) worst_rel = std::max(worst_rel, std::abs(r[0] - r[1]) / std::abs(r[1]));
    v.require(worst_rel < 5e-5, "I^0.5 1(1) = " + fmt("%.6f", rules[0][0]) + ", power rules rel err " +
                                    fmt("%.1e", worst_rel));
    return v;
}

constexpr double kQuadratureTolerance = 1e-3;

// Fractional and Riemann-Stieltjes routes agree on smooth x fBm within
// max(est_error, 10 quadrature tolerance), and their gap shrinks under
// refinement; int g dg = g(T)^2/2 with error shrinking under refinement.
Verdict young_integral()
{
    Verdict v;
    const HurstParameter hurst(0.75);
    const auto fine = TimeGrid::uniform(1.0, 4096);
    const noise::NoiseGenerator fine_gen(fine, hurst, 1, 1);
    std::vector<SamplePath> smooth{
        test::fn_path(fine, [](double t) { return std::sin(2.0 * M_PI * t); }),
        test::fn_path(fine, [](double t) { return t * t; }),
        test::fn_path(fine, [](double t) { return std::exp(-t); }),
    };
    for (std::uint64_t i = 0; i < 3; ++i) smooth.push_back(verify::random_smooth_path(fine, 31, i));

    fc::StieltjesOptions opt;
    opt.lambda = 1.0;
    opt.mu = 0.7;
    std::size_t agree = 0;
    std::size_t total = 0;
    double worst_est_ratio = 0.0;
    double gap1024 = 0.0;
    double gap4096 = 0.0;
    const auto coarse = fine.coarsen(4);
    for (std::uint64_t p = 0; p < 3; ++p) {
        const SamplePath g = fine_gen.fbm(41, p);
        for (const auto& f : smooth) {
            const auto fc1 = f.restrict_to(coarse);
            const auto gc1 = g.restrict_to(coarse);
            const auto frac = fc::stieltjes_integral_fractional(fc1, gc1, 1.0, opt);
            const auto rs = fc::stieltjes_integral_rs_sums(fc1, gc1, 1.0);
            const double est = frac.est_error + rs.est_error;
            const double diff = std::abs(frac.value - rs.value);
            worst_est_ratio = std::max(worst_est_ratio, diff / est);
            agree += diff <= std::max(est, 10.0 * kQuadratureTolerance) ? 1 : 0;
            ++total;
            gap1024 += diff;
            opt.estimate_error = false;
            gap4096 += std::abs(fc::stieltjes_integral_fractional(f, g, 1.0, opt).value -
                                fc::stieltjes_integral_rs_sums(f, g, 1.0).value);
            opt.estimate_error = true;
        }
    }
    v.require(agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                                  " pairs agree at n=1024 (max diff/est_error " + fmt("%.2f", worst_est_ratio) + ")");
    v.require(gap4096 < gap1024, "mean route gap n=1024/4096 " + fmt("%.1e", gap1024 / total) + "/" +
                                     fmt("%.1e", gap4096 / total));

    std::vector<double> err(3, 0.0);
    const std::size_t chain_paths = 4;
    for (std::uint64_t p = 0; p < chain_paths; ++p) {
        const SamplePath g = fine_gen.fbm(43, p);
        const double exact = 0.5 * g(4096) * g(4096);
        std::size_t k = 0;
        for (std::size_t stride : {16, 4, 1}) {
            const SamplePath gs = g.restrict_to(fine.coarsen(stride));
            fc::StieltjesOptions o;
            o.alpha = 0.5;
            o.estimate_error = false;
            err[k++] += std::abs(fc::stieltjes_integral_fractional(gs, gs, 1.0, o).value - exact) / chain_paths;
        }
    }
    v.require(err[1] < err[0] && err[2] < err[1],
              "chain rule mean error n=256/1024/4096 " + fmt("%.2e", err[0]) + "/" + fmt("%.2e", err[1]) + "/" +
                  fmt("%.2e", err[2]));
    return v;
}

Verdict gfa1()
{
    Verdict v;
    const auto grid = TimeGrid::uniform(1.0, 256);
    const auto reports = verify::audit_gfa1(grid, HurstParameter(0.75), FracOrder(0.4), 100, 7);
    std::size_t failures = 0;
    double worst = 0.0;
    for (const auto& r : reports) {
        failures += r.passed ? 0 : 1;
        worst = std::max(worst, r.implied_constant);
    }
    v.require(reports.size() == 100 && failures == 0,
              std::to_string(failures) + " violations in " + std::to_string(reports.size()) +
                  " trials (max lhs/rhs " + fmt("%.3f", worst) + ")");
    const auto r = fc::bound_check_gfa1(test::constant_path(grid, 1.0), test::identity_path(grid), FracOrder(0.5), 1.0);
    const bool three = std::abs(r.lhs - 1.0) < 5e-4 && std::abs(r.rhs - oracle::kGfa1Rhs) < 5e-4 * oracle::kGfa1Rhs;
    v.require(three, "analytic LHS " + fmt("%.4f", r.lhs) + " RHS " + fmt("%.4f", r.rhs));
    return v;
}

Verdict estimate_audits()
{
    Verdict v;
    verify::EstimateSuite suite = verify::EstimateSuite::standard();
    suite.mc_budget = 2000;
    const auto cal = verify::calibrate_and_audit([&](std::uint64_t seed) { return suite.run(seed); }, {101, 102},
                                                 {201, 202}, 2.0);
    std::vector<std::string> names;
    for (const auto& [name, c] : cal.constants) names.push_back(name + "=" + fmt("%.3g", c));
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ",") + n;
    v.require(cal.constants.size() == 7, "7 estimates calibrated");
    v.require(cal.failures == 0, std::to_string(cal.failures) + " failures in " + std::to_string(cal.reports.size()) +
                                     " reports on set B (" + std::to_string(cal.inconclusive) +
                                     " inconclusive); C: " + list);
    return v;
}

Verdict euler()
{
    Verdict v;
    const auto& reg = sde::coefficient_registry();
    double worst = 0.0;
    for (const TimeGrid& grid : {TimeGrid::uniform(1.0, 1024), test::jittered_grid(1.0, 1000, 3)}) {
        const sde::SDEProblem p{reg.parse("drift_only(c0=1.5, c1=0)"), Vector::Constant(1, 0.5), 1.0,
                                HurstParameter(0.75)};
        const auto nb = noise::NoiseGenerator(grid, p.hurst, 1, 1)(0);
        const auto x = sde::euler_path(p, nb);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double exact = 0.5 + 1.5 * grid[i];
            worst = std::max(worst, std::abs(x(i) - exact) / (std::numeric_limits<double>::epsilon() * exact));
        }
    }
    v.require(worst <= 64.0, "drift-only max error " + fmt("%.0f", worst) + " ulp");

    verify::StrongStudyConfig cfg;
    cfg.mc_budget = 500;
    cfg.seed = 5;
    sde::OracleParams gbm;
    gbm.sigma = 0.5;
    const auto s = verify::strong_convergence_study(sde::OracleKind::ito_gbm, gbm, cfg);
    v.require(std::abs(s.fitted_order - 0.5) <= 0.1 && s.r2 >= 0.9,
              "ito_gbm order " + fmt("%.3f", s.fitted_order) + " r2 " + fmt("%.3f", s.r2));
    sde::OracleParams young;
    young.scale = 1.0;
    const auto y = verify::strong_convergence_study(sde::OracleKind::young_exponential, young, cfg);
    const double target = 2.0 * cfg.hurst.value() - 1.0;
    v.require(std::abs(y.fitted_order - target) <= 0.15, "young order " + fmt("%.3f", y.fitted_order));
    return v;
}

Verdict uniqueness()
{
    Verdict v;
    const auto& reg = sde::coefficient_registry();
    const std::vector<std::pair<std::string, double>> corpus{
        {"linear(a=0.3, drift=0.2, sw=0.3)", 1.0},
        {"sin(kappa=0.5, sw=0.3, scale=0.3)", 0.5},
        {"time_hoelder(c=0.5, beta=0.6, sw=0.3)", 0.5},
        {"affine(b0=0.5, b1=-1, w0=0.2, w1=0.3, h0=0.2, h1=0.3)", 1.0},
        {"drift_only(c0=1, c1=1, omega=6)", 0.0},
    };
    for (const auto& [spec, x0] : corpus) {
        const sde::SDEProblem p{reg.parse(spec), Vector::Constant(1, x0), 1.0, HurstParameter(0.75)};
        verify::UniquenessConfig cfg;
        cfg.seed = 3;
        const auto s = verify::pathwise_uniqueness_harness(p, cfg);
        const double last = s.errors.back();
        v.require(last < 1e-2 && s.fitted_order > 0.0, spec.substr(0, spec.find('(')) + " d=" + fmt("%.1e", last) +
                                                         " order " + fmt("%.2f", s.fitted_order));
    }
    return v;
}

Verdict regularity()
{
    Verdict v;
    const auto grid = TimeGrid::uniform(1.0, 1024);
    const noise::NoiseGenerator gen(grid, HurstParameter(0.75), 1, 1);
    double fbm = 0.0;
    for (std::uint64_t p = 0; p < 100; ++p) fbm += verify::hoelder_exponent_estimate(gen.fbm(51, p)) / 100.0;
    v.require(std::abs(fbm - 0.75) <= 0.08, "fBm H=0.75 mean exponent " + fmt("%.3f", fbm));

    const auto& reg = sde::coefficient_registry();
    const sde::SDEProblem p{reg.parse("linear(a=0.3, drift=0.2, sw=0.5)"), Vector::Ones(1), 1.0,
                            HurstParameter(0.75)};
    double mixed = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) mixed += verify::hoelder_exponent_estimate(sde::euler_path(p, gen(53, k))) / 100.0;
    v.require(std::abs(mixed - 0.5) <= 0.08, "mixed SDE mean exponent " + fmt("%.3f", mixed));
    return v;
}

Verdict moments()
{
    Verdict v;
    const auto& reg = sde::coefficient_registry();
    const sde::SDEProblem p{reg.parse("linear(a=0.3, drift=0.2, sw=0.5)"), Vector::Ones(1), 1.0,
                            HurstParameter(0.75)};
    for (std::size_t order : {1, 2}) {
        verify::MomentConfig cfg;
        cfg.order = order;
        std::vector<verify::MomentPlateau> levels;
        const auto r = verify::moment_bound_audit(p, cfg, &levels);
        std::string plateaus;
        for (const auto& l : levels) plateaus += (plateaus.empty() ? "" : "/") + fmt("%.4g", l.plateau);
        v.require(r.passed, "N=" + std::to_string(order) + " plateaus " + plateaus);
    }
    return v;
}

Verdict reproducibility()
{
    Verdict v;
    test::TempDir a("repro-a");
    test::TempDir b("repro-b");
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(FSDE_CONFIG_DIR)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::size_t compared = 0;
    std::size_t mismatched = 0;
    for (const auto& file : files) {
        auto loaded = cli::load_scenario(file);
        if (!loaded.ok() || !loaded.scenario->command) {
            v.require(false, file.filename().string() + " did not load");
            continue;
        }
        const cli::Command cmd = *loaded.scenario->command;
        const auto name = loaded.scenario->name;
        const auto ra = cli::run_scenario(*loaded.scenario, cmd, a.path() / name);
        const auto rb = cli::run_scenario(*loaded.scenario, cmd, b.path() / name);
        for (const auto& art : ra.artifacts) {
            if (art.filename() == "manifest.json") continue;
            const auto other = b.path() / name / art.filename();
            ++compared;
            if (test::read_file(art) != test::read_file(other)) {
                ++mismatched;
                v.require(false, name + "/" + art.filename().string() + " differs");
            }
        }
        if (ra.artifacts.size() != rb.artifacts.size()) v.require(false, name + " artifact lists differ");
    }
    v.require(mismatched == 0 && compared > 0,
              std::to_string(compared) + " artifacts from " + std::to_string(files.size()) + " scenarios byte-identical");
    return v;
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
        {"fbm-law", fbm_law},
        {"fractional-operators", fractional_operators},
        {"young-integral", young_integral},
        {"gfa1-bound", gfa1},
        {"estimate-audits", estimate_audits},
        {"euler", euler},
        {"pathwise-uniqueness", uniqueness},
        {"regularity", regularity},
        {"moment-bound", moments},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d %-21s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
