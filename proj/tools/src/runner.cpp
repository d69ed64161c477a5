#include "fsde/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <sstream>

#include <tbb/parallel_for.h>

#include "fsde/audits.hpp"
#include "fsde/csv.hpp"
#include "fsde/errors.hpp"
#include "fsde/hoelder.hpp"
#include "fsde/oracle.hpp"
#include "fsde/registry.hpp"
#include "fsde/rng.hpp"
#include "fsde/studies.hpp"

namespace fsde::cli {

namespace {

std::string indexed(const std::string& stem, std::size_t i, std::size_t count, const std::string& ext)
{
    if (count == 1) return stem + ext;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%03zu", i);
    return stem + buf + ext;
}

std::string fixed(double v, int digits = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string sci(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string reports_jsonl(const std::vector<EstimateReport>& reports)
{
    std::string out;
    for (const auto& r : reports) out += r.to_json().dump() + "\n";
    return out;
}

std::string reports_csv(const std::vector<EstimateReport>& reports)
{
    std::ostringstream out;
    out << "name,f,h,lhs,rhs,implied_constant,cap,passed,inconclusive,std_error\n";
    for (const auto& r : reports) {
        out << r.name << ',' << r.meta.value("f", "") << ',' << r.meta.value("h", "") << ',' << format_double(r.lhs)
            << ',' << format_double(r.rhs) << ',' << format_double(r.implied_constant) << ',' << format_double(r.cap)
            << ',' << (r.passed ? 1 : 0) << ',' << (r.inconclusive ? 1 : 0) << ',' << format_double(r.std_error)
            << '\n';
    }
    return out.str();
}

std::string study_status(const ConvergenceStudy& s)
{
    if (s.failed) return "FAILED";
    if (s.exact) return "EXACT";
    return s.low_confidence ? "LOW-CONFIDENCE" : "PASSED";
}

Vector initial_state(const Scenario& s, std::size_t path)
{
    if (s.x0_spread == 0.0) return s.problem.x0;
    return sde::sample_initial_state(s.problem.x0, s.x0_spread, derive_seed(s.noise_seed, path));
}

struct Context {
    const Scenario& s;
    ArtifactWriter& writer;
    std::ostringstream summary;
    int exit_code = kExitOk;

    void line(const std::string& text) { summary << s.name << ' ' << to_string(*s.command) << ": " << text << '\n'; }
    void csv(const std::string& name, std::string_view content)
    {
        if (s.write_csv) writer.write(name, content);
    }
    void json(const std::string& name, const nlohmann::json& content)
    {
        if (s.write_json) writer.write(name, content.dump(2) + "\n");
    }
};

void gen_noise(Context& ctx)
{
    const Scenario& s = ctx.s;
    const auto& c = s.problem.coeffs;
    const noise::NoiseGenerator gen(s.grid(), s.problem.hurst, c.m, c.r, s.noise.method);
    for (std::size_t p = 0; p < s.noise.paths; ++p) {
        const noise::NoiseBundle nb = gen(s.noise_seed, p);
        ctx.csv(indexed("fbm", p, s.noise.paths, ".csv"), path_to_csv(nb.fbm));
        ctx.csv(indexed("bm", p, s.noise.paths, ".csv"), path_to_csv(nb.bm));
    }
    ctx.line("generated " + std::to_string(s.noise.paths) + " noise bundle(s) with m=" + std::to_string(c.m) +
             " r=" + std::to_string(c.r) + " on " + std::to_string(s.grid().steps()) + " steps");
}

void solve(Context& ctx)
{
    const Scenario& s = ctx.s;
    const TimeGrid grid = s.grid();
    const auto& c = s.problem.coeffs;
    const noise::NoiseGenerator gen(grid, s.problem.hurst, c.m, c.r);
    nlohmann::json finals = nlohmann::json::array();
    for (std::size_t p = 0; p < s.solve.paths; ++p) {
        const noise::NoiseBundle nb = gen(s.noise_seed, p);
        const Vector x0 = initial_state(s, p);
        const SamplePath x = sde::euler_path(s.problem, x0, nb.fbm, nb.bm);
        ctx.csv(indexed("path", p, s.solve.paths, ".csv"), path_to_csv(x));
        if (s.solve.write_noise) {
            ctx.csv(indexed("fbm", p, s.solve.paths, ".csv"), path_to_csv(nb.fbm));
            ctx.csv(indexed("bm", p, s.solve.paths, ".csv"), path_to_csv(nb.bm));
        }
        nlohmann::json last = nlohmann::json::array();
        for (std::size_t k = 0; k < x.dim(); ++k) last.push_back(json_number(x(grid.steps(), k)));
        finals.push_back(last);
    }
    ctx.json("solution.json", {{"coefficients", s.coefficients},
                               {"horizon", s.problem.horizon},
                               {"n", grid.steps()},
                               {"hurst", s.problem.hurst.value()},
                               {"noise_seed", s.noise_seed},
                               {"final_states", finals}});
    ctx.line("solved " + std::to_string(s.solve.paths) + " path(s), X(T) = " + finals[0].dump());
}

void audit(Context& ctx)
{
    const Scenario& s = ctx.s;
    const AuditSection& a = s.audit;
    std::vector<EstimateReport> reports;
    if (a.suite == AuditSuite::estimates) {
        const auto& reg = sde::coefficient_registry();
        verify::EstimateSuite suite;
        suite.grid = s.grid();
        suite.hurst = s.problem.hurst;
        suite.alpha = AlphaParameter(*s.alpha);
        suite.drift = reg.parse(a.drift);
        suite.fbm_coeffs = reg.parse(a.fbm_coeffs);
        suite.ito_coeffs = reg.parse(a.ito_coeffs);
        suite.fbm_paths = a.fbm_paths;
        suite.mc_budget = s.mc_budget;
        suite.identical_pairs_only = a.identical_pairs_only;
        if (!a.estimates.empty()) suite.estimates = a.estimates;
        if (!a.calibrate_a.empty()) {
            const verify::CalibratedAudit cal = verify::calibrate_and_audit(
                [&](std::uint64_t seed) { return suite.run(seed); }, a.calibrate_a, a.calibrate_b, a.headroom);
            ctx.json("calibration.json", cal.to_json());
            reports = cal.reports;
        } else {
            reports = suite.run(s.noise_seed, a.caps);
        }
    } else if (a.suite == AuditSuite::moments) {
        std::ostringstream plateaus;
        plateaus << "order,steps,plateau,std_error,s,t\n";
        for (std::size_t order : a.orders) {
            verify::MomentConfig cfg;
            cfg.steps = a.steps;
            cfg.order = order;
            cfg.mc_budget = s.mc_budget;
            cfg.noise_seed = s.noise_seed;
            cfg.mc_seed = s.mc_seed;
            std::vector<verify::MomentPlateau> levels;
            reports.push_back(verify::moment_bound_audit(s.problem, cfg, &levels));
            for (const auto& p : levels) {
                plateaus << order << ',' << p.steps << ',' << format_double(p.plateau) << ','
                         << format_double(p.std_error) << ',' << format_double(p.s) << ',' << format_double(p.t) << '\n';
            }
        }
        ctx.csv("plateaus.csv", plateaus.str());
    } else {
        reports = verify::audit_gfa1(s.grid(), s.problem.hurst, FracOrder(*s.alpha), a.trials, s.noise_seed, a.cap);
    }

    if (s.write_json) ctx.writer.write("reports.jsonl", reports_jsonl(reports));
    ctx.csv("summary.csv", reports_csv(reports));

    std::size_t failed = 0;
    std::size_t inconclusive = 0;
    double worst = 0.0;
    for (const auto& r : reports) {
        if (!r.passed) ++failed;
        if (r.inconclusive) ++inconclusive;
        worst = std::max(worst, r.implied_constant);
    }
    if (failed > 0) ctx.exit_code = kExitFailed;
    ctx.line(std::string(failed > 0 ? "FAILED" : "PASSED") + " " + std::to_string(reports.size()) + " reports, " +
             std::to_string(failed) + " failed, " + std::to_string(inconclusive) +
             " inconclusive, largest implied constant " + fixed(worst));
}

void write_study(Context& ctx, const ConvergenceStudy& study)
{
    ctx.json("study.json", study.to_json());
    ctx.csv("study.csv", study.to_csv());
    if (study.failed) ctx.exit_code = kExitFailed;
    ctx.line(study_status(study) + " order " + fixed(study.fitted_order) + " r2 " + fixed(study.r2) +
             " finest error " + sci(study.errors.back()) + " over " + std::to_string(study.meshes.size()) + " meshes");
}

void converge(Context& ctx)
{
    const Scenario& s = ctx.s;
    const sde::OracleKind kind = *s.converge.oracle;
    verify::StrongStudyConfig cfg;
    cfg.horizon = s.problem.horizon;
    cfg.hurst = s.problem.hurst;
    cfg.levels = s.converge.levels;
    cfg.fine_level = s.converge.fine_level;
    cfg.mc_budget = s.mc_budget;
    cfg.seed = s.noise_seed;
    const sde::OracleParams params = sde::oracle_params_for(kind, s.problem.coeffs.params, s.problem.x0(0));
    write_study(ctx, verify::strong_convergence_study(kind, params, cfg));
}

void uniqueness(Context& ctx)
{
    const Scenario& s = ctx.s;
    verify::UniquenessConfig cfg;
    cfg.levels = s.uniqueness.levels;
    cfg.fine_level = s.uniqueness.fine_level;
    cfg.grading = s.uniqueness.grading;
    cfg.anchor_level = s.uniqueness.anchor_level;
    cfg.replicas = s.uniqueness.replicas;
    cfg.identical_families = s.uniqueness.identical_families;
    cfg.seed = s.noise_seed;
    sde::SDEProblem problem = s.problem;
    problem.x0 = initial_state(s, 0);
    write_study(ctx, verify::pathwise_uniqueness_harness(problem, cfg));
}

void hoelder(Context& ctx)
{
    const Scenario& s = ctx.s;
    const TimeGrid grid = s.grid();
    const auto& c = s.problem.coeffs;
    const bool from_fbm = s.hoelder.source == HoelderSource::fbm;
    const noise::NoiseGenerator gen(grid, s.problem.hurst, from_fbm ? 1 : c.m, c.r);
    nlohmann::json paths = nlohmann::json::array();
    std::ostringstream table;
    table << "path,exponent,r2,degenerate\n";
    double mean = 0.0;
    for (std::size_t p = 0; p < s.hoelder.paths; ++p) {
        const noise::NoiseBundle nb = gen(s.noise_seed, p);
        const SamplePath x = from_fbm ? nb.fbm : sde::euler_path(s.problem, initial_state(s, p), nb.fbm, nb.bm);
        const verify::HoelderEstimate e = verify::estimate_hoelder(x);
        mean += e.exponent / static_cast<double>(s.hoelder.paths);
        paths.push_back({{"exponent", e.exponent},
                         {"r2", e.r2},
                         {"degenerate", e.degenerate},
                         {"lags", e.lags},
                         {"scales", e.scales},
                         {"weights", e.weights}});
        table << p << ',' << format_double(e.exponent) << ',' << format_double(e.r2) << ',' << (e.degenerate ? 1 : 0)
              << '\n';
    }
    ctx.json("hoelder.json", {{"source", from_fbm ? "fbm" : "solution"},
                              {"hurst", s.problem.hurst.value()},
                              {"n", grid.steps()},
                              {"mean_exponent", mean},
                              {"paths", paths}});
    ctx.csv("hoelder.csv", table.str());
    ctx.line("mean Hoelder exponent " + fixed(mean) + " over " + std::to_string(s.hoelder.paths) + " path(s) of " +
             (from_fbm ? std::string("fBm") : std::string("the solution")));
}

}  // namespace

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

void ArtifactWriter::write(const std::string& name, std::string_view content)
{
    const std::lock_guard lock(mutex_);
    std::filesystem::create_directories(dir_);
    write_file_atomic(dir_ / name, content);
    written_.push_back(name);
}

std::vector<std::string> ArtifactWriter::written() const
{
    const std::lock_guard lock(mutex_);
    return written_;
}

std::filesystem::path output_directory(const Scenario& scenario, const std::optional<std::filesystem::path>& out_flag)
{
    if (out_flag) return *out_flag;
    const char* root = std::getenv("FSDE_OUTPUT_ROOT");
    if (root && *root) return std::filesystem::path(root) / scenario.name;
    return std::filesystem::path("fsde-output") / scenario.name;
}

RunOutcome run_scenario(Scenario scenario, Command command, const std::filesystem::path& out_dir)
{
    RunOutcome outcome;
    const auto problems = check_command(scenario, command);
    if (!problems.empty()) {
        outcome.exit_code = kExitValidation;
        for (const auto& d : problems) outcome.summary += scenario.name + ": invalid config: " + d.str() + "\n";
        return outcome;
    }
    scenario.command = command;

    ArtifactWriter writer(out_dir);
    Context ctx{scenario, writer, {}, kExitOk};
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (command) {
        case Command::gen_noise: gen_noise(ctx); break;
        case Command::solve: solve(ctx); break;
        case Command::audit: audit(ctx); break;
        case Command::converge: converge(ctx); break;
        case Command::uniqueness: uniqueness(ctx); break;
        case Command::hoelder: hoelder(ctx); break;
        }
    } catch (const Error& e) {
        ctx.exit_code = kExitFailed;
        ctx.line(std::string("FAILED: ") + e.what());
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    nlohmann::json manifest = {{"scenario", scenario.name},
                               {"command", to_string(command)},
                               {"config", scenario.source.string()},
                               {"coefficients", scenario.coefficients},
                               {"hurst", scenario.problem.hurst.value()},
                               {"n", scenario.steps},
                               {"seeds", {{"noise", scenario.noise_seed}, {"mc", scenario.mc_seed}}},
                               {"mc_budget", scenario.mc_budget},
                               {"exit_code", ctx.exit_code},
                               {"artifacts", writer.written()},
                               {"wall_time_seconds", wall},
                               {"finished_at", utc_now()}};
    if (scenario.alpha) manifest["alpha"] = *scenario.alpha;
    writer.write("manifest.json", manifest.dump(2) + "\n");

    outcome.exit_code = ctx.exit_code;
    outcome.summary = ctx.summary.str();
    for (const auto& name : writer.written()) outcome.artifacts.push_back(writer.dir() / name);
    return outcome;
}

std::vector<RunOutcome> run_batch(const std::filesystem::path& dir, const Overrides& overrides,
                                  const std::optional<std::filesystem::path>& out_root)
{
    if (!std::filesystem::is_directory(dir)) throw IoError("'" + dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<RunOutcome> outcomes(files.size());
    std::vector<std::optional<Scenario>> scenarios(files.size());
    std::map<std::string, std::size_t> names;
    for (std::size_t i = 0; i < files.size(); ++i) {
        LoadResult loaded = load_scenario(files[i], overrides);
        std::vector<Diagnostic> problems = loaded.diagnostics;
        if (loaded.scenario && !loaded.scenario->command) {
            problems.push_back({"command", "batch mode needs each config to declare its command"});
        }
        if (loaded.scenario) {
            const auto [it, fresh] = names.emplace(loaded.scenario->name, i);
            if (!fresh) problems.push_back({"name", "duplicates " + files[it->second].filename().string()});
        }
        if (!problems.empty()) {
            outcomes[i].exit_code = kExitValidation;
            for (const auto& d : problems) outcomes[i].summary += files[i].filename().string() + ": " + d.str() + "\n";
            continue;
        }
        scenarios[i] = std::move(loaded.scenario);
    }

    tbb::parallel_for(std::size_t{0}, files.size(), [&](std::size_t i) {
        if (!scenarios[i]) return;
        const Scenario& s = *scenarios[i];
        const std::filesystem::path out = out_root ? *out_root / s.name : output_directory(s, std::nullopt);
        outcomes[i] = run_scenario(s, *s.command, out);
    });
    return outcomes;
}

int combined_exit_code(const std::vector<RunOutcome>& outcomes)
{
    int code = kExitOk;
    for (const auto& o : outcomes) code = std::max(code, o.exit_code);
    return code;
}

}  // namespace fsde::cli
