#include "fsde/cli/scenario.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "fsde/audits.hpp"
#include "fsde/errors.hpp"
#include "fsde/hoelder.hpp"
#include "fsde/oracle.hpp"
#include "fsde/registry.hpp"

namespace fsde::cli {

namespace {

using Diagnostics = std::vector<Diagnostic>;

std::string join(std::string_view a, std::string_view b) { return a.empty() ? std::string(b) : std::string(a) + "." + std::string(b); }

std::string format_real(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

void unknown_keys(const YAML::Node& node, std::string_view where, const std::set<std::string>& known, Diagnostics& out)
{
    if (!node.IsMap()) return;
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!known.contains(key)) out.push_back({join(where, key), "unknown key"});
    }
}

bool expect_map(const YAML::Node& node, std::string_view where, Diagnostics& out)
{
    if (!node || node.IsNull()) return false;
    if (!node.IsMap()) {
        out.push_back({std::string(where), "expected a mapping"});
        return false;
    }
    return true;
}

template <typename T>
std::optional<T> read(const YAML::Node& parent, const std::string& key, std::string_view where, Diagnostics& out)
{
    const YAML::Node node = parent[key];
    if (!node || node.IsNull()) return std::nullopt;
    try {
        if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
            const auto v = node.as<long long>();
            if (v < 0) {
                out.push_back({join(where, key), "must be nonnegative"});
                return std::nullopt;
            }
            return static_cast<T>(v);
        } else {
            return node.as<T>();
        }
    } catch (const YAML::Exception&) {
        out.push_back({join(where, key), "cannot read value '" + YAML::Dump(node) + "'"});
        return std::nullopt;
    }
}

template <typename T>
std::optional<std::vector<T>> read_list(const YAML::Node& parent, const std::string& key, std::string_view where,
                                        Diagnostics& out)
{
    const YAML::Node node = parent[key];
    if (!node || node.IsNull()) return std::nullopt;
    if (!node.IsSequence()) {
        out.push_back({join(where, key), "expected a list"});
        return std::nullopt;
    }
    std::vector<T> values;
    for (std::size_t i = 0; i < node.size(); ++i) {
        try {
            if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
                const auto v = node[i].as<long long>();
                if (v < 0) throw YAML::BadConversion(node[i].Mark());
                values.push_back(static_cast<T>(v));
            } else {
                values.push_back(node[i].as<T>());
            }
        } catch (const YAML::Exception&) {
            out.push_back({join(where, key) + "[" + std::to_string(i) + "]", "cannot read value"});
            return std::nullopt;
        }
    }
    return values;
}

nlohmann::json to_json(const YAML::Node& node)
{
    if (!node || node.IsNull()) return nullptr;
    if (node.IsMap()) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& kv : node) j[kv.first.as<std::string>()] = to_json(kv.second);
        return j;
    }
    if (node.IsSequence()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& item : node) j.push_back(to_json(item));
        return j;
    }
    const auto text = node.as<std::string>();
    if (node.Tag() != "!") {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used == text.size()) return v;
        } catch (const std::exception&) {
        }
        if (text == "true") return true;
        if (text == "false") return false;
    }
    return text;
}

std::optional<sde::CoefficientSet> resolve_coefficients(const YAML::Node& node, std::string_view where,
                                                        Diagnostics& out)
{
    const auto& reg = sde::coefficient_registry();
    try {
        if (node.IsScalar()) return reg.parse(node.as<std::string>());
        if (node.IsMap()) {
            unknown_keys(node, where, {"family", "params"}, out);
            if (!node["family"]) {
                out.push_back({join(where, "family"), "missing"});
                return std::nullopt;
            }
            nlohmann::json params = node["params"] ? to_json(node["params"]) : nlohmann::json::object();
            return reg.make(node["family"].as<std::string>(), params);
        }
        out.push_back({std::string(where), "expected a family spec string or {family, params}"});
    } catch (const LookupError& e) {
        out.push_back({std::string(where), e.what()});
    } catch (const Error& e) {
        out.push_back({std::string(where), e.what()});
    } catch (const YAML::Exception& e) {
        out.push_back({std::string(where), e.what()});
    }
    return std::nullopt;
}

void check_coefficient_spec(const std::string& spec, const std::string& where, Diagnostics& out)
{
    try {
        (void)sde::coefficient_registry().parse(spec);
    } catch (const Error& e) {
        out.push_back({where, e.what()});
    }
}

bool writable_location(std::filesystem::path p)
{
    std::error_code ec;
    p = std::filesystem::absolute(p, ec);
    if (ec) return false;
    while (!p.empty() && !std::filesystem::exists(p, ec)) {
        if (p == p.parent_path()) return false;
        p = p.parent_path();
    }
    return !p.empty() && std::filesystem::is_directory(p, ec) && ::access(p.c_str(), W_OK) == 0;
}

void parse_problem(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const YAML::Node node = root["problem"];
    if (!node) {
        out.push_back({"problem", "missing"});
        return;
    }
    if (!expect_map(node, "problem", out)) return;
    unknown_keys(node, "problem", {"coefficients", "x0", "x0_spread", "horizon", "hurst"}, out);

    std::optional<sde::CoefficientSet> coeffs;
    if (!node["coefficients"]) {
        out.push_back({"problem.coefficients", "missing"});
    } else {
        coeffs = resolve_coefficients(node["coefficients"], "problem.coefficients", out);
    }

    if (auto h = read<double>(node, "hurst", "problem", out)) {
        if (!(*h > 0.5 && *h < 1.0)) {
            out.push_back({"problem.hurst", "H must lie in (1/2,1), got " + format_real(*h)});
        } else {
            s.problem.hurst = HurstParameter(*h);
        }
    }
    if (auto t = read<double>(node, "horizon", "problem", out)) {
        if (!(*t > 0.0) || !std::isfinite(*t)) {
            out.push_back({"problem.horizon", "must be positive"});
        } else {
            s.problem.horizon = *t;
        }
    }
    if (auto spread = read<double>(node, "x0_spread", "problem", out)) {
        if (*spread < 0.0) out.push_back({"problem.x0_spread", "must be nonnegative"});
        s.x0_spread = *spread;
    }

    std::vector<double> x0{1.0};
    if (node["x0"]) {
        if (node["x0"].IsSequence()) {
            if (auto v = read_list<double>(node, "x0", "problem", out)) x0 = *v;
        } else if (auto v = read<double>(node, "x0", "problem", out)) {
            x0 = {*v};
        }
    }

    if (coeffs) {
        if (x0.size() == 1 && coeffs->d > 1) x0.assign(coeffs->d, x0[0]);
        if (x0.size() != coeffs->d) {
            out.push_back({"problem.x0", "has " + std::to_string(x0.size()) + " entries but the coefficients have d = " +
                                             std::to_string(coeffs->d)});
        }
        s.coefficients = coeffs->to_json();
        s.problem.coeffs = std::move(*coeffs);
    }
    s.problem.x0 = Eigen::Map<const Vector>(x0.data(), static_cast<Eigen::Index>(x0.size()));
}

void parse_grid(const YAML::Node& root, Scenario& s, const Overrides& ov, Diagnostics& out)
{
    const YAML::Node node = root["grid"];
    if (expect_map(node, "grid", out)) {
        unknown_keys(node, "grid", {"n", "nodes"}, out);
        if (node["n"] && node["nodes"]) out.push_back({"grid", "give either n or nodes, not both"});
        if (auto n = read<std::size_t>(node, "n", "grid", out)) s.steps = *n;
        if (auto nodes = read_list<double>(node, "nodes", "grid", out)) s.nodes = *nodes;
    }
    if (ov.n) {
        s.steps = *ov.n;
        s.nodes.clear();
    }
    if (s.nodes.empty()) {
        if (s.steps == 0) out.push_back({"grid.n", "must be at least 1"});
        return;
    }
    if (s.nodes.size() < 2 || s.nodes.front() != 0.0) {
        out.push_back({"grid.nodes", "must start at 0 and contain at least two nodes"});
        return;
    }
    for (std::size_t i = 1; i < s.nodes.size(); ++i) {
        if (!(s.nodes[i] > s.nodes[i - 1])) {
            out.push_back({"grid.nodes", "must be strictly increasing (index " + std::to_string(i) + ")"});
            return;
        }
    }
    if (std::abs(s.nodes.back() - s.problem.horizon) > 1e-12 * s.problem.horizon) {
        out.push_back({"grid.nodes", "last node must equal the horizon " + format_real(s.problem.horizon)});
    }
    s.steps = s.nodes.size() - 1;
}

void check_alpha(Scenario& s, Diagnostics& out)
{
    if (!s.alpha) return;
    const double a = *s.alpha;
    if (!(a > 0.0 && a < 0.5)) {
        out.push_back({"alpha", "must lie in (0,1/2), got " + format_real(a)});
        return;
    }
    const double h = s.problem.hurst.value();
    if (!(a > 1.0 - h)) {
        out.push_back({"alpha", "alpha must exceed 1-H = " + format_real(1.0 - h) + ", got " + format_real(a)});
    }
    if (s.problem.coeffs.sigma_h) {
        const auto& c = s.problem.coeffs.constants;
        const double upper = std::min({0.5, c.beta, c.delta / 2.0});
        if (!(a < upper)) {
            out.push_back({"alpha", "alpha must stay below min(1/2, beta, delta/2) = " + format_real(upper) +
                                        " for these coefficients, got " + format_real(a)});
        }
    }
}

void parse_outputs(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const auto list = read_list<std::string>(root, "outputs", "", out);
    if (!list) return;
    s.write_csv = false;
    s.write_json = false;
    for (const auto& item : *list) {
        if (item == "csv") {
            s.write_csv = true;
        } else if (item == "json") {
            s.write_json = true;
        } else {
            out.push_back({"outputs", "unknown artifact kind '" + item + "' (expected csv or json)"});
        }
    }
}

void parse_noise(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const YAML::Node node = root["noise"];
    if (!expect_map(node, "noise", out)) return;
    unknown_keys(node, "noise", {"paths", "method"}, out);
    if (auto p = read<std::size_t>(node, "paths", "noise", out)) s.noise.paths = *p;
    if (auto m = read<std::string>(node, "method", "noise", out)) {
        if (*m == "automatic") {
            s.noise.method = noise::FbmMethod::automatic;
        } else if (*m == "cholesky") {
            s.noise.method = noise::FbmMethod::cholesky;
        } else if (*m == "circulant") {
            s.noise.method = noise::FbmMethod::circulant;
        } else {
            out.push_back({"noise.method", "expected automatic, cholesky or circulant"});
        }
    }
    if (s.noise.paths == 0) out.push_back({"noise.paths", "must be at least 1"});
}

void parse_solve(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const YAML::Node node = root["solve"];
    if (!expect_map(node, "solve", out)) return;
    unknown_keys(node, "solve", {"paths", "write_noise"}, out);
    if (auto p = read<std::size_t>(node, "paths", "solve", out)) s.solve.paths = *p;
    if (auto w = read<bool>(node, "write_noise", "solve", out)) s.solve.write_noise = *w;
    if (s.solve.paths == 0) out.push_back({"solve.paths", "must be at least 1"});
}

void parse_audit(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const YAML::Node node = root["audit"];
    if (!expect_map(node, "audit", out)) return;
    unknown_keys(node, "audit",
                 {"suite", "estimates", "pairs", "fbm_paths", "drift", "fbm_coeffs", "ito_coeffs", "caps", "calibrate",
                  "orders", "steps", "trials", "cap"},
                 out);
    AuditSection& a = s.audit;
    if (auto suite = read<std::string>(node, "suite", "audit", out)) {
        if (*suite == "estimates") {
            a.suite = AuditSuite::estimates;
        } else if (*suite == "moments") {
            a.suite = AuditSuite::moments;
        } else if (*suite == "gfa1") {
            a.suite = AuditSuite::gfa1;
        } else {
            out.push_back({"audit.suite", "expected estimates, moments or gfa1"});
        }
    }
    static const std::set<std::string> names{verify::kFbf,  verify::kFbfh,      verify::kGsigmaHf2, verify::kGHfh,
                                             verify::kGWf,  verify::kGsigmaWf2, verify::kGW2};
    if (auto est = read_list<std::string>(node, "estimates", "audit", out)) {
        for (const auto& e : *est) {
            if (!names.contains(e)) out.push_back({"audit.estimates", "unknown estimate '" + e + "'"});
        }
        a.estimates = *est;
    }
    if (auto pairs = read<std::string>(node, "pairs", "audit", out)) {
        if (*pairs == "identical") {
            a.identical_pairs_only = true;
        } else if (*pairs == "all") {
            a.identical_pairs_only = false;
        } else {
            out.push_back({"audit.pairs", "expected all or identical"});
        }
    }
    if (auto v = read<std::size_t>(node, "fbm_paths", "audit", out)) a.fbm_paths = *v;
    if (auto v = read<std::string>(node, "drift", "audit", out)) a.drift = *v;
    if (auto v = read<std::string>(node, "fbm_coeffs", "audit", out)) a.fbm_coeffs = *v;
    if (auto v = read<std::string>(node, "ito_coeffs", "audit", out)) a.ito_coeffs = *v;
    check_coefficient_spec(a.drift, "audit.drift", out);
    check_coefficient_spec(a.fbm_coeffs, "audit.fbm_coeffs", out);
    check_coefficient_spec(a.ito_coeffs, "audit.ito_coeffs", out);
    if (const YAML::Node caps = node["caps"]; expect_map(caps, "audit.caps", out)) {
        for (const auto& kv : caps) {
            const auto key = kv.first.as<std::string>();
            if (!names.contains(key)) out.push_back({"audit.caps." + key, "unknown estimate"});
            if (auto v = read<double>(caps, key, "audit.caps", out)) {
                if (!(*v > 0.0)) out.push_back({"audit.caps." + key, "must be positive"});
                a.caps[key] = *v;
            }
        }
    }
    if (const YAML::Node cal = node["calibrate"]; expect_map(cal, "audit.calibrate", out)) {
        unknown_keys(cal, "audit.calibrate", {"set_a", "set_b", "headroom"}, out);
        if (auto v = read_list<std::uint64_t>(cal, "set_a", "audit.calibrate", out)) a.calibrate_a = *v;
        if (auto v = read_list<std::uint64_t>(cal, "set_b", "audit.calibrate", out)) a.calibrate_b = *v;
        if (auto v = read<double>(cal, "headroom", "audit.calibrate", out)) a.headroom = *v;
        if (a.calibrate_a.empty() || a.calibrate_b.empty()) {
            out.push_back({"audit.calibrate", "needs non-empty set_a and set_b"});
        }
        for (auto seed : a.calibrate_a) {
            if (std::find(a.calibrate_b.begin(), a.calibrate_b.end(), seed) != a.calibrate_b.end()) {
                out.push_back({"audit.calibrate", "seed sets must be disjoint (both contain " + std::to_string(seed) + ")"});
            }
        }
        if (!(a.headroom >= 1.0)) out.push_back({"audit.calibrate.headroom", "must be at least 1"});
    }
    if (auto v = read_list<std::size_t>(node, "orders", "audit", out)) {
        for (auto n : *v) {
            if (n != 1 && n != 2) out.push_back({"audit.orders", "moment orders must be 1 or 2"});
        }
        a.orders = *v;
    }
    if (auto v = read_list<std::size_t>(node, "steps", "audit", out)) {
        if (v->size() < 2) out.push_back({"audit.steps", "needs at least two grid sizes"});
        a.steps = *v;
    }
    if (auto v = read<std::size_t>(node, "trials", "audit", out)) a.trials = *v;
    if (auto v = read<double>(node, "cap", "audit", out)) a.cap = *v;
}

std::vector<std::size_t> check_levels(const YAML::Node& node, const std::string& where, std::vector<std::size_t> fallback,
                                      Diagnostics& out)
{
    auto v = read_list<std::size_t>(node, "levels", where, out);
    if (!v) return fallback;
    if (v->size() < 2) out.push_back({where + ".levels", "needs at least two levels"});
    if (!std::is_sorted(v->begin(), v->end()) || std::adjacent_find(v->begin(), v->end()) != v->end()) {
        out.push_back({where + ".levels", "must be strictly increasing"});
    }
    return *v;
}

void parse_converge(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const YAML::Node node = root["converge"];
    if (!expect_map(node, "converge", out)) return;
    unknown_keys(node, "converge", {"oracle", "levels", "fine_level"}, out);
    if (auto o = read<std::string>(node, "oracle", "converge", out)) {
        try {
            s.converge.oracle = sde::oracle_kind_from_string(*o);
        } catch (const LookupError& e) {
            out.push_back({"converge.oracle", e.what()});
        }
    }
    s.converge.levels = check_levels(node, "converge", s.converge.levels, out);
    if (auto f = read<std::size_t>(node, "fine_level", "converge", out)) s.converge.fine_level = *f;
}

void parse_uniqueness(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const YAML::Node node = root["uniqueness"];
    if (!expect_map(node, "uniqueness", out)) return;
    unknown_keys(node, "uniqueness", {"levels", "fine_level", "grading", "anchor_level", "replicas", "identical_families"}, out);
    UniquenessSection& u = s.uniqueness;
    u.levels = check_levels(node, "uniqueness", u.levels, out);
    if (auto v = read<std::size_t>(node, "fine_level", "uniqueness", out)) u.fine_level = *v;
    if (auto v = read<double>(node, "grading", "uniqueness", out)) u.grading = *v;
    if (auto v = read<std::size_t>(node, "anchor_level", "uniqueness", out)) u.anchor_level = *v;
    if (auto v = read<std::size_t>(node, "replicas", "uniqueness", out)) u.replicas = *v;
    if (auto v = read<bool>(node, "identical_families", "uniqueness", out)) u.identical_families = *v;
    if (u.replicas == 0) out.push_back({"uniqueness.replicas", "must be at least 1"});
    if (!(u.grading >= 1.0)) out.push_back({"uniqueness.grading", "must be at least 1"});
}

void parse_hoelder(const YAML::Node& root, Scenario& s, Diagnostics& out)
{
    const YAML::Node node = root["hoelder"];
    if (!expect_map(node, "hoelder", out)) return;
    unknown_keys(node, "hoelder", {"source", "paths"}, out);
    if (auto src = read<std::string>(node, "source", "hoelder", out)) {
        if (*src == "fbm") {
            s.hoelder.source = HoelderSource::fbm;
        } else if (*src == "solution") {
            s.hoelder.source = HoelderSource::solution;
        } else {
            out.push_back({"hoelder.source", "expected fbm or solution"});
        }
    }
    if (auto p = read<std::size_t>(node, "paths", "hoelder", out)) s.hoelder.paths = *p;
    if (s.hoelder.paths == 0) out.push_back({"hoelder.paths", "must be at least 1"});
}

/// Checks that depend on which command will run.
void cross_check(Scenario& s, Command command, Diagnostics& out)
{
    switch (command) {
    case Command::gen_noise:
        if (s.noise.method == noise::FbmMethod::circulant && !s.nodes.empty()) {
            out.push_back({"noise.method", "circulant embedding needs a uniform grid"});
        }
        break;
    case Command::solve:
    case Command::audit:
        if (command == Command::audit && s.audit.suite == AuditSuite::estimates && !s.alpha) {
            out.push_back({"alpha", "the estimate audit needs alpha"});
        }
        if (command == Command::audit && s.audit.suite == AuditSuite::estimates && s.alpha) {
            try {
                const auto fbm = sde::coefficient_registry().parse(s.audit.fbm_coeffs);
                const double upper = std::min(0.5, fbm.constants.beta);
                if (!(*s.alpha < upper)) {
                    out.push_back({"alpha", "alpha must stay below min(1/2, beta) = " + format_real(upper) +
                                                " of audit.fbm_coeffs"});
                }
            } catch (const Error&) {
            }
        }
        if (command == Command::audit && s.audit.suite == AuditSuite::gfa1 && !s.alpha) {
            out.push_back({"alpha", "the gfa1 audit needs alpha"});
        }
        if (command == Command::audit && s.audit.suite == AuditSuite::moments && !s.nodes.empty()) {
            out.push_back({"grid.nodes", "the moment audit builds its own uniform grids"});
        }
        break;
    case Command::converge: {
        if (!s.nodes.empty()) out.push_back({"grid.nodes", "convergence studies build their own uniform grids"});
        if (s.converge.levels.back() > s.converge.fine_level) {
            out.push_back({"converge.fine_level", "must be at least the finest level"});
        }
        if (s.converge.levels.size() < 5) {
            out.push_back({"converge.levels", "an order fit needs at least five meshes"});
        }
        if (!s.problem.coeffs.b) break;
        const std::string family = s.problem.coeffs.family;
        if (!s.converge.oracle) {
            for (auto kind : {sde::OracleKind::drift_only, sde::OracleKind::ito_gbm, sde::OracleKind::young_exponential,
                              sde::OracleKind::mixed_exponential}) {
                if (sde::family_for(kind) == family) s.converge.oracle = kind;
            }
            if (!s.converge.oracle) {
                out.push_back({"problem.coefficients", "family '" + family + "' has no closed-form oracle"});
            }
        } else if (sde::family_for(*s.converge.oracle) != family) {
            out.push_back({"converge.oracle", "oracle " + std::string(sde::to_string(*s.converge.oracle)) +
                                                  " needs family " + std::string(sde::family_for(*s.converge.oracle))});
        }
        break;
    }
    case Command::uniqueness:
        if (!s.nodes.empty()) out.push_back({"grid.nodes", "the uniqueness harness builds its own partitions"});
        if (s.uniqueness.levels.back() > s.uniqueness.fine_level) {
            out.push_back({"uniqueness.fine_level", "must be at least the finest level"});
        }
        if (s.uniqueness.anchor_level > s.uniqueness.levels.front()) {
            out.push_back({"uniqueness.anchor_level", "must not exceed the coarsest level"});
        }
        break;
    case Command::hoelder:
        if (!s.nodes.empty()) out.push_back({"grid.nodes", "Hoelder estimation needs a uniform grid"});
        if (s.steps < verify::kHoelderMinSteps) {
            out.push_back({"grid.n", "Hoelder estimation needs at least " + std::to_string(verify::kHoelderMinSteps) +
                                         " steps"});
        }
        break;
    }
}

}  // namespace

std::optional<Command> command_from_string(std::string_view name)
{
    if (name == "gen-noise") return Command::gen_noise;
    if (name == "solve") return Command::solve;
    if (name == "audit") return Command::audit;
    if (name == "converge") return Command::converge;
    if (name == "uniqueness") return Command::uniqueness;
    if (name == "hoelder") return Command::hoelder;
    return std::nullopt;
}

std::string_view to_string(Command command)
{
    switch (command) {
    case Command::gen_noise: return "gen-noise";
    case Command::solve: return "solve";
    case Command::audit: return "audit";
    case Command::converge: return "converge";
    case Command::uniqueness: return "uniqueness";
    case Command::hoelder: return "hoelder";
    }
    return "?";
}

TimeGrid Scenario::grid() const
{
    if (!nodes.empty()) return TimeGrid::from_nodes(nodes);
    return TimeGrid::uniform(problem.horizon, steps);
}

LoadResult parse_scenario(std::string_view yaml, const Overrides& overrides, const std::filesystem::path& source)
{
    LoadResult result;
    Diagnostics& out = result.diagnostics;
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml));
    } catch (const YAML::Exception& e) {
        out.push_back({"", std::string("YAML parse error: ") + e.what()});
        return result;
    }
    if (!root.IsMap()) {
        out.push_back({"", "the config must be a mapping"});
        return result;
    }
    unknown_keys(root, "",
                 {"name", "command", "problem", "grid", "alpha", "seeds", "mc_budget", "outputs", "noise", "solve",
                  "audit", "converge", "uniqueness", "hoelder"},
                 out);

    Scenario s;
    s.source = source;
    s.name = source.empty() ? "scenario" : source.stem().string();
    if (auto name = read<std::string>(root, "name", "", out)) {
        if (name->empty() || name->find_first_of("/\\") != std::string::npos || *name == "." || *name == "..") {
            out.push_back({"name", "must be a non-empty plain file name"});
        } else {
            s.name = *name;
        }
    }
    if (auto cmd = read<std::string>(root, "command", "", out)) {
        s.command = command_from_string(*cmd);
        if (!s.command) out.push_back({"command", "unknown command '" + *cmd + "'"});
    }

    parse_problem(root, s, out);
    parse_grid(root, s, overrides, out);
    s.alpha = read<double>(root, "alpha", "", out);
    if (overrides.alpha) s.alpha = overrides.alpha;
    check_alpha(s, out);

    if (const YAML::Node seeds = root["seeds"]; expect_map(seeds, "seeds", out)) {
        unknown_keys(seeds, "seeds", {"noise", "mc"}, out);
        if (auto v = read<std::uint64_t>(seeds, "noise", "seeds", out)) s.noise_seed = *v;
        if (auto v = read<std::uint64_t>(seeds, "mc", "seeds", out)) s.mc_seed = *v;
    }
    if (overrides.seed) s.noise_seed = *overrides.seed;
    if (auto v = read<std::size_t>(root, "mc_budget", "", out)) s.mc_budget = *v;
    if (s.mc_budget == 0) out.push_back({"mc_budget", "must be at least 1"});
    parse_outputs(root, s, out);

    parse_noise(root, s, out);
    parse_solve(root, s, out);
    parse_audit(root, s, out);
    parse_converge(root, s, out);
    parse_uniqueness(root, s, out);
    parse_hoelder(root, s, out);

    if (s.command) cross_check(s, *s.command, out);

    const char* root_env = std::getenv("FSDE_OUTPUT_ROOT");
    if (root_env && *root_env && !writable_location(root_env)) {
        out.push_back({"FSDE_OUTPUT_ROOT", std::string("output root '") + root_env + "' is not writable"});
    }

    if (out.empty()) result.scenario = std::move(s);
    return result;
}

LoadResult load_scenario(const std::filesystem::path& file, const Overrides& overrides)
{
    std::ifstream in(file);
    if (!std::filesystem::is_regular_file(file) || !in) {
        throw IoError("cannot read config '" + file.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), overrides, file);
}

std::vector<Diagnostic> check_command(Scenario& scenario, Command command)
{
    Diagnostics out;
    if (scenario.command && *scenario.command != command) {
        out.push_back({"command", "config declares " + std::string(to_string(*scenario.command)) + " but " +
                                      std::string(to_string(command)) + " was requested"});
    }
    cross_check(scenario, command, out);
    return out;
}

std::vector<Diagnostic> validate_config(const std::filesystem::path& file)
{
    return load_scenario(file).diagnostics;
}

}  // namespace fsde::cli
