#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fsde/euler.hpp"
#include "fsde/noise.hpp"
#include "fsde/oracle.hpp"

namespace fsde::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitUsage = 64;

enum class Command { gen_noise, solve, audit, converge, uniqueness, hoelder };

std::optional<Command> command_from_string(std::string_view name);
std::string_view to_string(Command command);

/// One problem found in a config, located by its dotted key path.
struct Diagnostic {
    std::string where;
    std::string message;

    [[nodiscard]] std::string str() const { return where.empty() ? message : where + ": " + message; }
};

/// Command-line values that replace config scalars.
struct Overrides {
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
};

struct NoiseSection {
    std::size_t paths = 1;
    noise::FbmMethod method = noise::FbmMethod::automatic;
};

struct SolveSection {
    std::size_t paths = 1;
    bool write_noise = false;
};

enum class AuditSuite { estimates, moments, gfa1 };

struct AuditSection {
    AuditSuite suite = AuditSuite::estimates;
    std::vector<std::string> estimates;   ///< empty: all seven
    bool identical_pairs_only = false;
    std::size_t fbm_paths = 3;
    std::string drift = "affine(b0=0.5, b1=-1, h1=0)";
    std::string fbm_coeffs = "time_hoelder(c=0.5, beta=0.6)";
    std::string ito_coeffs = "affine(w0=0.2, w1=0.5, h1=0)";
    std::map<std::string, double> caps;
    std::vector<std::uint64_t> calibrate_a;  ///< both sets non-empty: calibrate-then-audit
    std::vector<std::uint64_t> calibrate_b;
    double headroom = 2.0;
    std::vector<std::size_t> orders{1, 2};           ///< moments
    std::vector<std::size_t> steps{64, 128, 256};    ///< moments
    std::size_t trials = 10;                         ///< gfa1
    double cap = 1.01;                               ///< gfa1
};

struct ConvergeSection {
    std::optional<sde::OracleKind> oracle;  ///< derived from the coefficient family when absent
    std::vector<std::size_t> levels{5, 6, 7, 8, 9};
    std::size_t fine_level = 12;
};

struct UniquenessSection {
    std::vector<std::size_t> levels{4, 5, 6, 7, 8, 9, 10};
    std::size_t fine_level = 13;
    double grading = 1.5;
    std::size_t anchor_level = 4;
    std::size_t replicas = 8;
    bool identical_families = false;
};

enum class HoelderSource { fbm, solution };

struct HoelderSection {
    HoelderSource source = HoelderSource::fbm;
    std::size_t paths = 1;
};

/// One scenario: a problem, a grid, seeds and per-command settings.
struct Scenario {
    std::string name;
    std::optional<Command> command;
    nlohmann::json coefficients;  ///< {family, params}
    sde::SDEProblem problem;
    double x0_spread = 0.0;
    std::size_t steps = 256;
    std::vector<double> nodes;  ///< explicit partition; empty means uniform with `steps`
    std::optional<double> alpha;
    std::uint64_t noise_seed = 0;
    std::uint64_t mc_seed = 1;
    std::size_t mc_budget = 2000;
    bool write_csv = true;
    bool write_json = true;
    NoiseSection noise;
    SolveSection solve;
    AuditSection audit;
    ConvergeSection converge;
    UniquenessSection uniqueness;
    HoelderSection hoelder;
    std::filesystem::path source;

    [[nodiscard]] TimeGrid grid() const;
};

struct LoadResult {
    std::optional<Scenario> scenario;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return scenario.has_value() && diagnostics.empty(); }
};

/// Parses and validates a YAML scenario, collecting every problem found.
/// Throws IoError when the file does not exist or cannot be read.
LoadResult load_scenario(const std::filesystem::path& file, const Overrides& overrides = {});
LoadResult parse_scenario(std::string_view yaml, const Overrides& overrides = {},
                          const std::filesystem::path& source = {});

/// Checks that depend on the command to run; fills command-dependent defaults.
std::vector<Diagnostic> check_command(Scenario& scenario, Command command);

/// Full schema and cross-reference check; empty when the config is valid.
std::vector<Diagnostic> validate_config(const std::filesystem::path& file);

}  // namespace fsde::cli
