#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fsde/cli/runner.hpp"
#include "fsde/cli/scenario.hpp"
#include "fsde/errors.hpp"

namespace {

using namespace fsde::cli;

struct Flags {
    std::string target;
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<std::string> out;

    [[nodiscard]] Overrides overrides() const { return {n, seed, alpha}; }
    [[nodiscard]] std::optional<std::filesystem::path> out_dir() const
    {
        if (!out) return std::nullopt;
        return std::filesystem::path(*out);
    }
};

void add_run_flags(CLI::App* sub, Flags& flags)
{
    sub->add_option("--n", flags.n, "Number of uniform grid steps (replaces grid)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "Noise seed");
    sub->add_option("--alpha", flags.alpha, "Order alpha");
    sub->add_option("--out", flags.out, "Output directory (default $FSDE_OUTPUT_ROOT/<name>)");
}

int run_one(Command command, const Flags& flags)
{
    LoadResult loaded = load_scenario(flags.target, flags.overrides());
    if (!loaded.ok()) {
        for (const auto& d : loaded.diagnostics) std::cerr << flags.target << ": " << d.str() << '\n';
        return kExitValidation;
    }
    const std::filesystem::path out = output_directory(*loaded.scenario, flags.out_dir());
    const RunOutcome outcome = run_scenario(std::move(*loaded.scenario), command, out);
    (outcome.exit_code == kExitValidation ? std::cerr : std::cout) << outcome.summary;
    return outcome.exit_code;
}

int validate(const std::string& file)
{
    const auto diagnostics = validate_config(file);
    for (const auto& d : diagnostics) std::cout << file << ": " << d.str() << '\n';
    if (diagnostics.empty()) std::cout << file << ": ok\n";
    return diagnostics.empty() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simulate and audit SDEs driven by fractional and standard Brownian motion"};
    app.require_subcommand(1);

    Flags flags;
    std::optional<Command> command;
    for (Command c : {Command::gen_noise, Command::solve, Command::audit, Command::converge, Command::uniqueness,
                      Command::hoelder}) {
        CLI::App* sub = app.add_subcommand(std::string(to_string(c)), "Run the " + std::string(to_string(c)) +
                                                                          " command on a scenario config");
        sub->add_option("config", flags.target, "Scenario YAML file")->required();
        add_run_flags(sub, flags);
        sub->callback([&command, c] { command = c; });
    }
    CLI::App* val = app.add_subcommand("validate", "Check a scenario config and list every problem");
    val->add_option("config", flags.target, "Scenario YAML file")->required();
    CLI::App* batch = app.add_subcommand("batch", "Run every config in a directory");
    batch->add_option("dir", flags.target, "Directory of scenario YAML files")->required();
    add_run_flags(batch, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (val->parsed()) return validate(flags.target);
        if (batch->parsed()) {
            const auto outcomes = run_batch(flags.target, flags.overrides(), flags.out_dir());
            for (const auto& o : outcomes) {
                (o.exit_code == kExitValidation ? std::cerr : std::cout) << o.summary;
            }
            return combined_exit_code(outcomes);
        }
        return run_one(*command, flags);
    } catch (const fsde::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}
