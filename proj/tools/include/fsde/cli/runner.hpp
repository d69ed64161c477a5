#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsde/cli/scenario.hpp"

namespace fsde::cli {

/// Writes artifacts into one directory, each through a temp file and rename.
/// Writes from concurrent studies are serialized.
class ArtifactWriter {
  public:
    explicit ArtifactWriter(std::filesystem::path dir);

    void write(const std::string& name, std::string_view content);
    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }
    [[nodiscard]] std::vector<std::string> written() const;

  private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    std::vector<std::string> written_;
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::string summary;  ///< one line per study
    std::vector<std::filesystem::path> artifacts;
};

/// --out wins, then $FSDE_OUTPUT_ROOT/<name>, then ./fsde-output/<name>.
std::filesystem::path output_directory(const Scenario& scenario, const std::optional<std::filesystem::path>& out_flag);

/// Runs one command on a loaded scenario. Data artifacts depend only on the
/// scenario; wall time and timestamp go to manifest.json alone.
RunOutcome run_scenario(Scenario scenario, Command command, const std::filesystem::path& out_dir);

/// Loads, validates and runs every *.yaml / *.yml in a directory (sorted by
/// name). Each config must declare its command. Results come back in file order.
std::vector<RunOutcome> run_batch(const std::filesystem::path& dir, const Overrides& overrides,
                                  const std::optional<std::filesystem::path>& out_root);

/// The worst exit code of a batch: failures beat validation errors.
int combined_exit_code(const std::vector<RunOutcome>& outcomes);

}  // namespace fsde::cli
