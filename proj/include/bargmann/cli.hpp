#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bargmann/dynamics.hpp"
#include "bargmann/report.hpp"
#include "bargmann/scenario.hpp"

namespace bargmann {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kSimulate, kCheckSymmetries, kCheckQuantum, kCheckAll };

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::string> format;
  std::optional<double> dt;
  std::optional<double> t_end;
  bool plot_data = false;
  bool timings = false;
};

struct ChargeSeries {
  std::string name;
  std::vector<double> values;
};

struct ScenarioRun {
  Scenario scenario;
  Report report;
  // Present for simulate/check-all; may be a partial trajectory after a
  // non-finite state.
  std::optional<Trajectory> trajectory;
  std::vector<ChargeSeries> charges;
};

// Applies command-line overrides and re-validates. Throws ConfigError.
[[nodiscard]] Scenario apply_overrides(Scenario scenario, const RunOptions& options);

// Executes the checks the command selects. Numerical failures (including a
// non-finite trajectory) become failed checks, never exceptions.
[[nodiscard]] ScenarioRun run_scenario(const Scenario& scenario, Command command);

// Header t,x,y,z,s,dx,dy,dz,ds,h0; 17 significant digits; "\n" line ends.
[[nodiscard]] std::string trajectory_csv(const Trajectory& traj);
[[nodiscard]] std::string trajectory_json(const Trajectory& traj);
// Header t,<name>.
[[nodiscard]] std::string charge_csv(const Trajectory& traj, const ChargeSeries& series);

// Writes trajectory, report and (optionally) charge series files; returns
// the paths written. Throws IoError with the offending path.
std::vector<std::filesystem::path> emit_outputs(const ScenarioRun& run,
                                                const std::filesystem::path& directory,
                                                const RunOptions& options);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace bargmann
