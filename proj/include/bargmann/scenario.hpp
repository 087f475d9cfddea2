#pragma once

// Declarative scenario files (JSON). See docs/scenario-format.md for the
// frozen schema and one complete example per builtin potential.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bargmann/geometry.hpp"
#include "bargmann/symmetry.hpp"

namespace bargmann {

// Malformed file, unknown potential, missing or invalid field. The message
// names the file and the offending field (or line/column for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCheckProjection = "projection";
inline constexpr std::string_view kCheckVertical = "vertical";
inline constexpr std::string_view kCheckConstraint = "constraint";
inline constexpr std::string_view kCheckCharges = "charges";
inline constexpr std::string_view kCheckSymmetries = "symmetries";
inline constexpr std::string_view kCheckQuantum = "quantum";

struct PotentialSpec {
  std::string family = "free";  // free | uniform | harmonic | kepler
  Vec3 g = Vec3::Zero();        // uniform
  double omega = 1.0;           // harmonic
  double k = 1.0;               // kepler
  double softening = 1e-9;      // kepler

  [[nodiscard]] Potential build() const;
};

struct Tolerances {
  double projection = 1e-6;
  double vertical = 1e-7;
  double constraint = 1e-8;
  double charges = 1e-8;
  double symmetries = 1e-9;
  double commutation = 1e-12;
  double quantum = 1e-10;
};

struct Scenario {
  std::string name;
  PotentialSpec potential;
  double mass = 1.0;
  double hbar = 1.0;
  double t0 = 0.0;
  Vec3 r0 = Vec3::Zero();
  Vec3 v0 = Vec3::Zero();
  double s0 = 0.0;
  double dt_step = 1e-3;
  double t_end = 1.0;
  std::vector<std::string> checks;
  Tolerances tolerances;
  std::string output_format = "csv";  // csv | json
  std::string output_path;            // empty: the --output directory
  std::uint64_t seed = 20240601;
  int sample_points = 1000;
  bool plot_data = false;

  [[nodiscard]] BargmannMetric metric() const;
  [[nodiscard]] bool wants(std::string_view check) const;
  // Normalized echo written into reports.
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

// Throws ConfigError; `source` is used in diagnostics.
[[nodiscard]] Scenario parse_scenario(std::string_view text, const std::string& source);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

// Re-run the invariant checks after command-line overrides.
void validate_scenario(const Scenario& scenario, const std::string& source);

// Generators of the Schrodinger algebra that remain conformal symmetries of
// the scenario's metric (all 13 for the free particle).
[[nodiscard]] std::vector<NamedGenerator> applicable_generators(const PotentialSpec& spec);

// Expected conformal factor of a generator: delta + 2 kappa t.
[[nodiscard]] double expected_lambda(const SchrodingerParams& params, const ExtendedPoint& p);

}  // namespace bargmann
