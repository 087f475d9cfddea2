#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace bargmann {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;  // NaN when the check could not produce a number
  double tolerance = 0.0;
  double runtime_seconds = 0.0;
  std::string detail;

  friend bool operator==(const CheckResult& a, const CheckResult& b);
};

struct Report {
  nlohmann::ordered_json scenario;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> versions;
  std::uint64_t seed = 0;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] const CheckResult* find(const std::string& name) const;

  friend bool operator==(const Report& a, const Report& b) = default;
};

// Keys: scenario, checks[], versions, seed. Runtimes are wall-clock and
// therefore only serialized when include_timings is set, so that reports of
// identical runs are byte-identical by default.
[[nodiscard]] nlohmann::ordered_json report_to_json(const Report& report, bool include_timings = false);
[[nodiscard]] Report report_from_json(const nlohmann::ordered_json& j);

[[nodiscard]] std::string dump_report(const Report& report, bool include_timings = false);

// Static build identification recorded under "versions".
[[nodiscard]] std::map<std::string, std::string> build_versions();

}  // namespace bargmann
