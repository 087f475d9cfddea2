#include "bargmann/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bargmann {

namespace {

bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

bool operator==(const CheckResult& a, const CheckResult& b) {
  return a.name == b.name && a.passed == b.passed && same_number(a.value, b.value) &&
         same_number(a.tolerance, b.tolerance) && same_number(a.runtime_seconds, b.runtime_seconds) &&
         a.detail == b.detail;
}

bool Report::passed() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const CheckResult* Report::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json report_to_json(const Report& report, bool include_timings) {
  nlohmann::ordered_json j;
  j["scenario"] = report.scenario;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.passed ? "pass" : "fail";
    if (std::isfinite(c.value)) {
      cj["value"] = c.value;
    } else {
      cj["value"] = nullptr;
    }
    cj["tolerance"] = c.tolerance;
    if (include_timings) cj["runtime"] = c.runtime_seconds;
    cj["detail"] = c.detail;
    j["checks"].push_back(std::move(cj));
  }
  j["versions"] = report.versions;
  j["seed"] = report.seed;
  return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
  Report r;
  r.scenario = j.at("scenario");
  for (const auto& cj : j.at("checks")) {
    CheckResult c;
    c.name = cj.at("name").get<std::string>();
    const std::string status = cj.at("status").get<std::string>();
    if (status != "pass" && status != "fail") throw std::invalid_argument("bad check status " + status);
    c.passed = status == "pass";
    c.value = cj.at("value").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                       : cj.at("value").get<double>();
    c.tolerance = cj.at("tolerance").get<double>();
    c.runtime_seconds = cj.contains("runtime") ? cj.at("runtime").get<double>() : 0.0;
    c.detail = cj.at("detail").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  r.versions = j.at("versions").get<std::map<std::string, std::string>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

std::string dump_report(const Report& report, bool include_timings) {
  return report_to_json(report, include_timings).dump(2) + "\n";
}

std::map<std::string, std::string> build_versions() {
  return {{"bargmann", "0.1.0"},
          {"report_format", "1"},
          {"compiler", __VERSION__}};
}

}  // namespace bargmann
