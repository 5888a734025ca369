#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace zsk::verify {

enum class Level { Fast, Full };

// Calibrated on the fixed-seed full run; see README.
inline constexpr double kGoldenDistortionRatio = 5.5;  // distortion / sqrt(ln n), n <= 64
inline constexpr double kGoldenCutGap = 1.05;          // OPT / SDP, n <= 8

struct SuiteConfig {
  Level level = Level::Full;
  std::uint64_t seed = 20240611;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  nlohmann::json measured;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCheckCount = 14;

CheckResult run_check(int id, const SuiteConfig& cfg);
std::vector<CheckResult> run_suite(const SuiteConfig& cfg);

nlohmann::json to_json(const CheckResult& r);
nlohmann::json suite_report(const std::vector<CheckResult>& results, const SuiteConfig& cfg);
// One line: "[PASS] 03 deterministic separation  (1.2 s)  detail".
std::string summary_line(const CheckResult& r);

}  // namespace zsk::verify
