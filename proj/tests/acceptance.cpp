// One PASS/FAIL line per acceptance criterion at the full sample counts.
// Usage: acceptance [--fast] [--seed N] [--json path]

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>

#include "verify.hpp"

int main(int argc, char** argv) {
  zsk::verify::SuiteConfig cfg;
  const char* json_path = nullptr;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--fast"))
      cfg.level = zsk::verify::Level::Fast;
    else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
      cfg.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (!std::strcmp(argv[i], "--json") && i + 1 < argc)
      json_path = argv[++i];
    else {
      std::cerr << "usage: acceptance [--fast] [--seed N] [--json path]\n";
      return 1;
    }
  }
  std::vector<zsk::verify::CheckResult> results;
  int failed = 0;
  for (int id = 1; id <= zsk::verify::kCheckCount; ++id) {
    results.push_back(zsk::verify::run_check(id, cfg));
    failed += !results.back().pass;
    std::cout << zsk::verify::summary_line(results.back()) << std::endl;
  }
  std::cout << (zsk::verify::kCheckCount - failed) << "/" << zsk::verify::kCheckCount << " criteria passed\n";
  if (json_path) std::ofstream(json_path) << zsk::verify::suite_report(results, cfg).dump(2) << "\n";
  return failed ? 1 : 0;
}
