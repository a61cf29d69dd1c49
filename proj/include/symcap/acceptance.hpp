#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace symcap {

struct SuiteCase {
  int criterion = 0;
  std::string name;
  std::string anchor;
  std::string expected;
  std::string actual;
  bool pass = false;
  double seconds = 0;
};

struct SuiteResult {
  std::vector<SuiteCase> cases;
  std::size_t passed() const;
  bool ok() const { return passed() == cases.size(); }
};

/// Runs every acceptance criterion; random sampling uses `seed`.
SuiteResult run_acceptance(unsigned seed);

/// Fixed-width table, one row per case, then a summary line. Timings are
/// left out so the output is reproducible.
std::string render_table(const SuiteResult& r);

using nlohmann::json;
void to_json(json& j, const SuiteResult& r);

}  // namespace symcap
