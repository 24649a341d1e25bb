#pragma once

// Named, runnable checks: each registry id runs one computation at a bound
// and compares what it finds against the expected set.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nusq/arith.hpp"

namespace nusq {

struct RunConfig {
  u64 max_bound = 0;  // 0: the check's default bound
  unsigned threads = 1;
  u64 seed = 1;
  std::optional<u64> prime;  // restricts prop-2.3 to one prime
};

struct VerifyCase {
  std::string label;
  nlohmann::json expected = nlohmann::json::array();
  nlohmann::json found = nlohmann::json::array();
  bool pass = false;
};

struct VerifyReport {
  std::string id;
  std::string description;
  u64 max_bound = 0;
  std::vector<VerifyCase> cases;
  bool pass = false;
  double elapsed_ms = 0.0;

  nlohmann::json to_json(bool with_timing = true) const;
  std::string to_text(bool with_timing = true) const;
  std::string to_csv() const;
  static std::string csv_header();
};

struct TheoremCheck {
  std::string id;
  std::string description;
  u64 default_max = 0;
  std::function<std::vector<VerifyCase>(const RunConfig&, u64 max_bound)> run;
};

const std::vector<TheoremCheck>& theorem_registry();
// Throws std::invalid_argument for an unknown id.
const TheoremCheck& find_check(const std::string& id);
VerifyReport run_verify(const std::string& id, const RunConfig& cfg);

}  // namespace nusq
