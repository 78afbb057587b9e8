#pragma once

#include "problem_io.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace scoreforge {

struct RunOptions {
  bool witnesses_all = false;
  std::optional<EpsMode> eps_mode;  // CLI-level default; a problem's own eps_mode wins
  uint64_t node_budget = 1'000'000;
  uint64_t config_budget = 10'000'000;
  int jobs = 0;  // 0: SCOREFORGE_JOBS environment variable, else hardware threads
  bool count_configs = false;
};

struct RunOutcome {
  nlohmann::ordered_json document;
  int exit_code = 0;  // 0 consistent, 1 inconsistent, 2 indeterminate, 64 input error
};

// Parse, validate and run a problem document; problems run concurrently with
// per-problem isolation and the output preserves input order.
RunOutcome run_document(const std::string& json_text, const RunOptions& opts = {});

// Schema validation only.
RunOutcome validate_document(const std::string& json_text, const RunOptions& opts = {});

int resolve_jobs(int requested);

}  // namespace scoreforge
