#include "scoreforge/scoreforge.h"

#include "runner.hpp"

#include <new>
#include <string>

namespace {

thread_local std::string g_last_error;

void set_error(const char* message) { g_last_error = message ? message : ""; }

}  // namespace

struct scoreforge_options {
  scoreforge::RunOptions opts;
};

struct scoreforge_result {
  std::string json;
  int exit_code = 0;
};

extern "C" {

const char* scoreforge_version(void) { return "0.1.0"; }

const char* scoreforge_last_error(void) { return g_last_error.c_str(); }

const char* scoreforge_problem_schema_json(void) { return scoreforge::problem_schema_json(); }

scoreforge_options* scoreforge_options_new(void) { return new (std::nothrow) scoreforge_options(); }

void scoreforge_options_free(scoreforge_options* opts) { delete opts; }

scoreforge_status scoreforge_options_set_witnesses_all(scoreforge_options* opts, int enabled) {
  if (!opts) {
    set_error("options handle is null");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  opts->opts.witnesses_all = enabled != 0;
  return SCOREFORGE_OK;
}

scoreforge_status scoreforge_options_set_eps_mode(scoreforge_options* opts, const char* mode) {
  if (!opts || !mode) {
    set_error("options handle or mode is null");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  std::string m = mode;
  if (m == "round") {
    opts->opts.eps_mode = scoreforge::EpsMode::Round;
  } else if (m == "floor_ceil") {
    opts->opts.eps_mode = scoreforge::EpsMode::FloorCeil;
  } else {
    set_error("eps mode must be \"round\" or \"floor_ceil\"");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  return SCOREFORGE_OK;
}

scoreforge_status scoreforge_options_set_node_budget(scoreforge_options* opts, uint64_t nodes) {
  if (!opts || nodes == 0) {
    set_error("options handle is null or budget is zero");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  opts->opts.node_budget = nodes;
  return SCOREFORGE_OK;
}

scoreforge_status scoreforge_options_set_config_budget(scoreforge_options* opts, uint64_t configs) {
  if (!opts || configs == 0) {
    set_error("options handle is null or budget is zero");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  opts->opts.config_budget = configs;
  return SCOREFORGE_OK;
}

scoreforge_status scoreforge_options_set_jobs(scoreforge_options* opts, int jobs) {
  if (!opts || jobs < 0) {
    set_error("options handle is null or jobs is negative");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  opts->opts.jobs = jobs;
  return SCOREFORGE_OK;
}

scoreforge_status scoreforge_options_set_count_configs(scoreforge_options* opts, int enabled) {
  if (!opts) {
    set_error("options handle is null");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  opts->opts.count_configs = enabled != 0;
  return SCOREFORGE_OK;
}

static scoreforge_status run_impl(const char* problem_json, const scoreforge_options* opts,
                                  scoreforge_result** out, bool validate_only) {
  if (out) *out = nullptr;
  if (!problem_json || !out) {
    set_error("document text or output handle is null");
    return SCOREFORGE_ERR_INVALID_ARGUMENT;
  }
  try {
    scoreforge::RunOptions run_opts = opts ? opts->opts : scoreforge::RunOptions{};
    scoreforge::RunOutcome outcome = validate_only
                                         ? scoreforge::validate_document(problem_json, run_opts)
                                         : scoreforge::run_document(problem_json, run_opts);
    auto* result = new scoreforge_result();
    result->json = outcome.document.dump(2);
    result->exit_code = outcome.exit_code;
    *out = result;
    if (outcome.exit_code == 64) {
      set_error("document failed validation");
      return SCOREFORGE_ERR_PARSE;
    }
    return SCOREFORGE_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SCOREFORGE_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return SCOREFORGE_ERR_INTERNAL;
  }
}

scoreforge_status scoreforge_check(const char* problem_json, const scoreforge_options* opts,
                                   scoreforge_result** out) {
  return run_impl(problem_json, opts, out, false);
}

scoreforge_status scoreforge_validate(const char* problem_json, scoreforge_result** out) {
  return run_impl(problem_json, nullptr, out, true);
}

const char* scoreforge_result_json(const scoreforge_result* result) {
  return result ? result->json.c_str() : "";
}

int scoreforge_result_exit_code(const scoreforge_result* result) {
  return result ? result->exit_code : 64;
}

void scoreforge_result_free(scoreforge_result* result) { delete result; }

}  // extern "C"
