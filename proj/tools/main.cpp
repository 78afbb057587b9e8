// scoreforge command line interface. Talks to the core exclusively through the
// shared library's C API.

#include <scoreforge/scoreforge.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

int read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return 0;
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot read " << path << "\n";
    return 64;
  }
  std::ostringstream ss;
  ss << file.rdbuf();
  out = ss.str();
  return 0;
}

struct OptionsDeleter {
  void operator()(scoreforge_options* o) const { scoreforge_options_free(o); }
};
struct ResultDeleter {
  void operator()(scoreforge_result* r) const { scoreforge_result_free(r); }
};

int emit(scoreforge_result* raw) {
  std::unique_ptr<scoreforge_result, ResultDeleter> result(raw);
  if (!result) {
    std::cerr << "error: " << scoreforge_last_error() << "\n";
    return 70;
  }
  std::cout << scoreforge_result_json(result.get()) << "\n";
  return scoreforge_result_exit_code(result.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistency testing of reported binary-classification performance scores"};
  app.set_version_flag("--version", scoreforge_version());
  app.require_subcommand(1);

  std::string input;
  std::string witnesses = "first";
  std::string eps_mode;
  uint64_t budget_nodes = 0;
  uint64_t budget_configs = 0;
  int jobs = 0;
  bool count_configs = false;

  CLI::App* check = app.add_subcommand("check", "Run the consistency tests of a problem document");
  check->add_option("file", input, "problem document (JSON), or - for stdin")->required();
  check->add_option("--witnesses", witnesses, "all | first (default first)")
      ->check(CLI::IsMember({"all", "first"}));
  check->add_option("--eps-mode", eps_mode,
                    "default uncertainty inference: round (10^-k/2) or floor_ceil (10^-k)")
      ->check(CLI::IsMember({"round", "floor_ceil"}));
  check->add_option("--budget-nodes", budget_nodes, "branch-and-bound node budget per solve");
  check->add_option("--budget-configs", budget_configs, "fold-configuration budget per problem");
  check->add_option("--jobs", jobs, "worker threads (default: SCOREFORGE_JOBS or all cores)");
  check->add_flag("--count-configs", count_configs,
                  "enumerate fold configurations only, run no tests");

  std::string validate_input;
  CLI::App* validate = app.add_subcommand("validate", "Schema-check a problem document");
  validate->add_option("file", validate_input, "problem document (JSON), or - for stdin")
      ->required();

  CLI::App* schema = app.add_subcommand("schema", "Print the problem-document JSON schema");

  CLI11_PARSE(app, argc, argv);

  if (schema->parsed()) {
    std::cout << scoreforge_problem_schema_json() << "\n";
    return 0;
  }

  if (validate->parsed()) {
    std::string text;
    if (int rc = read_input(validate_input, text)) return rc;
    scoreforge_result* result = nullptr;
    scoreforge_validate(text.c_str(), &result);
    return emit(result);
  }

  std::string text;
  if (int rc = read_input(input, text)) return rc;

  std::unique_ptr<scoreforge_options, OptionsDeleter> opts(scoreforge_options_new());
  if (!opts) {
    std::cerr << "error: out of memory\n";
    return 70;
  }
  if (witnesses == "all") scoreforge_options_set_witnesses_all(opts.get(), 1);
  if (!eps_mode.empty() &&
      scoreforge_options_set_eps_mode(opts.get(), eps_mode.c_str()) != SCOREFORGE_OK) {
    std::cerr << "error: " << scoreforge_last_error() << "\n";
    return 64;
  }
  if (budget_nodes > 0) scoreforge_options_set_node_budget(opts.get(), budget_nodes);
  if (budget_configs > 0) scoreforge_options_set_config_budget(opts.get(), budget_configs);
  if (jobs > 0) scoreforge_options_set_jobs(opts.get(), jobs);
  if (count_configs) scoreforge_options_set_count_configs(opts.get(), 1);

  scoreforge_result* result = nullptr;
  scoreforge_status status = scoreforge_check(text.c_str(), opts.get(), &result);
  if (status == SCOREFORGE_ERR_PARSE && result) {
    std::cerr << "error: document failed validation; see the error list on stdout\n";
  } else if (status != SCOREFORGE_OK && !result) {
    std::cerr << "error: " << scoreforge_last_error() << "\n";
    return 70;
  }
  return emit(result);
}
