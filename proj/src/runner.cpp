#include "runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

namespace scoreforge {

namespace {

using nlohmann::ordered_json;

ordered_json json_int(const BigInt& v) {
  static const BigInt max = BigInt(1) << 53;
  if (v >= -max && v <= max) return ordered_json(v.convert_to<int64_t>());
  return ordered_json(v.str());
}

const char* status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::Consistent:
      return "consistent";
    case EntryStatus::Inconsistent:
      return "inconsistent";
    case EntryStatus::Indeterminate:
      return "indeterminate";
    case EntryStatus::NotApplicable:
      return "not_applicable";
  }
  return "indeterminate";
}

ordered_json render_single_verdict(const Verdict& v) {
  ordered_json out;
  out["status"] = v.consistent ? "consistent" : "inconsistent";
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : v.witnesses) {
    ordered_json pair;
    pair["tp"] = json_int(w.tp);
    pair["tn"] = json_int(w.tn);
    witnesses.push_back(std::move(pair));
  }
  out["witnesses"] = std::move(witnesses);
  out["witnesses_complete"] = v.witnesses_complete;
  return out;
}

ordered_json render_assumption(const AssumptionVerdict& v) {
  ordered_json out;
  out["status"] = status_name(v.status);
  if (v.som_verdict) {
    ordered_json totals;
    totals["p"] = json_int(v.som_totals_used->p);
    totals["n"] = json_int(v.som_totals_used->n);
    out["totals"] = std::move(totals);
    ordered_json sv = render_single_verdict(*v.som_verdict);
    out["witnesses"] = sv["witnesses"];
    out["witnesses_complete"] = sv["witnesses_complete"];
  } else {
    out["configurations_examined"] = v.configs_examined;
    out["nodes"] = v.nodes;
    if (v.mos_witness) {
      ordered_json folds = ordered_json::array();
      for (size_t i = 0; i < v.mos_witness->folds.size(); ++i) {
        ordered_json fold;
        fold["p"] = v.mos_witness->folds[i].p;
        fold["n"] = v.mos_witness->folds[i].n;
        fold["tp"] = json_int(v.mos_witness->tp[i]);
        fold["tn"] = json_int(v.mos_witness->tn[i]);
        folds.push_back(std::move(fold));
      }
      ordered_json witness;
      witness["folds"] = std::move(folds);
      out["witness"] = std::move(witness);
    }
  }
  if (!v.not_applicable_scores.empty()) {
    ordered_json na = ordered_json::array();
    for (ScoreId id : v.not_applicable_scores) na.push_back(std::string(score_name(id)));
    out["not_applicable_scores"] = std::move(na);
  }
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

struct ProblemOutcome {
  ordered_json entry;
  EntryStatus status = EntryStatus::Indeterminate;
};

ProblemOutcome run_problem(const ParsedProblem& problem, const RunOptions& opts, int sweep_jobs) {
  ProblemOutcome out;
  out.entry["id"] = problem.id;
  const auto start = std::chrono::steady_clock::now();

  SingleOptions single_opts;
  single_opts.enumerate_all = opts.witnesses_all;
  single_opts.jobs = sweep_jobs;

  if (opts.count_configs) {
    out.entry["status"] = "counted";
    ordered_json per_dataset = ordered_json::array();
    BigInt total = 1;
    if (problem.kind == ParsedProblem::Kind::Aggregated &&
        problem.aggregated.spec.folding == ExperimentSpec::Folding::Unknown) {
      const auto& spec = problem.aggregated.spec;
      for (const auto& ds : spec.datasets) {
        uint64_t count = count_configurations(ds.p, ds.n, spec.k);
        per_dataset.push_back(count);
        total *= count;
      }
      BigInt bundles = 1;
      for (int r = 0; r < spec.repeats; ++r) bundles *= total;
      out.entry["configurations_per_dataset"] = std::move(per_dataset);
      out.entry["candidate_bundles"] = json_int(bundles);
    } else {
      out.entry["configurations_per_dataset"] = ordered_json::array({1});
      out.entry["candidate_bundles"] = 1;
    }
    out.status = EntryStatus::Consistent;  // counting carries no verdict
  } else if (problem.kind == ParsedProblem::Kind::Single) {
    Verdict v = test_single(problem.single, single_opts);
    out.entry["status"] = v.consistent ? "consistent" : "inconsistent";
    out.entry["verdicts"]["single"] = render_single_verdict(v);
    out.status = v.consistent ? EntryStatus::Consistent : EntryStatus::Inconsistent;
  } else {
    AggregatedOptions agg_opts;
    agg_opts.node_budget = opts.node_budget;
    agg_opts.config_budget = opts.config_budget;
    agg_opts.jobs = sweep_jobs;
    agg_opts.single = single_opts;
    AggregatedVerdict v = test_aggregated(problem.aggregated, agg_opts);
    out.status = v.overall();
    out.entry["status"] = status_name(out.status);
    ordered_json verdicts;
    if (v.mos) verdicts["mos"] = render_assumption(*v.mos);
    if (v.som) verdicts["som"] = render_assumption(*v.som);
    out.entry["verdicts"] = std::move(verdicts);
  }

  const auto elapsed = std::chrono::steady_clock::now() - start;
  out.entry["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return out;
}

RunOutcome validation_failure(const std::vector<ValidationIssue>& issues) {
  RunOutcome out;
  out.exit_code = 64;
  out.document["schema_version"] = "1.0";
  out.document["status"] = "invalid";
  ordered_json errors = ordered_json::array();
  for (const auto& issue : issues) {
    ordered_json e;
    e["path"] = issue.path;
    e["message"] = issue.message;
    if (issue.suggestion) e["suggestion"] = *issue.suggestion;
    errors.push_back(std::move(e));
  }
  out.document["errors"] = std::move(errors);
  return out;
}

}  // namespace

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SCOREFORGE_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

RunOutcome validate_document(const std::string& json_text, const RunOptions& opts) {
  ParseOptions popts{opts.eps_mode};
  ParseOutcome parsed = parse_problem_document(json_text, popts);
  if (!parsed.document) return validation_failure(parsed.issues);
  RunOutcome out;
  out.exit_code = 0;
  out.document["schema_version"] = "1.0";
  out.document["status"] = "valid";
  out.document["problems"] = parsed.document->problems.size();
  return out;
}

RunOutcome run_document(const std::string& json_text, const RunOptions& opts) {
  ParseOptions popts{opts.eps_mode};
  ParseOutcome parsed = parse_problem_document(json_text, popts);
  if (!parsed.document) return validation_failure(parsed.issues);

  const auto& problems = parsed.document->problems;
  const int jobs = resolve_jobs(opts.jobs);
  // One batch of problems shares the worker budget: parallelize across
  // problems when there are several, inside the configuration sweep otherwise.
  const int problem_workers = std::min<int>(jobs, static_cast<int>(problems.size()));
  const int sweep_jobs = problems.size() == 1 ? jobs : 1;

  std::vector<ProblemOutcome> outcomes(problems.size());
  auto run_one = [&](size_t i) {
    try {
      outcomes[i] = run_problem(problems[i], opts, sweep_jobs);
    } catch (const std::exception& e) {
      outcomes[i].entry = ordered_json();
      outcomes[i].entry["id"] = problems[i].id;
      outcomes[i].entry["status"] = "indeterminate";
      outcomes[i].entry["note"] = std::string("problem failed: ") + e.what();
      outcomes[i].status = EntryStatus::Indeterminate;
    }
  };

  if (problem_workers <= 1) {
    for (size_t i = 0; i < problems.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t i = next.fetch_add(1); i < problems.size(); i = next.fetch_add(1)) run_one(i);
    };
    std::vector<std::thread> pool;
    pool.reserve(problem_workers);
    for (int t = 0; t < problem_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  bool any_inconsistent = false, any_indeterminate = false;
  RunOutcome out;
  out.document["schema_version"] = "1.0";
  ordered_json entries = ordered_json::array();
  for (const auto& o : outcomes) {
    if (o.status == EntryStatus::Inconsistent) any_inconsistent = true;
    if (o.status == EntryStatus::Indeterminate || o.status == EntryStatus::NotApplicable)
      any_indeterminate = true;
    entries.push_back(o.entry);
  }

  std::string status = "consistent";
  out.exit_code = 0;
  if (any_inconsistent) {
    status = "inconsistent";
    out.exit_code = 1;
  } else if (any_indeterminate) {
    status = "indeterminate";
    out.exit_code = 2;
  }
  if (opts.count_configs) {
    status = "counted";
    out.exit_code = 0;
  }
  out.document["status"] = status;
  out.document["exit_code"] = out.exit_code;
  out.document["problems"] = std::move(entries);
  return out;
}

}  // namespace scoreforge
