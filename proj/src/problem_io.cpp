#include "problem_io.hpp"

#include "schema_embed.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace scoreforge {

namespace {

using nlohmann::json;

struct Ctx {
  std::vector<ValidationIssue>& issues;
  void error(std::string path, std::string message, std::optional<std::string> suggestion = {}) {
    issues.push_back({std::move(path), std::move(message), std::move(suggestion)});
  }
};

// Exact rational from a JSON value: strings are parsed verbatim; numbers are
// re-rendered with the shortest round-trip representation first, so "0.0001"
// written as a JSON number still becomes 1/10000 exactly.
std::optional<ParsedDecimal> decimal_from(const json& v) {
  if (v.is_string()) return parse_decimal(v.get<std::string>());
  if (v.is_number_integer()) return parse_decimal(std::to_string(v.get<long long>()));
  if (v.is_number_float()) return parse_decimal(json(v.get<double>()).dump());
  return std::nullopt;
}

std::optional<long long> positive_int_from(const json& v) {
  if (!v.is_number_integer()) return std::nullopt;
  long long x = v.get<long long>();
  if (x < 1) return std::nullopt;
  return x;
}

std::vector<ExperimentSpec::Dataset> parse_datasets(const json& problem, const std::string& base,
                                                    Ctx& ctx) {
  std::vector<ExperimentSpec::Dataset> out;
  const bool has_testset = problem.contains("testset");
  const bool has_datasets = problem.contains("datasets");
  if (has_testset == has_datasets) {
    ctx.error(base, "exactly one of \"testset\" and \"datasets\" is required");
    return out;
  }
  auto read_one = [&](const json& ds, const std::string& path) {
    if (!ds.is_object() || !ds.contains("p") || !ds.contains("n")) {
      ctx.error(path, "expected an object with positive integers \"p\" and \"n\"");
      return;
    }
    auto p = positive_int_from(ds["p"]);
    auto n = positive_int_from(ds["n"]);
    if (!p) ctx.error(path + "/p", "expected a positive integer");
    if (!n) ctx.error(path + "/n", "expected a positive integer");
    if (p && n) out.push_back({*p, *n});
  };
  if (has_testset) {
    read_one(problem["testset"], base + "/testset");
  } else {
    const json& arr = problem["datasets"];
    if (!arr.is_array() || arr.empty()) {
      ctx.error(base + "/datasets", "expected a non-empty array");
      return out;
    }
    for (size_t i = 0; i < arr.size(); ++i)
      read_one(arr[i], base + "/datasets/" + std::to_string(i));
  }
  return out;
}

std::vector<ReportedScore> parse_scores(const json& problem, const std::string& base,
                                        std::optional<Rational> explicit_eps, EpsMode mode,
                                        bool& uses_f1, Ctx& ctx) {
  std::vector<ReportedScore> out;
  if (!problem.contains("scores") || !problem["scores"].is_object() ||
      problem["scores"].empty()) {
    ctx.error(base + "/scores", "expected a non-empty object mapping score names to decimal strings");
    return out;
  }
  const auto& reg = ScoreRegistry::builtin();
  std::set<ScoreId> seen;
  for (const auto& [name, value] : problem["scores"].items()) {
    const std::string path = base + "/scores/" + name;
    const ScoreDefinition* def = reg.find(name);
    if (!def) {
      ctx.error(path, "unknown score name \"" + name + "\"", reg.suggest(name));
      continue;
    }
    if (name == "f1") uses_f1 = true;
    if (!seen.insert(def->id).second) {
      ctx.error(path, "score \"" + std::string(def->name) + "\" reported twice (alias collision)");
      continue;
    }
    const json* value_field = &value;
    std::optional<Rational> score_eps = explicit_eps;
    if (value.is_object()) {
      if (!value.contains("value")) {
        ctx.error(path, "object form requires a \"value\" field");
        continue;
      }
      value_field = &value["value"];
      if (value.contains("eps")) {
        auto eps_parsed = decimal_from(value["eps"]);
        if (!eps_parsed || eps_parsed->value <= 0) {
          ctx.error(path + "/eps", "expected a positive decimal");
          continue;
        }
        score_eps = eps_parsed->value;
      }
    }
    if (!value_field->is_string()) {
      ctx.error(path, "score values must be decimal strings to preserve exactness");
      continue;
    }
    auto parsed = parse_decimal(value_field->get<std::string>());
    if (!parsed) {
      ctx.error(path, "not a decimal literal: \"" + value_field->get<std::string>() + "\"");
      continue;
    }
    ReportedScore rs;
    rs.id = def->id;
    rs.value = parsed->value;
    rs.eps = score_eps ? *score_eps
                       : (mode == EpsMode::Round ? pow10(-parsed->decimals) / 2
                                                 : pow10(-parsed->decimals));
    out.push_back(std::move(rs));
  }
  return out;
}

void parse_params(const json& problem, const std::string& base, ScoreParams& params, Ctx& ctx) {
  if (!problem.contains("params")) return;
  const json& prm = problem["params"];
  if (!prm.is_object()) {
    ctx.error(base + "/params", "expected an object");
    return;
  }
  auto read_beta = [&](const char* key, Rational& slot) {
    if (!prm.contains(key)) return;
    auto parsed = decimal_from(prm[key]);
    if (!parsed || parsed->value <= 0) {
      ctx.error(base + "/params/" + key, "expected a positive decimal");
      return;
    }
    slot = parsed->value;
  };
  read_beta("beta_plus", params.beta_plus);
  read_beta("beta_minus", params.beta_minus);
}

void parse_fold_extremes(const json& problem, const std::string& base,
                         std::optional<Rational> explicit_eps, EpsMode mode,
                         std::map<ScoreId, FoldExtremes>& out, Ctx& ctx) {
  if (!problem.contains("fold_score_extremes")) return;
  const json& fx = problem["fold_score_extremes"];
  if (!fx.is_object()) {
    ctx.error(base + "/fold_score_extremes", "expected an object");
    return;
  }
  const auto& reg = ScoreRegistry::builtin();
  for (const auto& [name, value] : fx.items()) {
    const std::string path = base + "/fold_score_extremes/" + name;
    const ScoreDefinition* def = reg.find(name);
    if (!def) {
      ctx.error(path, "unknown score name \"" + name + "\"", reg.suggest(name));
      continue;
    }
    if (!value.is_object() || !value.contains("min") || !value.contains("max")) {
      ctx.error(path, "expected an object with \"min\" and \"max\" decimal strings");
      continue;
    }
    std::optional<ParsedDecimal> lo, hi;
    if (value["min"].is_string()) lo = parse_decimal(value["min"].get<std::string>());
    if (value["max"].is_string()) hi = parse_decimal(value["max"].get<std::string>());
    if (!lo || !hi) {
      ctx.error(path, "\"min\" and \"max\" must be decimal strings");
      continue;
    }
    if (lo->value > hi->value) {
      ctx.error(path, "min exceeds max");
      continue;
    }
    FoldExtremes ex;
    ex.min_value = lo->value;
    ex.max_value = hi->value;
    std::optional<Rational> entry_eps = explicit_eps;
    if (value.contains("eps")) {
      auto eps_parsed = decimal_from(value["eps"]);
      if (!eps_parsed || eps_parsed->value <= 0) {
        ctx.error(path + "/eps", "expected a positive decimal");
        continue;
      }
      entry_eps = eps_parsed->value;
    }
    ex.eps = entry_eps ? *entry_eps
                       : (mode == EpsMode::Round
                              ? pow10(-std::max(lo->decimals, hi->decimals)) / 2
                              : pow10(-std::max(lo->decimals, hi->decimals)));
    out[def->id] = ex;
  }
}

void parse_problem(const json& p, const std::string& base, const ParseOptions& opts,
                   ParsedProblem& out, Ctx& ctx) {
  if (!p.is_object()) {
    ctx.error(base, "expected an object");
    return;
  }
  if (!p.contains("id") || !p["id"].is_string() || p["id"].get<std::string>().empty()) {
    ctx.error(base + "/id", "expected a non-empty string");
  } else {
    out.id = p["id"].get<std::string>();
  }

  static const std::set<std::string> known_keys = {
      "id",     "testset",   "datasets", "folding",             "aggregation",
      "scores", "eps",       "eps_mode", "fold_score_extremes", "params"};
  for (const auto& [key, _] : p.items()) {
    if (!known_keys.count(key)) ctx.error(base + "/" + key, "unknown field");
  }

  auto datasets = parse_datasets(p, base, ctx);

  std::optional<Rational> explicit_eps;
  if (p.contains("eps")) {
    auto parsed = decimal_from(p["eps"]);
    if (!parsed || parsed->value <= 0) {
      ctx.error(base + "/eps", "expected a positive decimal");
    } else {
      explicit_eps = parsed->value;
    }
  }

  EpsMode mode = opts.eps_mode_override.value_or(EpsMode::FloorCeil);
  if (p.contains("eps_mode")) {
    std::string m = p["eps_mode"].is_string() ? p["eps_mode"].get<std::string>() : "";
    if (m == "round") {
      mode = EpsMode::Round;
    } else if (m == "floor_ceil") {
      mode = EpsMode::FloorCeil;
    } else {
      ctx.error(base + "/eps_mode", "expected \"round\" or \"floor_ceil\"");
    }
  }

  ScoreParams params;
  parse_params(p, base, params, ctx);
  bool uses_f1 = false;
  auto scores = parse_scores(p, base, explicit_eps, mode, uses_f1, ctx);
  if (uses_f1 && params.beta_plus != 1)
    ctx.error(base + "/scores/f1", "\"f1\" presumes beta_plus = 1; report \"fbp\" instead");

  // Folding.
  bool has_folding = p.contains("folding");
  ExperimentSpec spec;
  spec.datasets = datasets;
  if (has_folding) {
    const json& f = p["folding"];
    if (!f.is_object()) {
      ctx.error(base + "/folding", "expected an object");
      has_folding = false;
    } else {
      std::string strategy =
          f.contains("strategy") && f["strategy"].is_string() ? f["strategy"].get<std::string>() : "";
      if (strategy == "explicit") {
        spec.folding = ExperimentSpec::Folding::Explicit;
      } else if (strategy == "stratified") {
        spec.folding = ExperimentSpec::Folding::Stratified;
      } else if (strategy == "unknown") {
        spec.folding = ExperimentSpec::Folding::Unknown;
      } else {
        ctx.error(base + "/folding/strategy",
                  "expected \"explicit\", \"stratified\" or \"unknown\"");
      }
      if (f.contains("repeats")) {
        auto r = positive_int_from(f["repeats"]);
        if (!r) {
          ctx.error(base + "/folding/repeats", "expected a positive integer");
        } else {
          spec.repeats = static_cast<int>(*r);
        }
      }
      if (f.contains("k")) {
        auto k = positive_int_from(f["k"]);
        if (!k || *k < 2) {
          ctx.error(base + "/folding/k", "expected an integer >= 2");
        } else {
          spec.k = static_cast<int>(*k);
        }
      }
      if (spec.folding == ExperimentSpec::Folding::Explicit) {
        if (!f.contains("folds") || !f["folds"].is_array() || f["folds"].empty()) {
          ctx.error(base + "/folding/folds", "explicit folding requires a non-empty fold list");
        } else {
          long long sum_p = 0, sum_n = 0;
          for (size_t i = 0; i < f["folds"].size(); ++i) {
            const json& fold = f["folds"][i];
            const std::string fpath = base + "/folding/folds/" + std::to_string(i);
            if (!fold.is_object() || !fold.contains("p") || !fold.contains("n") ||
                !fold["p"].is_number_integer() || !fold["n"].is_number_integer()) {
              ctx.error(fpath, "expected an object with integer \"p\" and \"n\"");
              continue;
            }
            long long fp = fold["p"].get<long long>();
            long long fn = fold["n"].get<long long>();
            if (fp < 0 || fn < 0 || fp + fn == 0) {
              ctx.error(fpath, "fold counts must be nonnegative and not both zero");
              continue;
            }
            spec.explicit_folds.push_back({fp, fn});
            sum_p += fp;
            sum_n += fn;
          }
          long long dp = 0, dn = 0;
          for (const auto& ds : datasets) {
            dp += ds.p;
            dn += ds.n;
          }
          if (!datasets.empty() && (sum_p != dp || sum_n != dn))
            ctx.error(base + "/folding/folds",
                      "fold counts must sum to the dataset totals (" + std::to_string(dp) + ", " +
                          std::to_string(dn) + ")");
          if (spec.k != 0 &&
              spec.explicit_folds.size() != static_cast<size_t>(spec.k) * std::max<size_t>(datasets.size(), 1))
            ctx.error(base + "/folding/k", "k does not match the number of explicit folds");
        }
      } else if (spec.k == 0) {
        ctx.error(base + "/folding/k", "stratified and unknown folding require \"k\"");
      }
    }
  }

  // Aggregation.
  std::optional<Aggregation> aggregation;
  if (p.contains("aggregation")) {
    std::string a = p["aggregation"].is_string() ? p["aggregation"].get<std::string>() : "";
    if (a == "mos") {
      aggregation = Aggregation::MoS;
    } else if (a == "som") {
      aggregation = Aggregation::SoM;
    } else if (a == "unknown") {
      aggregation = Aggregation::Unknown;
    } else {
      ctx.error(base + "/aggregation", "expected \"mos\", \"som\" or \"unknown\"");
    }
  } else if (has_folding || datasets.size() > 1) {
    aggregation = Aggregation::Unknown;
  }

  std::map<ScoreId, FoldExtremes> extremes;
  parse_fold_extremes(p, base, explicit_eps, mode, extremes, ctx);
  if (!extremes.empty() && !aggregation)
    ctx.error(base + "/fold_score_extremes", "fold extremes require an aggregated problem");

  if (!aggregation) {
    out.kind = ParsedProblem::Kind::Single;
    if (datasets.size() == 1) {
      out.single.p = datasets[0].p;
      out.single.n = datasets[0].n;
    }
    out.single.scores = scores;
    out.single.params = params;
    return;
  }

  out.kind = ParsedProblem::Kind::Aggregated;
  if (!has_folding) {
    // The datasets themselves are the evaluation sets.
    spec.folding = ExperimentSpec::Folding::Explicit;
    for (const auto& ds : datasets) spec.explicit_folds.push_back({ds.p, ds.n});
  }
  out.aggregated.spec = spec;
  out.aggregated.scores = scores;
  out.aggregated.aggregation = *aggregation;
  out.aggregated.fold_extremes = extremes;
  out.aggregated.params = params;
}

}  // namespace

ParseOutcome parse_problem_document(const std::string& json_text, const ParseOptions& opts) {
  ParseOutcome outcome;
  Ctx ctx{outcome.issues};

  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) {
    ctx.error("", "not valid JSON");
    return outcome;
  }
  if (!doc.is_object()) {
    ctx.error("", "expected a JSON object");
    return outcome;
  }
  ProblemDocument parsed;
  if (!doc.contains("schema_version") || !doc["schema_version"].is_string()) {
    ctx.error("/schema_version", "expected a string");
  } else {
    parsed.schema_version = doc["schema_version"].get<std::string>();
    if (parsed.schema_version != "1.0")
      ctx.error("/schema_version", "unsupported schema version \"" + parsed.schema_version + "\"");
  }
  if (!doc.contains("problems") || !doc["problems"].is_array() || doc["problems"].empty()) {
    ctx.error("/problems", "expected a non-empty array");
    return outcome;
  }

  std::set<std::string> ids;
  for (size_t i = 0; i < doc["problems"].size(); ++i) {
    const std::string base = "/problems/" + std::to_string(i);
    ParsedProblem problem;
    problem.id = "problem-" + std::to_string(i);
    parse_problem(doc["problems"][i], base, opts, problem, ctx);
    if (!ids.insert(problem.id).second) ctx.error(base + "/id", "duplicate problem id");
    parsed.problems.push_back(std::move(problem));
  }

  if (outcome.issues.empty()) outcome.document = std::move(parsed);
  return outcome;
}

namespace {

std::string exact_decimal_or_throw(const Rational& r) {
  auto s = rat_to_exact_decimal(r);
  if (!s) throw std::logic_error("value has no finite decimal form: " + rat_to_string(r));
  return *s;
}

nlohmann::ordered_json serialize_scores(const std::vector<ReportedScore>& scores) {
  nlohmann::ordered_json out;
  for (const auto& s : scores) {
    nlohmann::ordered_json entry;
    entry["value"] = exact_decimal_or_throw(s.value);
    entry["eps"] = exact_decimal_or_throw(s.eps);
    out[std::string(score_name(s.id))] = std::move(entry);
  }
  return out;
}

nlohmann::ordered_json serialize_params(const ScoreParams& params) {
  nlohmann::ordered_json out;
  if (params.beta_plus != 1) out["beta_plus"] = exact_decimal_or_throw(params.beta_plus);
  if (params.beta_minus != 1) out["beta_minus"] = exact_decimal_or_throw(params.beta_minus);
  return out;
}

}  // namespace

nlohmann::ordered_json serialize_problem_document(const ProblemDocument& doc) {
  nlohmann::ordered_json out;
  out["schema_version"] = doc.schema_version.empty() ? "1.0" : doc.schema_version;
  nlohmann::ordered_json problems = nlohmann::ordered_json::array();
  for (const auto& problem : doc.problems) {
    nlohmann::ordered_json p;
    p["id"] = problem.id;
    if (problem.kind == ParsedProblem::Kind::Single) {
      p["testset"] = {{"p", problem.single.p.convert_to<long long>()},
                      {"n", problem.single.n.convert_to<long long>()}};
      p["scores"] = serialize_scores(problem.single.scores);
      nlohmann::ordered_json params = serialize_params(problem.single.params);
      if (!params.empty()) p["params"] = std::move(params);
    } else {
      const AggregatedProblem& agg = problem.aggregated;
      if (agg.spec.datasets.size() == 1) {
        p["testset"] = {{"p", agg.spec.datasets[0].p}, {"n", agg.spec.datasets[0].n}};
      } else {
        nlohmann::ordered_json ds = nlohmann::ordered_json::array();
        for (const auto& d : agg.spec.datasets) ds.push_back({{"p", d.p}, {"n", d.n}});
        p["datasets"] = std::move(ds);
      }
      nlohmann::ordered_json folding;
      switch (agg.spec.folding) {
        case ExperimentSpec::Folding::Explicit: {
          folding["strategy"] = "explicit";
          nlohmann::ordered_json folds = nlohmann::ordered_json::array();
          for (const auto& f : agg.spec.explicit_folds)
            folds.push_back({{"p", f.p}, {"n", f.n}});
          folding["folds"] = std::move(folds);
          break;
        }
        case ExperimentSpec::Folding::Stratified:
          folding["strategy"] = "stratified";
          break;
        case ExperimentSpec::Folding::Unknown:
          folding["strategy"] = "unknown";
          break;
      }
      if (agg.spec.k != 0) folding["k"] = agg.spec.k;
      if (agg.spec.repeats != 1) folding["repeats"] = agg.spec.repeats;
      p["folding"] = std::move(folding);
      switch (agg.aggregation) {
        case Aggregation::MoS:
          p["aggregation"] = "mos";
          break;
        case Aggregation::SoM:
          p["aggregation"] = "som";
          break;
        case Aggregation::Unknown:
          p["aggregation"] = "unknown";
          break;
      }
      p["scores"] = serialize_scores(agg.scores);
      if (!agg.fold_extremes.empty()) {
        nlohmann::ordered_json fx;
        for (const auto& [id, ex] : agg.fold_extremes) {
          nlohmann::ordered_json entry;
          entry["min"] = exact_decimal_or_throw(ex.min_value);
          entry["max"] = exact_decimal_or_throw(ex.max_value);
          entry["eps"] = exact_decimal_or_throw(ex.eps);
          fx[std::string(score_name(id))] = std::move(entry);
        }
        p["fold_score_extremes"] = std::move(fx);
      }
      nlohmann::ordered_json params = serialize_params(agg.params);
      if (!params.empty()) p["params"] = std::move(params);
    }
    problems.push_back(std::move(p));
  }
  out["problems"] = std::move(problems);
  return out;
}

const char* problem_schema_json() { return kProblemSchemaJson; }

}  // namespace scoreforge
