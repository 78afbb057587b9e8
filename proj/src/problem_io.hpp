#pragma once

#include "mos_test.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace scoreforge {

enum class EpsMode { FloorCeil, Round };

struct ValidationIssue {
  std::string path;  // JSON pointer
  std::string message;
  std::optional<std::string> suggestion;
};

struct ParsedProblem {
  enum class Kind { Single, Aggregated };
  std::string id;
  Kind kind = Kind::Single;
  SingleProblem single;
  AggregatedProblem aggregated;
};

struct ProblemDocument {
  std::string schema_version;
  std::vector<ParsedProblem> problems;
};

struct ParseOptions {
  // Default numerical-uncertainty mode when a problem does not set eps_mode:
  // FloorCeil infers eps = 10^-k from k reported decimals, Round 10^-k / 2.
  std::optional<EpsMode> eps_mode_override;
};

struct ParseOutcome {
  std::optional<ProblemDocument> document;  // set iff issues is empty
  std::vector<ValidationIssue> issues;
};

ParseOutcome parse_problem_document(const std::string& json_text, const ParseOptions& opts = {});

// Canonical re-serialization: score values in object form with their resolved
// uncertainties spelled out, so parse -> serialize is idempotent.
nlohmann::ordered_json serialize_problem_document(const ProblemDocument& doc);

// The JSON schema shipped at schema/problem.v1.json, embedded at build time.
const char* problem_schema_json();

}  // namespace scoreforge
