#pragma once

#include "interval.hpp"
#include "rational.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scoreforge {

// The score does not exist for the given confusion matrix (a denominator of
// its defining form vanishes).
struct UndefinedScoreError : std::runtime_error {
  explicit UndefinedScoreError(const std::string& which)
      : std::runtime_error("score undefined for this confusion matrix: " + which) {}
};

enum class ScoreId {
  acc,
  sens,
  spec,
  ppv,
  npv,
  fbp,
  fbn,
  upm,
  gm,
  fm,
  mk,
  bm,
  mcc,
  lrp,
  lrn,
  pt,
  dor,
  ji,
  bacc,
  kappa,
};

inline constexpr int kScoreCount = 20;
inline constexpr std::array<ScoreId, kScoreCount> kAllScores = {
    ScoreId::acc, ScoreId::sens, ScoreId::spec, ScoreId::ppv,  ScoreId::npv,
    ScoreId::fbp, ScoreId::fbn,  ScoreId::upm,  ScoreId::gm,   ScoreId::fm,
    ScoreId::mk,  ScoreId::bm,   ScoreId::mcc,  ScoreId::lrp,  ScoreId::lrn,
    ScoreId::pt,  ScoreId::dor,  ScoreId::ji,   ScoreId::bacc, ScoreId::kappa,
};

struct ScoreParams {
  Rational beta_plus{1};
  Rational beta_minus{1};
};

struct ConfusionCounts {
  BigInt tp, tn, p, n;
  void validate() const;  // 0 <= tp <= p, 0 <= tn <= n, p >= 1, n >= 1
};

// Exact value of the form a + b*sqrt(r) with rational a, b and r >= 0.
// All radical scores (gm, fm, mcc, pt) reduce to this shape, which admits
// exact comparisons against rational bounds by sign analysis and squaring.
struct AffineSqrt {
  Rational a, b, r;
  Interval enclosure() const;
  int compare(const Rational& t) const;  // sign of (a + b*sqrt(r)) - t
  bool in(const Interval& iv) const;
  double approx() const;
};

// Result of a forward evaluation: an exact rational for the 16 rational
// scores, an exact radical form for gm, fm, mcc and pt.
struct ScoreValue {
  bool exact = true;
  Rational value;
  AffineSqrt parts;

  Interval enclosure() const { return exact ? Interval::point(value) : parts.enclosure(); }
  bool in(const Interval& iv) const { return exact ? iv.contains(value) : parts.in(iv); }
  double approx() const { return exact ? rat_to_double(value) : parts.approx(); }
};

enum class Var { tp, tn };

// One analytic solution branch: maps the score-value interval and the known
// figure to an enclosure of the unknown figure.
using InverseFn = std::function<ExtInterval(const Interval& value, const Rational& known,
                                            const Rational& p, const Rational& n,
                                            const ScoreParams& params)>;

struct ScoreDefinition {
  ScoreId id{};
  std::string name;
  bool linear_in_tp_tn = false;  // eligible for the mean-of-scores linear test
  Interval range{Rational(0), Rational(1)};
  bool unbounded_above = false;

  std::function<ScoreValue(const ConfusionCounts&, const ScoreParams&)> forward;
  std::vector<InverseFn> solutions_tp;  // solve for tp, known tn
  std::vector<InverseFn> solutions_tn;  // solve for tn, known tp
};

class ScoreRegistry {
 public:
  static const ScoreRegistry& builtin();

  ScoreRegistry();

  // Extension point: user-supplied score with forward and inverse expressions.
  // Aliases are optional extra accepted names.
  void register_score(ScoreDefinition def, std::vector<std::string> aliases = {});

  const ScoreDefinition& get(ScoreId id) const;
  const ScoreDefinition* find(std::string_view name) const;
  // Nearest known name for diagnostics; returns the canonical abbreviation.
  std::optional<std::string> suggest(std::string_view name) const;

  ScoreValue evaluate(ScoreId id, const ConfusionCounts& c, const ScoreParams& params) const;
  // Exact membership of the score value in [iv.lo, iv.hi]; false when the
  // score is undefined at c (a reported score asserts computability).
  bool in_interval(ScoreId id, const ConfusionCounts& c, const ScoreParams& params,
                   const Interval& iv) const;
  // Inverse image of the value interval in the `solve_for` coordinate, the
  // other coordinate fixed at `known`. Conservative superset of the true
  // solution set; the whole line when a denominator may vanish.
  Region invert(ScoreId id, const Interval& value, Var solve_for, const BigInt& known,
                const BigInt& p, const BigInt& n, const ScoreParams& params) const;

 private:
  std::map<ScoreId, ScoreDefinition> defs_;
  std::map<std::string, ScoreId, std::less<>> names_;
};

std::string_view score_name(ScoreId id);

}  // namespace scoreforge
