#include "scores.hpp"

#include <algorithm>
#include <cmath>

namespace scoreforge {

namespace {

using EI = ExtInterval;

EI c(Rational v) { return EI::point(std::move(v)); }
EI c(long long v) { return EI::point(Rational(v)); }

int sign(const Rational& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t next = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = row[j];
      row[j] = next;
    }
  }
  return row[b.size()];
}

}  // namespace

void ConfusionCounts::validate() const {
  if (p < 1 || n < 1) throw std::invalid_argument("confusion counts: p and n must be positive");
  if (tp < 0 || tp > p) throw std::invalid_argument("confusion counts: tp out of [0, p]");
  if (tn < 0 || tn > n) throw std::invalid_argument("confusion counts: tn out of [0, n]");
}

Interval AffineSqrt::enclosure() const {
  if (b == 0 || r == 0) return Interval::point(a);
  Interval root = sqrt_widened(Interval::point(r));
  return Interval::point(a) + Interval::point(b) * root;
}

int AffineSqrt::compare(const Rational& t) const {
  // sign of b*sqrt(r) - (t - a)
  Rational s = t - a;
  int sx = (b == 0 || r == 0) ? 0 : sign(b);
  int ss = sign(s);
  if (sx != ss) return sx < ss ? -1 : 1;
  if (sx == 0) return 0;
  Rational x2 = b * b * r;
  Rational s2 = s * s;
  if (x2 == s2) return 0;
  bool x_bigger = x2 > s2;
  return (sx > 0) == x_bigger ? 1 : -1;
}

bool AffineSqrt::in(const Interval& iv) const {
  return compare(iv.lo()) >= 0 && compare(iv.hi()) <= 0;
}

double AffineSqrt::approx() const {
  return rat_to_double(a) + rat_to_double(b) * std::sqrt(rat_to_double(r));
}

ScoreRegistry::ScoreRegistry() {
  auto exact = [](Rational v) {
    ScoreValue s;
    s.exact = true;
    s.value = std::move(v);
    return s;
  };
  auto radical = [](Rational a, Rational b, Rational r) {
    ScoreValue s;
    s.exact = false;
    s.parts = AffineSqrt{std::move(a), std::move(b), std::move(r)};
    return s;
  };
  const Interval unit(Rational(0), Rational(1));
  const Interval sym(Rational(-1), Rational(1));
  const Interval nonneg(Rational(0), Rational(0));  // lo used; hi ignored when unbounded

  ScoreDefinition d;

  // acc = (tp + tn) / (p + n)
  d = {};
  d.id = ScoreId::acc;
  d.name = "acc";
  d.linear_in_tp_tn = true;
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    return exact(Rational(m.tp + m.tn) / Rational(m.p + m.n));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) { return EI::finite(v) * c(n + p) - c(tn); }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) { return EI::finite(v) * c(n + p) - c(tp); }};
  register_score(d, {"accuracy"});

  // sens = tp / p
  d = {};
  d.id = ScoreId::sens;
  d.name = "sens";
  d.linear_in_tp_tn = true;
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    return exact(Rational(m.tp) / Rational(m.p));
  };
  d.solutions_tp = {[](const Interval& v, const Rational&, const Rational& p, const Rational&,
                       const ScoreParams&) { return EI::finite(v) * c(p); }};
  // no tn solutions: the score does not depend on tn
  register_score(d, {"sensitivity", "recall", "tpr", "true_positive_rate"});

  // spec = tn / n
  d = {};
  d.id = ScoreId::spec;
  d.name = "spec";
  d.linear_in_tp_tn = true;
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    return exact(Rational(m.tn) / Rational(m.n));
  };
  d.solutions_tn = {[](const Interval& v, const Rational&, const Rational&, const Rational& n,
                       const ScoreParams&) { return EI::finite(v) * c(n); }};
  register_score(d, {"specificity", "tnr", "selectivity", "true_negative_rate"});

  // ppv = tp / (n - tn + tp)
  d = {};
  d.id = ScoreId::ppv;
  d.name = "ppv";
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    BigInt den = m.n - m.tn + m.tp;
    if (den == 0) throw UndefinedScoreError("ppv");
    return exact(Rational(m.tp) / Rational(den));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational&, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return V * c(tn - n) / (V - c(1));
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational&, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(n + tp) - c(tp) / V;
  }};
  register_score(d, {"precision", "positive_predictive_value"});

  // npv = tn / (p + tn - tp)
  d = {};
  d.id = ScoreId::npv;
  d.name = "npv";
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    BigInt den = m.p + m.tn - m.tp;
    if (den == 0) throw UndefinedScoreError("npv");
    return exact(Rational(m.tn) / Rational(den));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational&,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(p + tn) - c(tn) / V;
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational&,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return V * c(tp - p) / (V - c(1));
  }};
  register_score(d, {"negative_predictive_value"});

  // fbp = tp (b^2 + 1) / (b^2 p + n - tn + tp), b = beta_plus
  d = {};
  d.id = ScoreId::fbp;
  d.name = "fbp";
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams& prm) {
    Rational b2 = prm.beta_plus * prm.beta_plus;
    Rational den = b2 * Rational(m.p) + Rational(m.n - m.tn + m.tp);
    return exact(Rational(m.tp) * (b2 + 1) / den);
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams& prm) {
    Rational b2 = prm.beta_plus * prm.beta_plus;
    EI V = EI::finite(v);
    return V * c(b2 * p + n - tn) / (c(b2 + 1) - V);
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams& prm) {
    Rational b2 = prm.beta_plus * prm.beta_plus;
    EI V = EI::finite(v);
    return (V * c(b2 * p + n + tp) - c(tp * (b2 + 1))) / V;
  }};
  register_score(d, {"f_beta_plus", "f1"});

  // fbn = tn (b^2 + 1) / (b^2 n + p + tn - tp), b = beta_minus
  d = {};
  d.id = ScoreId::fbn;
  d.name = "fbn";
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams& prm) {
    Rational b2 = prm.beta_minus * prm.beta_minus;
    Rational den = b2 * Rational(m.n) + Rational(m.p + m.tn - m.tp);
    return exact(Rational(m.tn) * (b2 + 1) / den);
  };
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams& prm) {
    Rational b2 = prm.beta_minus * prm.beta_minus;
    EI V = EI::finite(v);
    return V * c(b2 * n + p - tp) / (c(b2 + 1) - V);
  }};
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams& prm) {
    Rational b2 = prm.beta_minus * prm.beta_minus;
    EI V = EI::finite(v);
    return (V * c(b2 * n + p + tn) - c(tn * (b2 + 1))) / V;
  }};
  register_score(d, {"f_beta_minus", "f1_negative"});

  // upm = 4 tn tp / (tn (n + p - tn + tp) + tp (n + p + tn - tp))
  d = {};
  d.id = ScoreId::upm;
  d.name = "upm";
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    BigInt den = m.tn * (m.n + m.p - m.tn + m.tp) + m.tp * (m.n + m.p + m.tn - m.tp);
    if (den == 0) throw UndefinedScoreError("upm");
    return exact(Rational(4 * m.tn * m.tp) / Rational(den));
  };
  {
    auto branches = [](int branch_sign) {
      return [branch_sign](const Interval& v, const Rational& k, const Rational& p,
                           const Rational& n, const ScoreParams&) {
        // symmetric in (tp, tn): k is the known figure, the result the other
        EI V = EI::finite(v);
        EI V2 = square(V);
        Rational s2 = n * n + 2 * n * p + 8 * n * k + p * p + 8 * p * k;
        Rational s1 = -8 * n * k - 8 * p * k - 16 * k * k;
        EI disc = c(16 * k * k) + V2 * c(s2) + V * c(s1);
        EI root = sqrt_ext(disc) / c(2);
        EI inner = (branch_sign > 0) ? (c(-2 * k) + root) : (c(-2 * k) - root);
        return c(n / 2 + p / 2 + k) + inner / V;
      };
    };
    d.solutions_tp = {branches(+1), branches(-1)};
    d.solutions_tn = {branches(+1), branches(-1)};
  }
  register_score(d, {"p4", "unified_performance_measure"});

  // gm = sqrt(tn tp / (n p))
  d = {};
  d.id = ScoreId::gm;
  d.name = "gm";
  d.range = unit;
  d.forward = [radical](const ConfusionCounts& m, const ScoreParams&) {
    return radical(Rational(0), Rational(1), Rational(m.tn * m.tp) / Rational(m.n * m.p));
  };
  {
    auto sol = [](const Interval& v, const Rational& k, const Rational& p, const Rational& n,
                  const ScoreParams&) {
      return square(EI::finite(v)) * c(n * p) / c(k);
    };
    d.solutions_tp = {sol};
    d.solutions_tn = {sol};
  }
  register_score(d, {"geometric_mean"});

  // fm = tp / sqrt(p (n - tn + tp))
  d = {};
  d.id = ScoreId::fm;
  d.name = "fm";
  d.range = unit;
  d.forward = [radical](const ConfusionCounts& m, const ScoreParams&) {
    BigInt den = m.p * (m.n - m.tn + m.tp);
    if (den == 0) throw UndefinedScoreError("fm");
    return radical(Rational(0), Rational(m.tp) / Rational(den), Rational(den));
  };
  {
    auto tp_branch = [](int branch_sign) {
      return [branch_sign](const Interval& v, const Rational& tn, const Rational& p,
                           const Rational& n, const ScoreParams&) {
        EI V = EI::finite(v);
        EI disc = square(V) * c(p) + c(4 * n - 4 * tn);
        EI root = sqrt_ext(c(p)) * sqrt_ext(disc);
        EI inner = (branch_sign > 0) ? (V * c(p) + root) : (V * c(p) - root);
        return V * inner / c(2);
      };
    };
    d.solutions_tp = {tp_branch(+1), tp_branch(-1)};
    d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                         const ScoreParams&) {
      EI V = EI::finite(v);
      return c(n + tp) - c(tp * tp) / (square(V) * c(p));
    }};
  }
  register_score(d, {"fowlkes_mallows"});

  // mk = tn/(p + tn - tp) + tp/(n - tn + tp) - 1
  d = {};
  d.id = ScoreId::mk;
  d.name = "mk";
  d.range = sym;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    BigInt d1 = m.p + m.tn - m.tp;
    BigInt d2 = m.n - m.tn + m.tp;
    if (d1 == 0 || d2 == 0) throw UndefinedScoreError("mk");
    return exact(Rational(m.tn) / Rational(d1) + Rational(m.tp) / Rational(d2) - 1);
  };
  {
    auto branch = [](int branch_sign, bool solve_tp) {
      return [branch_sign, solve_tp](const Interval& v, const Rational& k, const Rational& p,
                                     const Rational& n, const ScoreParams&) {
        EI V = EI::finite(v);
        EI V2 = square(V);
        Rational sum2 = (n + p) * (n + p);
        Rational lin, off;
        if (solve_tp) {
          lin = 2 * n * n + 2 * n * p - 4 * n * k - 4 * p * k;
          off = n;
        } else {
          lin = 2 * p * p + 2 * n * p - 4 * p * k - 4 * n * k;
          off = p;
        }
        EI disc = V2 * c(sum2) + V * c(lin) + c(off * off);
        EI root = sqrt_ext(disc);
        EI head = solve_tp ? V * c(p - n + 2 * k) - c(n) : V * c(n - p + 2 * k) - c(p);
        EI num = (branch_sign > 0) ? head + root : head - root;
        return num / (c(2) * V);
      };
    };
    d.solutions_tp = {branch(+1, true), branch(-1, true)};
    d.solutions_tn = {branch(+1, false), branch(-1, false)};
  }
  register_score(d, {"markedness", "delta_p"});

  // bm = tp/p + tn/n - 1
  d = {};
  d.id = ScoreId::bm;
  d.name = "bm";
  d.range = sym;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    return exact(Rational(m.tp) / Rational(m.p) + Rational(m.tn) / Rational(m.n) - 1);
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(p) * ((V + c(1)) * c(n) - c(tn)) / c(n);
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(n) * ((V + c(1)) * c(p) - c(tp)) / c(p);
  }};
  register_score(d, {"informedness", "bookmaker_informedness"});

  // mcc = (tn tp - (n - tn)(p - tp)) / sqrt(n p (n - tn + tp)(p + tn - tp))
  d = {};
  d.id = ScoreId::mcc;
  d.name = "mcc";
  d.range = sym;
  d.forward = [radical](const ConfusionCounts& m, const ScoreParams&) {
    BigInt den = m.n * m.p * (m.n - m.tn + m.tp) * (m.p + m.tn - m.tp);
    if (den == 0) throw UndefinedScoreError("mcc");
    BigInt num = m.tn * m.tp - (m.n - m.tn) * (m.p - m.tp);
    return radical(Rational(0), Rational(num) / Rational(den), Rational(den));
  };
  {
    auto branch = [](int branch_sign, bool solve_tp) {
      return [branch_sign, solve_tp](const Interval& v, const Rational& k, const Rational& p,
                                     const Rational& n, const ScoreParams&) {
        EI V = EI::finite(v);
        EI V2 = square(V);
        // solve_tp:  [ +/- v sqrt(p) (n+p) sqrt(v^2 n p + 4 n k - 4 k^2)
        //              + sqrt(n) p (v^2 (p - n + 2k) + 2n - 2k) ]
        //            / (2 sqrt(n) (v^2 p + n));  tn solution is symmetric.
        Rational a = solve_tp ? p : n;  // under the lone sqrt in the numerator
        Rational b = solve_tp ? n : p;
        EI disc = V2 * c(n * p) + c(4 * b * k - 4 * k * k);
        EI radical_term = V * sqrt_ext(c(a)) * c(n + p) * sqrt_ext(disc);
        EI poly = sqrt_ext(c(b)) * c(a) * (V2 * c(a - b + 2 * k) + c(2 * b - 2 * k));
        EI num = (branch_sign > 0) ? radical_term + poly : poly - radical_term;
        EI den = c(2) * sqrt_ext(c(b)) * (V2 * c(a) + c(b));
        return num / den;
      };
    };
    d.solutions_tp = {branch(+1, true), branch(-1, true)};
    d.solutions_tn = {branch(+1, false), branch(-1, false)};
  }
  register_score(d, {"phi", "matthews_correlation"});

  // lrp = n tp / (p (n - tn))
  d = {};
  d.id = ScoreId::lrp;
  d.name = "lrp";
  d.range = nonneg;
  d.unbounded_above = true;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    if (m.tn == m.n) throw UndefinedScoreError("lrp");
    return exact(Rational(m.n * m.tp) / Rational(m.p * (m.n - m.tn)));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return V * c(p * (n - tn)) / c(n);
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(n) - c(n * tp) / (V * c(p));
  }};
  register_score(d, {"positive_likelihood_ratio"});

  // lrn = n (p - tp) / (p tn)
  d = {};
  d.id = ScoreId::lrn;
  d.name = "lrn";
  d.range = nonneg;
  d.unbounded_above = true;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    if (m.tn == 0) throw UndefinedScoreError("lrn");
    return exact(Rational(m.n * (m.p - m.tp)) / Rational(m.p * m.tn));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(p) * (c(n) - V * c(tn)) / c(n);
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(n * (p - tp)) / (V * c(p));
  }};
  register_score(d, {"negative_likelihood_ratio"});

  // pt = (spec + sqrt(sens (1 - spec)) - 1) / (sens + spec - 1)
  d = {};
  d.id = ScoreId::pt;
  d.name = "pt";
  d.range = unit;
  d.forward = [radical](const ConfusionCounts& m, const ScoreParams&) {
    Rational u = Rational(m.tp) / Rational(m.p);        // sens
    Rational w = Rational(m.n - m.tn) / Rational(m.n);  // 1 - spec
    if (u == w) throw UndefinedScoreError("pt");
    return radical(-w / (u - w), Rational(1) / (u - w), u * w);
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    EI ratio = square(c(1) - V) / square(V);
    return c(p * (n - tn) / n) * ratio;
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    EI ratio = square(V) / square(c(1) - V);
    return c(n) - c(n * tp / p) * ratio;
  }};
  register_score(d, {"prevalence_threshold"});

  // dor = tn tp / ((n - tn)(p - tp))
  d = {};
  d.id = ScoreId::dor;
  d.name = "dor";
  d.range = nonneg;
  d.unbounded_above = true;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    if (m.tn == m.n || m.tp == m.p) throw UndefinedScoreError("dor");
    return exact(Rational(m.tn * m.tp) / Rational((m.n - m.tn) * (m.p - m.tp)));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return V * c(p * (n - tn)) / (V * c(n - tn) + c(tn));
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return V * c(n * (p - tp)) / (V * c(p - tp) + c(tp));
  }};
  register_score(d, {"diagnostic_odds_ratio"});

  // ji = tp / (n + p - tn)
  d = {};
  d.id = ScoreId::ji;
  d.name = "ji";
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    return exact(Rational(m.tp) / Rational(m.n + m.p - m.tn));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) { return EI::finite(v) * c(n + p - tn); }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(n + p) - c(tp) / V;
  }};
  register_score(d, {"jaccard", "threat_score", "critical_success_index"});

  // bacc = tp/(2p) + tn/(2n)
  d = {};
  d.id = ScoreId::bacc;
  d.name = "bacc";
  d.linear_in_tp_tn = true;
  d.range = unit;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    return exact(Rational(m.tp) / Rational(2 * m.p) + Rational(m.tn) / Rational(2 * m.n));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(p) * (c(2) * V * c(n) - c(tn)) / c(n);
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    return c(n) * (c(2) * V * c(p) - c(tp)) / c(p);
  }};
  register_score(d, {"balanced_accuracy"});

  // kappa = (-2np + 2n tp + 2p tn) / (n^2 - n tn + n tp + p^2 + p tn - p tp)
  d = {};
  d.id = ScoreId::kappa;
  d.name = "kappa";
  d.range = sym;
  d.forward = [exact](const ConfusionCounts& m, const ScoreParams&) {
    BigInt den = m.n * m.n - m.n * m.tn + m.n * m.tp + m.p * m.p + m.p * m.tn - m.p * m.tp;
    return exact(Rational(-2 * m.n * m.p + 2 * m.n * m.tp + 2 * m.p * m.tn) / Rational(den));
  };
  d.solutions_tp = {[](const Interval& v, const Rational& tn, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    EI num = V * c(n * n - n * tn + p * p + p * tn) + c(2 * n * p - 2 * p * tn);
    EI den = V * c(p - n) + c(2 * n);
    return num / den;
  }};
  d.solutions_tn = {[](const Interval& v, const Rational& tp, const Rational& p, const Rational& n,
                       const ScoreParams&) {
    EI V = EI::finite(v);
    EI num = V * c(n * n + n * tp + p * p - p * tp) + c(2 * n * p - 2 * n * tp);
    EI den = V * c(n - p) + c(2 * p);
    return num / den;
  }};
  register_score(d, {"cohens_kappa"});
}

void ScoreRegistry::register_score(ScoreDefinition def, std::vector<std::string> aliases) {
  ScoreId id = def.id;
  names_[def.name] = id;
  for (auto& a : aliases) names_[a] = id;
  defs_[id] = std::move(def);
}

const ScoreRegistry& ScoreRegistry::builtin() {
  static const ScoreRegistry reg;
  return reg;
}

const ScoreDefinition& ScoreRegistry::get(ScoreId id) const { return defs_.at(id); }

const ScoreDefinition* ScoreRegistry::find(std::string_view name) const {
  auto it = names_.find(name);
  if (it == names_.end()) return nullptr;
  return &defs_.at(it->second);
}

std::optional<std::string> ScoreRegistry::suggest(std::string_view name) const {
  size_t best = SIZE_MAX;
  ScoreId best_id{};
  for (const auto& [alias, id] : names_) {
    size_t dist = edit_distance(name, alias);
    if (dist < best) {
      best = dist;
      best_id = id;
    }
  }
  if (best == SIZE_MAX || best > 3) return std::nullopt;
  return defs_.at(best_id).name;
}

ScoreValue ScoreRegistry::evaluate(ScoreId id, const ConfusionCounts& c,
                                   const ScoreParams& params) const {
  c.validate();
  return get(id).forward(c, params);
}

bool ScoreRegistry::in_interval(ScoreId id, const ConfusionCounts& c, const ScoreParams& params,
                                const Interval& iv) const {
  try {
    return get(id).forward(c, params).in(iv);
  } catch (const UndefinedScoreError&) {
    return false;
  }
}

Region ScoreRegistry::invert(ScoreId id, const Interval& value, Var solve_for, const BigInt& known,
                             const BigInt& p, const BigInt& n, const ScoreParams& params) const {
  const ScoreDefinition& def = get(id);

  // Clip the reported interval to the attainable range of the score.
  Rational lo = std::max(value.lo(), def.range.lo());
  Rational hi = def.unbounded_above ? value.hi() : std::min(value.hi(), def.range.hi());
  if (lo > hi) return Region::empty();
  Interval clipped(lo, hi);

  const auto& solutions = (solve_for == Var::tp) ? def.solutions_tp : def.solutions_tn;
  Rational kp(p), kn(n), kk(known);

  if (solutions.empty()) {
    // The score does not depend on the unknown figure: the known one decides.
    ConfusionCounts m{solve_for == Var::tp ? BigInt(0) : known,
                      solve_for == Var::tp ? known : BigInt(0), p, n};
    return in_interval(id, m, params, clipped) ? Region::line() : Region::empty();
  }

  Region out = Region::empty();
  for (const auto& branch : solutions) {
    ExtInterval e = branch(clipped, kk, kp, kn, params);
    out = out.unite(Region::from(e));
    if (out.is_line()) break;
  }
  return out;
}

std::string_view score_name(ScoreId id) { return ScoreRegistry::builtin().get(id).name; }

}  // namespace scoreforge
