#include "lp.hpp"

#include "single_test.hpp"  // TooLargeError

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace scoreforge {

namespace {

struct Bounds {
  std::vector<BigInt> lo, hi;
};

void validate_system(const LinearSystem& sys) {
  for (const auto& v : sys.vars) {
    if (v.lo > v.hi) throw std::invalid_argument("lp: variable with lo > hi: " + v.name);
  }
  for (const auto& row : sys.rows) {
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= static_cast<int>(sys.vars.size()))
        throw std::invalid_argument("lp: constraint references unknown variable");
    }
    if (row.lo && row.hi && *row.lo > *row.hi)
      throw std::invalid_argument("lp: row with lo > hi");
  }
}

// Integer-scaled view of a row: scale * coeff_i is integral for every term,
// so the scaled activity of any integer assignment is an integer.
struct RowArith {
  BigInt scale = 1;
  std::vector<BigInt> coeff;  // parallel to row.terms
};

std::vector<RowArith> scale_rows(const LinearSystem& sys) {
  std::vector<RowArith> out(sys.rows.size());
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    BigInt scale = 1;
    for (const auto& t : sys.rows[r].terms) scale = lcm(scale, denominator(t.coeff));
    out[r].scale = scale;
    out[r].coeff.reserve(sys.rows[r].terms.size());
    for (const auto& t : sys.rows[r].terms)
      out[r].coeff.push_back(numerator(t.coeff) * (scale / denominator(t.coeff)));
  }
  return out;
}

// The scaled activity lies in C0 + g*Z given the current boxes; prune when no
// member of that lattice meets the scaled row interval.
bool row_lattice_feasible(const LpConstraint& row, const RowArith& arith, const Bounds& b) {
  BigInt c0 = 0;
  BigInt g = 0;
  for (size_t t = 0; t < row.terms.size(); ++t) {
    const int var = row.terms[t].var;
    c0 += arith.coeff[t] * b.lo[var];
    if (b.lo[var] < b.hi[var]) g = gcd(g, arith.coeff[t]);
  }
  if (g < 0) g = -g;
  Rational lo_s = row.lo ? *row.lo * Rational(arith.scale) : Rational(0);
  Rational hi_s = row.hi ? *row.hi * Rational(arith.scale) : Rational(0);
  if (g == 0) {
    // every variable fixed: the activity is exactly c0
    if (row.lo && Rational(c0) < lo_s) return false;
    if (row.hi && Rational(c0) > hi_s) return false;
    return true;
  }
  if (!row.lo || !row.hi) return true;  // one-sided rows always meet the lattice
  BigInt k = rat_ceil((lo_s - Rational(c0)) / Rational(g));
  return Rational(c0 + g * k) <= hi_s;
}

// Single-constraint interval propagation plus the lattice test. Returns false
// when some variable's range empties or a row cannot be met. Bounds stay
// integral.
bool propagate(const LinearSystem& sys, const std::vector<RowArith>& arith, Bounds& b) {
  bool changed = true;
  for (int pass = 0; pass < 64 && changed; ++pass) {
    changed = false;
    for (size_t r = 0; r < sys.rows.size(); ++r) {
      const auto& row = sys.rows[r];
      Rational min_act = 0, max_act = 0;
      for (const auto& t : row.terms) {
        Rational c1 = t.coeff * Rational(b.lo[t.var]);
        Rational c2 = t.coeff * Rational(b.hi[t.var]);
        min_act += std::min(c1, c2);
        max_act += std::max(c1, c2);
      }
      if (row.hi && min_act > *row.hi) return false;
      if (row.lo && max_act < *row.lo) return false;
      if (!row_lattice_feasible(row, arith[r], b)) return false;
      for (const auto& t : row.terms) {
        if (t.coeff == 0) continue;
        Rational c1 = t.coeff * Rational(b.lo[t.var]);
        Rational c2 = t.coeff * Rational(b.hi[t.var]);
        Rational min_others = min_act - std::min(c1, c2);
        Rational max_others = max_act - std::max(c1, c2);
        BigInt new_lo = b.lo[t.var];
        BigInt new_hi = b.hi[t.var];
        if (row.hi) {
          Rational slack = (*row.hi - min_others) / t.coeff;
          if (t.coeff > 0) {
            new_hi = std::min(new_hi, rat_floor(slack));
          } else {
            new_lo = std::max(new_lo, rat_ceil(slack));
          }
        }
        if (row.lo) {
          Rational need = (*row.lo - max_others) / t.coeff;
          if (t.coeff > 0) {
            new_lo = std::max(new_lo, rat_ceil(need));
          } else {
            new_hi = std::min(new_hi, rat_floor(need));
          }
        }
        if (new_lo > new_hi) return false;
        if (new_lo != b.lo[t.var] || new_hi != b.hi[t.var]) {
          Rational o1 = t.coeff * Rational(new_lo);
          Rational o2 = t.coeff * Rational(new_hi);
          min_act += std::min(o1, o2) - std::min(c1, c2);
          max_act += std::max(o1, o2) - std::max(c1, c2);
          b.lo[t.var] = new_lo;
          b.hi[t.var] = new_hi;
          changed = true;
        }
      }
    }
  }
  return true;
}

// Number-type plumbing for the simplex: the exact instantiation decides, the
// double instantiation only steers heuristics.
template <class T>
struct SimplexTraits;

template <>
struct SimplexTraits<Rational> {
  static Rational from(const Rational& r) { return r; }
  static bool is_negative(const Rational& v) { return v < 0; }
  static bool is_positive(const Rational& v) { return v > 0; }
  static constexpr size_t iteration_cap = SIZE_MAX;
};

template <>
struct SimplexTraits<double> {
  static double from(const Rational& r) { return rat_to_double(r); }
  static bool is_negative(double v) { return v < -1e-9; }
  static bool is_positive(double v) { return v > 1e-9; }
  static constexpr size_t iteration_cap = 2000;
};

enum class LpStatus { Feasible, Infeasible, Stalled };

template <class T>
struct LpOutcome {
  LpStatus status = LpStatus::Stalled;
  std::vector<T> x;
};

// Phase-1 simplex: is there a real point within the box satisfying all rows?
// Bland's rule prevents cycling in the exact instantiation; the double
// instantiation bails out through the iteration cap instead.
template <class T>
LpOutcome<T> lp_feasible_point(const LinearSystem& sys, const Bounds& b) {
  using Tr = SimplexTraits<T>;
  const size_t nv = sys.vars.size();
  LpOutcome<T> out;

  // Shift x = lo + y with y in [0, d]; fixed variables leave the tableau.
  std::vector<int> col_of(nv, -1);
  std::vector<size_t> var_of;
  for (size_t j = 0; j < nv; ++j) {
    if (b.lo[j] < b.hi[j]) {
      col_of[j] = static_cast<int>(var_of.size());
      var_of.push_back(j);
    }
  }
  const size_t nf = var_of.size();

  struct Ineq {
    std::vector<T> a;
    bool is_le = true;
    T rhs{};
  };
  std::vector<Ineq> ineqs;
  for (const auto& row : sys.rows) {
    Rational shift = 0;
    std::vector<T> a(nf, T{});
    bool nontrivial = false;
    for (const auto& t : row.terms) {
      shift += t.coeff * Rational(b.lo[t.var]);
      if (col_of[t.var] >= 0) {
        a[col_of[t.var]] += Tr::from(t.coeff);
        nontrivial = true;
      }
    }
    if (row.hi) {
      if (!nontrivial) {
        if (shift > *row.hi) {
          out.status = LpStatus::Infeasible;
          return out;
        }
      } else {
        ineqs.push_back({a, true, Tr::from(*row.hi - shift)});
      }
    }
    if (row.lo) {
      if (!nontrivial) {
        if (shift < *row.lo) {
          out.status = LpStatus::Infeasible;
          return out;
        }
      } else {
        ineqs.push_back({a, false, Tr::from(*row.lo - shift)});
      }
    }
  }
  for (size_t f = 0; f < nf; ++f) {
    std::vector<T> a(nf, T{});
    a[f] = Tr::from(Rational(1));
    ineqs.push_back({std::move(a), true, Tr::from(Rational(b.hi[var_of[f]] - b.lo[var_of[f]]))});
  }

  const size_t m = ineqs.size();
  if (m == 0) {
    out.status = LpStatus::Feasible;
    out.x.resize(nv);
    for (size_t j = 0; j < nv; ++j) out.x[j] = Tr::from(Rational(b.lo[j]));
    return out;
  }

  // Tableau columns: [y (nf)] [slack (m)] [artificials (<= m)], then rhs.
  size_t n_art = 0;
  std::vector<int> art_col(m, -1);
  for (size_t i = 0; i < m; ++i) {
    const bool needs_art = ineqs[i].is_le ? (ineqs[i].rhs < T{}) : (ineqs[i].rhs > T{});
    if (needs_art) art_col[i] = static_cast<int>(n_art++);
  }
  const size_t ncols = nf + m + n_art;
  std::vector<std::vector<T>> tab(m, std::vector<T>(ncols + 1, T{}));
  std::vector<int> basis(m, -1);
  const T one = Tr::from(Rational(1));

  for (size_t i = 0; i < m; ++i) {
    bool negate = ineqs[i].is_le ? (ineqs[i].rhs < T{}) : !(ineqs[i].rhs > T{});
    T rhs = negate ? -ineqs[i].rhs : ineqs[i].rhs;
    T slack = ineqs[i].is_le ? one : -one;
    if (negate) slack = -slack;
    for (size_t j = 0; j < nf; ++j) tab[i][j] = negate ? -ineqs[i].a[j] : ineqs[i].a[j];
    tab[i][nf + i] = slack;
    tab[i][ncols] = rhs;
    if (art_col[i] >= 0) {
      tab[i][nf + m + art_col[i]] = one;
      basis[i] = static_cast<int>(nf + m + art_col[i]);
    } else {
      basis[i] = static_cast<int>(nf + i);
    }
  }

  auto is_artificial = [&](int col) { return col >= static_cast<int>(nf + m); };

  // Minimize the sum of artificials.
  for (size_t iteration = 0;; ++iteration) {
    if (iteration >= Tr::iteration_cap) {
      out.status = LpStatus::Stalled;
      return out;
    }
    int entering = -1;
    for (size_t j = 0; j < ncols; ++j) {
      T r = is_artificial(static_cast<int>(j)) ? one : T{};
      for (size_t i = 0; i < m; ++i) {
        if (is_artificial(basis[i])) r -= tab[i][j];
      }
      if (Tr::is_negative(r)) {
        entering = static_cast<int>(j);
        break;  // Bland: first improving index
      }
    }
    if (entering < 0) break;

    int leaving_row = -1;
    T best_ratio{};
    for (size_t i = 0; i < m; ++i) {
      if (Tr::is_positive(tab[i][entering])) {
        T ratio = tab[i][ncols] / tab[i][entering];
        if (leaving_row < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving_row])) {
          leaving_row = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
    }
    if (leaving_row < 0) {
      // Phase-1 objective is bounded below by zero; only numerical noise in
      // the double instantiation can land here.
      out.status = LpStatus::Stalled;
      return out;
    }

    T piv = tab[leaving_row][entering];
    for (size_t j = 0; j <= ncols; ++j) tab[leaving_row][j] /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (static_cast<int>(i) == leaving_row) continue;
      if (tab[i][entering] == T{}) continue;
      T factor = tab[i][entering];
      for (size_t j = 0; j <= ncols; ++j) tab[i][j] -= factor * tab[leaving_row][j];
    }
    basis[leaving_row] = entering;
  }

  T infeasibility{};
  for (size_t i = 0; i < m; ++i) {
    if (is_artificial(basis[i])) infeasibility += tab[i][ncols];
  }
  if (Tr::is_positive(infeasibility)) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  out.status = LpStatus::Feasible;
  out.x.resize(nv);
  for (size_t j = 0; j < nv; ++j) out.x[j] = Tr::from(Rational(b.lo[j]));
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < static_cast<int>(nf)) {
      out.x[var_of[basis[i]]] += tab[i][ncols];
    }
  }
  return out;
}

// Variables with identical columns are interchangeable for feasibility: merge
// them into one variable with summed bounds. A merged solution splits back
// greedily since member ranges are contiguous.
struct Merged {
  LinearSystem sys;
  std::vector<std::vector<int>> members;  // merged var -> original vars
};

Merged merge_parallel_columns(const LinearSystem& in) {
  using Column = std::map<int, Rational>;  // row -> coefficient
  std::vector<Column> column(in.vars.size());
  for (size_t r = 0; r < in.rows.size(); ++r) {
    for (const auto& t : in.rows[r].terms)
      column[t.var][static_cast<int>(r)] += t.coeff;
  }

  Merged out;
  std::map<Column, int> group_of;
  for (size_t j = 0; j < in.vars.size(); ++j) {
    auto [it, inserted] = group_of.try_emplace(column[j], -1);
    if (inserted || it->second < 0) {
      it->second = static_cast<int>(out.sys.vars.size());
      out.sys.vars.push_back(in.vars[j]);
      out.members.push_back({static_cast<int>(j)});
    } else {
      LpVariable& merged = out.sys.vars[it->second];
      merged.lo += in.vars[j].lo;
      merged.hi += in.vars[j].hi;
      out.members[it->second].push_back(static_cast<int>(j));
    }
  }

  // The merged variable stands for the sum of its members, so each row keeps
  // the shared column coefficient.
  out.sys.rows.resize(in.rows.size());
  for (size_t r = 0; r < in.rows.size(); ++r) {
    out.sys.rows[r].lo = in.rows[r].lo;
    out.sys.rows[r].hi = in.rows[r].hi;
  }
  for (const auto& [col, g] : group_of) {
    for (const auto& [r, coeff] : col) out.sys.rows[r].terms.push_back({g, coeff});
  }
  for (auto& row : out.sys.rows) {
    std::sort(row.terms.begin(), row.terms.end(),
              [](const LpTerm& a, const LpTerm& b) { return a.var < b.var; });
  }
  return out;
}

std::vector<BigInt> expand_assignment(const Merged& merged, const LinearSystem& original,
                                      const std::vector<BigInt>& compact) {
  std::vector<BigInt> full(original.vars.size());
  for (size_t g = 0; g < merged.members.size(); ++g) {
    BigInt remaining = compact[g];
    BigInt tail_lo = 0;
    for (int j : merged.members[g]) tail_lo += original.vars[j].lo;
    for (int j : merged.members[g]) {
      tail_lo -= original.vars[j].lo;
      BigInt value = remaining - tail_lo;  // leave room for the others' minima
      value = std::max(value, original.vars[j].lo);
      value = std::min(value, original.vars[j].hi);
      full[j] = value;
      remaining -= value;
    }
  }
  return full;
}

// Fractional coordinates of a relaxation point, with the integral base.
struct RoundedView {
  std::vector<BigInt> base;
  std::vector<size_t> fractional;
  std::vector<double> frac_part;  // parallel to fractional
};

RoundedView rounded_view(const std::vector<Rational>& x) {
  RoundedView v;
  v.base.resize(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    if (is_integer(x[j])) {
      v.base[j] = numerator(x[j]);
    } else {
      v.base[j] = rat_floor(x[j]);
      v.fractional.push_back(j);
      v.frac_part.push_back(rat_to_double(x[j] - Rational(v.base[j])));
    }
  }
  return v;
}

RoundedView rounded_view(const std::vector<double>& x) {
  RoundedView v;
  v.base.resize(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    double fl = std::floor(x[j]);
    double frac = x[j] - fl;
    if (frac < 1e-7) {
      v.base[j] = BigInt(static_cast<long long>(std::llround(fl)));
    } else if (frac > 1 - 1e-7) {
      v.base[j] = BigInt(static_cast<long long>(std::llround(fl)) + 1);
    } else {
      v.base[j] = BigInt(static_cast<long long>(std::llround(fl)));
      v.fractional.push_back(j);
      v.frac_part.push_back(frac);
    }
  }
  return v;
}

// Round the fractional coordinates both ways and test the combinations
// exactly; cheap and often lands on a witness.
std::optional<std::vector<BigInt>> rounding_probe(const LinearSystem& sys, const Bounds& b,
                                                  const RoundedView& view) {
  if (view.fractional.size() > 8) return std::nullopt;
  const size_t combos = size_t{1} << view.fractional.size();
  std::vector<BigInt> candidate = view.base;
  for (size_t mask = 0; mask < combos; ++mask) {
    for (size_t f = 0; f < view.fractional.size(); ++f) {
      size_t j = view.fractional[f];
      candidate[j] = view.base[j] + static_cast<int>((mask >> f) & 1);
      if (candidate[j] > b.hi[j]) candidate[j] = b.hi[j];
      if (candidate[j] < b.lo[j]) candidate[j] = b.lo[j];
    }
    if (check_assignment(sys, candidate)) return candidate;
  }
  return std::nullopt;
}

int most_fractional(const RoundedView& view) {
  int pick = -1;
  double best = 1.0;
  for (size_t f = 0; f < view.fractional.size(); ++f) {
    double score = std::abs(view.frac_part[f] - 0.5);
    if (pick < 0 || score < best) {
      pick = static_cast<int>(f);
      best = score;
    }
  }
  return pick;
}

}  // namespace

bool check_assignment(const LinearSystem& sys, const std::vector<BigInt>& x) {
  if (x.size() != sys.vars.size()) return false;
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j] < sys.vars[j].lo || x[j] > sys.vars[j].hi) return false;
  }
  for (const auto& row : sys.rows) {
    Rational act = 0;
    for (const auto& t : row.terms) act += t.coeff * Rational(x[t.var]);
    if (row.lo && act < *row.lo) return false;
    if (row.hi && act > *row.hi) return false;
  }
  return true;
}

FeasibilityResult solve_feasibility(const LinearSystem& original, const LpOptions& opts) {
  validate_system(original);
  Merged merged = merge_parallel_columns(original);
  const LinearSystem& sys = merged.sys;
  const size_t nv = sys.vars.size();
  const std::vector<RowArith> arith = scale_rows(sys);

  FeasibilityResult result;
  auto accept = [&](std::vector<BigInt> compact) {
    std::vector<BigInt> full = expand_assignment(merged, original, compact);
    if (!check_assignment(original, full))
      throw std::logic_error("lp: witness failed the exact recheck");
    result.status = FeasibilityResult::Status::Feasible;
    result.assignment = std::move(full);
    return result;
  };

  std::vector<Bounds> stack;
  Bounds root;
  root.lo.reserve(nv);
  root.hi.reserve(nv);
  for (const auto& v : sys.vars) {
    root.lo.push_back(v.lo);
    root.hi.push_back(v.hi);
  }
  stack.push_back(std::move(root));

  while (!stack.empty()) {
    Bounds node = std::move(stack.back());
    stack.pop_back();
    if (++result.nodes > opts.node_budget) {
      result.status = FeasibilityResult::Status::Indeterminate;
      return result;
    }

    if (!propagate(sys, arith, node)) continue;

    // Small boxes are cheaper to enumerate outright than to relax.
    {
      BigInt box = 1;
      bool small = true;
      for (size_t j = 0; j < nv && small; ++j) {
        box *= node.hi[j] - node.lo[j] + 1;
        if (box > 4096) small = false;
      }
      if (small) {
        std::vector<BigInt> point = node.lo;
        bool found = false;
        while (!found) {
          if (check_assignment(sys, point)) {
            found = true;
            break;
          }
          size_t j = 0;
          while (j < nv) {
            if (point[j] < node.hi[j]) {
              ++point[j];
              break;
            }
            point[j] = node.lo[j];
            ++j;
          }
          if (j == nv) break;
        }
        if (found) return accept(std::move(point));
        continue;
      }
    }

    // Fast heuristic pass: a floating-point relaxation steers branching; only
    // pruning and acceptance go through exact arithmetic.
    RoundedView view;
    bool have_view = false;
    LpOutcome<double> fast = lp_feasible_point<double>(sys, node);
    if (fast.status == LpStatus::Feasible) {
      view = rounded_view(fast.x);
      if (auto probe = rounding_probe(sys, node, view)) return accept(std::move(*probe));
      have_view = !view.fractional.empty();
    }
    if (!have_view) {
      LpOutcome<Rational> exact = lp_feasible_point<Rational>(sys, node);
      if (exact.status == LpStatus::Infeasible) continue;
      view = rounded_view(exact.x);
      if (view.fractional.empty()) return accept(std::move(view.base));
      if (auto probe = rounding_probe(sys, node, view)) return accept(std::move(*probe));
    }

    const int pick = most_fractional(view);
    const size_t branch_var = view.fractional[pick];
    const double frac = view.frac_part[pick];

    // Trichotomy on the branch variable: pin it to the rounded relaxation
    // value and dive there first, keeping the two strict sides as a partition
    // of the remainder. Pinning propagates hard through narrow rows.
    BigInt pin = view.base[branch_var] + (frac > 0.5 ? 1 : 0);
    Bounds below = node, at = node, above = node;
    at.lo[branch_var] = pin;
    at.hi[branch_var] = pin;
    below.hi[branch_var] = pin - 1;
    above.lo[branch_var] = pin + 1;
    const bool below_valid = below.hi[branch_var] >= below.lo[branch_var];
    const bool above_valid = above.lo[branch_var] <= above.hi[branch_var];
    // Exploration order: pinned child, then the side the relaxation point
    // leans toward, then the far side (pushed in reverse).
    if (frac <= 0.5) {
      if (below_valid) stack.push_back(std::move(below));
      if (above_valid) stack.push_back(std::move(above));
    } else {
      if (above_valid) stack.push_back(std::move(above));
      if (below_valid) stack.push_back(std::move(below));
    }
    stack.push_back(std::move(at));
  }

  result.status = FeasibilityResult::Status::Infeasible;
  return result;
}

FeasibilityResult solve_feasibility_bruteforce(const LinearSystem& sys) {
  validate_system(sys);
  BigInt combos = 1;
  for (const auto& v : sys.vars) {
    combos *= (v.hi - v.lo + 1);
    if (combos > 10'000'000) throw TooLargeError("lp brute force: range product exceeds 10^7");
  }

  FeasibilityResult result;
  std::vector<BigInt> x;
  for (const auto& v : sys.vars) x.push_back(v.lo);
  while (true) {
    ++result.nodes;
    if (check_assignment(sys, x)) {
      result.status = FeasibilityResult::Status::Feasible;
      result.assignment = x;
      return result;
    }
    size_t j = 0;
    while (j < x.size()) {
      if (x[j] < sys.vars[j].hi) {
        ++x[j];
        break;
      }
      x[j] = sys.vars[j].lo;
      ++j;
    }
    if (j == x.size()) break;
  }
  result.status = FeasibilityResult::Status::Infeasible;
  return result;
}

}  // namespace scoreforge
