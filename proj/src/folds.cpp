#include "folds.hpp"

#include <algorithm>
#include <stdexcept>

namespace scoreforge {

namespace {

// Partitions of q into exactly m positive nondecreasing parts.
bool exact_partitions(long long q, int m, long long min_part, std::vector<long long>& acc,
                      const std::function<bool(const std::vector<long long>&)>& fn) {
  if (m == 1) {
    if (q < min_part) return true;
    acc.push_back(q);
    bool go = fn(acc);
    acc.pop_back();
    return go;
  }
  for (long long first = min_part; first <= q / m; ++first) {
    acc.push_back(first);
    bool go = exact_partitions(q - first, m - 1, first, acc, fn);
    acc.pop_back();
    if (!go) return false;
  }
  return true;
}

bool fold_has_zero_p(const FoldConfiguration& c) {
  return std::any_of(c.begin(), c.end(), [](const Fold& f) { return f.p == 0; });
}
bool fold_has_zero_n(const FoldConfiguration& c) {
  return std::any_of(c.begin(), c.end(), [](const Fold& f) { return f.n == 0; });
}

// Cartesian product over per-dataset configuration streams.
bool product_recurse(const ExperimentSpec& spec, const BundleOptions& opts, size_t slot,
                     size_t total_slots, std::vector<FoldConfiguration>& chosen,
                     const std::function<bool(const FoldConfiguration&)>& fn) {
  if (slot == total_slots) {
    FoldConfiguration bundle;
    for (const auto& part : chosen) bundle.insert(bundle.end(), part.begin(), part.end());
    return fn(canonical(std::move(bundle)));
  }
  const auto& ds = spec.datasets[slot % spec.datasets.size()];
  return enumerate_configurations(ds.p, ds.n, spec.k, [&](const FoldConfiguration& cfg) {
    if (opts.require_positive_folds && fold_has_zero_p(cfg)) return true;
    if (opts.require_negative_folds && fold_has_zero_n(cfg)) return true;
    chosen.push_back(cfg);
    bool go = product_recurse(spec, opts, slot + 1, total_slots, chosen, fn);
    chosen.pop_back();
    return go;
  });
}

}  // namespace

FoldConfiguration canonical(FoldConfiguration folds) {
  std::sort(folds.begin(), folds.end());
  return folds;
}

FoldConfiguration stratified_configuration(long long p, long long n, int k) {
  if (k < 2) throw std::invalid_argument("stratified folding needs k >= 2");
  if (p + n < k) throw std::invalid_argument("stratified folding needs p + n >= k");
  long long p_mod = p % k, n_mod = n % k;
  long long p_div = p / k, n_div = n / k;
  FoldConfiguration out;
  auto emit = [&out](long long count, long long pi, long long ni) {
    for (long long i = 0; i < count; ++i) out.push_back({pi, ni});
  };
  if (p_mod + n_mod > k) {
    emit(p_mod + n_mod - k, p_div + 1, n_div + 1);
    emit(k - n_mod, p_div + 1, n_div);
    emit(k - p_mod, p_div, n_div + 1);
  } else {
    emit(k - p_mod - n_mod, p_div, n_div);
    emit(p_mod, p_div + 1, n_div);
    emit(n_mod, p_div, n_div + 1);
  }
  return canonical(std::move(out));
}

bool partitions(long long q, int m, long long cap,
                const std::function<bool(const std::vector<long long>&)>& fn) {
  if (q < 0 || m < 1 || cap < 0) throw std::invalid_argument("partitions: bad arguments");
  std::vector<long long> padded(m, 0);
  if (q == 0) return fn(padded);
  if (cap == 0) return true;
  std::vector<long long> acc;
  for (int parts = 1; parts <= std::min<long long>(q, m); ++parts) {
    bool go = exact_partitions(q, parts, 1, acc, [&](const std::vector<long long>& part) {
      if (part.back() > cap) return true;  // parts are nondecreasing
      std::fill(padded.begin(), padded.end(), 0);
      std::copy(part.begin(), part.end(), padded.begin() + (m - parts));
      return fn(padded);
    });
    if (!go) return false;
  }
  return true;
}

bool enumerate_configurations(long long p, long long n, int k,
                              const std::function<bool(const FoldConfiguration&)>& fn) {
  if (k < 2) throw std::invalid_argument("enumerate_configurations: k must be >= 2");
  if (p < 0 || n < 0) throw std::invalid_argument("enumerate_configurations: negative counts");

  const long long k_div = (p + n) / k;
  const int k_a = static_cast<int>((p + n) % k);  // folds with one extra item
  const int k_b = k - k_a;
  const long long c_a = k_div + 1;
  const long long c_b = k_div;

  const long long pa_max = std::min<long long>(p, static_cast<long long>(k_a) * c_a);
  for (long long pa = 0; pa <= pa_max; ++pa) {
    const long long pb = p - pa;
    if (pb > static_cast<long long>(k_b) * c_b) continue;  // k_b >= 1 since k_a < k
    auto inner = [&](const std::vector<long long>& parts_a) {
      return partitions(pb, k_b, c_b, [&](const std::vector<long long>& parts_b) {
        FoldConfiguration cfg;
        cfg.reserve(k);
        int positive_folds = 0, negative_folds = 0;
        for (int i = 0; i < k_a; ++i) {
          cfg.push_back({parts_a[i], c_a - parts_a[i]});
        }
        for (int i = 0; i < k_b; ++i) {
          cfg.push_back({parts_b[i], c_b - parts_b[i]});
        }
        for (const Fold& f : cfg) {
          if (f.p > 0) ++positive_folds;
          if (f.n > 0) ++negative_folds;
        }
        if (positive_folds < 2 || negative_folds < 2) return true;
        return fn(canonical(std::move(cfg)));
      });
    };
    bool go;
    if (k_a == 0) {
      if (pa != 0) continue;
      std::vector<long long> empty_a;
      go = inner(empty_a);
    } else {
      go = partitions(pa, k_a, c_a, inner);
    }
    if (!go) return false;
  }
  return true;
}

uint64_t count_configurations(long long p, long long n, int k) {
  uint64_t count = 0;
  enumerate_configurations(p, n, k, [&count](const FoldConfiguration&) {
    ++count;
    return true;
  });
  return count;
}

SomTotals som_totals(const ExperimentSpec& spec) {
  BigInt p = 0, n = 0;
  for (const auto& ds : spec.datasets) {
    p += ds.p;
    n += ds.n;
  }
  return {p * spec.repeats, n * spec.repeats};
}

void validate_experiment(const ExperimentSpec& spec) {
  if (spec.datasets.empty()) throw std::invalid_argument("experiment: no datasets");
  for (const auto& ds : spec.datasets) {
    if (ds.p < 1 || ds.n < 1) throw std::invalid_argument("experiment: dataset needs p, n >= 1");
  }
  if (spec.repeats < 1) throw std::invalid_argument("experiment: repeats must be >= 1");
  if (spec.folding == ExperimentSpec::Folding::Explicit) {
    if (spec.explicit_folds.empty()) throw std::invalid_argument("experiment: no explicit folds");
    long long p = 0, n = 0;
    for (const auto& f : spec.explicit_folds) {
      if (f.p < 0 || f.n < 0 || f.p + f.n == 0)
        throw std::invalid_argument("experiment: invalid fold");
      p += f.p;
      n += f.n;
    }
    long long dp = 0, dn = 0;
    for (const auto& ds : spec.datasets) {
      dp += ds.p;
      dn += ds.n;
    }
    if (p != dp || n != dn)
      throw std::invalid_argument("experiment: explicit folds do not sum to the dataset counts");
  } else {
    if (spec.k < 2) throw std::invalid_argument("experiment: k must be >= 2");
  }
}

bool mos_bundles(const ExperimentSpec& spec, const BundleOptions& opts,
                 const std::function<bool(const FoldConfiguration&)>& fn) {
  validate_experiment(spec);
  switch (spec.folding) {
    case ExperimentSpec::Folding::Explicit: {
      FoldConfiguration bundle;
      for (int r = 0; r < spec.repeats; ++r)
        bundle.insert(bundle.end(), spec.explicit_folds.begin(), spec.explicit_folds.end());
      return fn(canonical(std::move(bundle)));
    }
    case ExperimentSpec::Folding::Stratified: {
      FoldConfiguration bundle;
      for (int r = 0; r < spec.repeats; ++r) {
        for (const auto& ds : spec.datasets) {
          FoldConfiguration cfg = stratified_configuration(ds.p, ds.n, spec.k);
          bundle.insert(bundle.end(), cfg.begin(), cfg.end());
        }
      }
      return fn(canonical(std::move(bundle)));
    }
    case ExperimentSpec::Folding::Unknown: {
      // Every repetition re-folds independently: the candidate space is the
      // product over datasets and repetitions.
      size_t slots = spec.datasets.size() * static_cast<size_t>(spec.repeats);
      std::vector<FoldConfiguration> chosen;
      chosen.reserve(slots);
      return product_recurse(spec, opts, 0, slots, chosen, fn);
    }
  }
  return true;
}

}  // namespace scoreforge
