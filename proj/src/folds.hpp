#pragma once

#include "rational.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace scoreforge {

struct Fold {
  long long p = 0, n = 0;
  friend bool operator==(const Fold&, const Fold&) = default;
  friend auto operator<=>(const Fold& a, const Fold& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.n <=> b.n;
  }
};

// Multiset of per-fold (positives, negatives), canonically sorted ascending.
using FoldConfiguration = std::vector<Fold>;

FoldConfiguration canonical(FoldConfiguration folds);

// The unique configuration produced by stratified k-folding: all folds differ
// by at most one sample overall and per class.
FoldConfiguration stratified_configuration(long long p, long long n, int k);

// All multisets of at most m nonnegative parts summing to q with no part
// greater than cap, emitted as zero-padded ascending vectors of length m in a
// deterministic order (increasing part count, then lexicographic). fn returns
// false to stop; the function returns false iff stopped early.
bool partitions(long long q, int m, long long cap,
                const std::function<bool(const std::vector<long long>&)>& fn);

// Every admissible k-fold configuration for a dataset of p positives and n
// negatives, each exactly once as a multiset: fold sizes differ by at most
// one, and each class appears in at least two folds. Deterministic order:
// ascending count of positives placed in the larger folds, then the partition
// generator's order. fn returns false to stop early.
bool enumerate_configurations(long long p, long long n, int k,
                              const std::function<bool(const FoldConfiguration&)>& fn);

uint64_t count_configurations(long long p, long long n, int k);

struct ExperimentSpec {
  struct Dataset {
    long long p = 0, n = 0;
  };
  enum class Folding { Explicit, Stratified, Unknown };

  std::vector<Dataset> datasets;
  int k = 0;
  int repeats = 1;  // N_r
  Folding folding = Folding::Stratified;
  // For Explicit: the union of folds over all datasets of one round.
  FoldConfiguration explicit_folds;
};

struct SomTotals {
  BigInt p, n;
};

// Score-of-means reduction: totals over all evaluation sets and repetitions.
SomTotals som_totals(const ExperimentSpec& spec);

struct BundleOptions {
  // Configurations whose folds would make a reported score undefined are
  // skipped before they are handed to the consumer.
  bool require_positive_folds = false;  // every fold needs p_i >= 1
  bool require_negative_folds = false;  // every fold needs n_i >= 1
};

// Streams candidate fold bundles for the mean-of-scores test: the concatenated
// fold lists over all datasets and repetitions. Known foldings produce exactly
// one bundle; unknown folding streams the Cartesian product of per-dataset
// configuration enumerations. fn returns false to stop early; returns false
// iff stopped early.
bool mos_bundles(const ExperimentSpec& spec, const BundleOptions& opts,
                 const std::function<bool(const FoldConfiguration&)>& fn);

void validate_experiment(const ExperimentSpec& spec);

}  // namespace scoreforge
