#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcf {

enum class BenchMethod { Local, Dense };

struct BenchRow {
  int n;
  int k;
  BenchMethod method;
  std::uint64_t complex_mults;
  std::uint64_t wall_nanos;  // median over reps; 0 when timing is disabled
  int reps;
  bool skipped = false;      // dense path beyond the embedding limit
};

struct BenchRatio {
  int n;
  int k;
  double ratio;  // local / dense multiplication count
};

struct BenchReport {
  std::uint64_t seed = 0;
  bool timed = true;
  std::vector<BenchRow> rows;

  /// One entry per (n, k) where both methods ran, in row order.
  std::vector<BenchRatio> ratios() const;
};

struct BenchConfig {
  int n_min = 1;
  int n_max = 10;
  int k_max = 3;
  int reps = 3;
  std::uint64_t seed = 0;
  bool timing = true;
};

/// 4^k * 2^(n-k).
std::uint64_t local_mult_count(int n, int k);
/// 4^n.
std::uint64_t dense_mult_count(int n);

std::string_view to_string(BenchMethod m);

/// Sweeps (n, k) applying one random k-qubit unitary both through the local
/// kernel and through its dense embedding. Dense rows beyond kDenseLimit are
/// marked skipped. Throws InvariantError if a measured count departs from
/// the closed-form law.
BenchReport bench_local_vs_dense(const BenchConfig& config);

}  // namespace qcf
