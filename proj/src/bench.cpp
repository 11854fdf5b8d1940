#include "qcf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "qcf/errors.hpp"
#include "qcf/rng.hpp"
#include "qcf/state.hpp"

namespace qcf {

namespace {

template <class F>
std::uint64_t median_nanos(int reps, bool timing, F&& body) {
  std::vector<std::uint64_t> samples;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
  }
  if (!timing) return 0;
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  return samples[samples.size() / 2];
}

std::vector<int> random_targets(int n, int k, Rng& rng) {
  std::vector<int> qubits(static_cast<std::size_t>(n));
  std::iota(qubits.begin(), qubits.end(), 0);
  // Partial Fisher-Yates on the first k slots.
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i));
    std::swap(qubits[static_cast<std::size_t>(i)], qubits[static_cast<std::size_t>(j)]);
  }
  qubits.resize(static_cast<std::size_t>(k));
  return qubits;
}

}  // namespace

std::uint64_t local_mult_count(int n, int k) { return (std::uint64_t{1} << (2 * k)) << (n - k); }

std::uint64_t dense_mult_count(int n) { return std::uint64_t{1} << (2 * n); }

std::string_view to_string(BenchMethod m) { return m == BenchMethod::Local ? "local" : "dense"; }

std::vector<BenchRatio> BenchReport::ratios() const {
  std::vector<BenchRatio> out;
  for (const auto& local : rows) {
    if (local.method != BenchMethod::Local) continue;
    for (const auto& dense : rows) {
      if (dense.method == BenchMethod::Dense && !dense.skipped && dense.n == local.n && dense.k == local.k) {
        out.push_back({local.n, local.k,
                       static_cast<double>(local.complex_mults) / static_cast<double>(dense.complex_mults)});
      }
    }
  }
  return out;
}

BenchReport bench_local_vs_dense(const BenchConfig& config) {
  if (config.reps < 3) throw ConfigurationError("bench needs at least 3 repetitions");
  if (config.n_min < 1 || config.n_max < config.n_min || config.n_max > kMaxQubits) {
    throw ConfigurationError("bench qubit range must satisfy 1 <= n_min <= n_max <= " + std::to_string(kMaxQubits));
  }
  if (config.k_max < 1) throw ConfigurationError("bench k_max must be >= 1");

  BenchReport report;
  report.seed = config.seed;
  report.timed = config.timing;
  Rng rng(config.seed);

  for (int n = config.n_min; n <= config.n_max; ++n) {
    const StateVector state = random_state(n, rng);
    for (int k = 1; k <= std::min(config.k_max, n); ++k) {
      const GateMatrix gate = random_unitary(k, rng);
      const std::vector<int> targets = random_targets(n, k, rng);

      OpCounter local_count;
      const auto local_nanos = median_nanos(config.reps, config.timing, [&] {
        OpCounter c;
        (void)apply_local(state, gate, targets, &c);
        local_count = c;
      });
      if (local_count.complex_mults != local_mult_count(n, k)) {
        throw InvariantError("local kernel count departs from 4^k * 2^(n-k)");
      }
      report.rows.push_back({n, k, BenchMethod::Local, local_count.complex_mults, local_nanos, config.reps});

      if (n > kDenseLimit) {
        report.rows.push_back({n, k, BenchMethod::Dense, 0, 0, 0, true});
        continue;
      }
      const GateMatrix full = embed_gate(gate, targets, n);
      OpCounter dense_count;
      const auto dense_nanos = median_nanos(config.reps, config.timing, [&] {
        OpCounter c;
        (void)apply_dense(state, full, &c);
        dense_count = c;
      });
      if (dense_count.complex_mults != dense_mult_count(n)) {
        throw InvariantError("dense count departs from 4^n");
      }
      report.rows.push_back({n, k, BenchMethod::Dense, dense_count.complex_mults, dense_nanos, config.reps});
    }
  }
  return report;
}

}  // namespace qcf
