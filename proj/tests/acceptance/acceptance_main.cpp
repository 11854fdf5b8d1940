// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qcf/bench.hpp"
#include "qcf/cli.hpp"
#include "qcf/measurement.hpp"
#include "qcf/protocols.hpp"
#include "qcf/qft.hpp"

using namespace qcf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double prob(const BranchDistribution& dist, const std::vector<std::pair<std::string, int>>& want) {
  double p = 0.0;
  for (const auto& b : dist.branches) {
    bool match = true;
    for (const auto& [label, bit] : want) match = match && b.bit(label) == bit;
    if (match) p += b.probability;
  }
  return p;
}

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome mz_without_detector() {
  const auto dist = enumerate_branches(mach_zehnder(false));
  const double f = prob(dist, {{"path", 0}});
  const double g = prob(dist, {{"path", 1}});
  return {std::abs(f - 1.0) <= 1e-12 && std::abs(g) <= 1e-12, fmt("P(F)=%.15g", f) + fmt(" P(G)=%.3g", g)};
}

Outcome mz_with_detector() {
  const auto dist = enumerate_branches(mach_zehnder(true));
  double worst = 0.0;
  for (int path = 0; path < 2; ++path) {
    for (int det = 0; det < 2; ++det) worst = std::max(worst, std::abs(prob(dist, {{"path", path}, {"detector", det}}) - 0.25));
    worst = std::max(worst, std::abs(prob(dist, {{"path", path}}) - 0.5));
  }
  return {worst <= 1e-12, fmt("max deviation %.3g", worst)};
}

Outcome basic_r1() {
  const auto dist = enumerate_branches(basic_counterfactual(ComputerModel{1}));
  double worst = 0.0;
  double free = 0.0;
  for (int sw = 0; sw < 2; ++sw) {
    for (int out = 0; out < 2; ++out) worst = std::max(worst, std::abs(prob(dist, {{"switch", sw}, {"output", out}}) - 0.25));
  }
  for (const auto& b : dist.branches) {
    if (classify_history(b, kBasic, 1) == OutcomeClass::LearnedR1Free) free += b.probability;
  }
  return {worst <= 1e-12 && std::abs(free - 0.25) <= 1e-12,
          fmt("max deviation %.3g", worst) + fmt(", P(LearnedR1_Free)=%.15g", free)};
}

Outcome basic_r0() {
  const double on = prob(enumerate_branches(basic_counterfactual(ComputerModel{0})), {{"switch", 1}});
  return {std::abs(on) <= 1e-15, fmt("P(on)=%.3g", on)};
}

Outcome zeno_r1() {
  double worst = 0.0;
  bool records_ok = true;
  for (int n = 1; n <= 64; ++n) {
    const auto dist = enumerate_branches(zeno_counterfactual(ComputerModel{1}, ZenoConfig::with_stages(n)));
    const double c = std::cos(std::numbers::pi / (2.0 * n));
    worst = std::max(worst, std::abs(dist.kept_probability() - std::pow(c * c, n)));
    for (const auto& b : dist.branches) {
      if (b.discarded) continue;
      for (int s = 1; s <= n; ++s) records_ok = records_ok && b.bit("output" + std::to_string(s)) == 0;
      records_ok = records_ok && b.bit("switch") == 0;
    }
  }
  return {worst <= 1e-12 && records_ok,
          fmt("N=1..64 max |kept - formula| = %.3g", worst) + (records_ok ? ", kept records ok" : ", BAD kept record")};
}

Outcome zeno_r0() {
  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 64; ++n) {
    const auto dist = enumerate_branches(zeno_counterfactual(ComputerModel{0}, ZenoConfig::with_stages(n)));
    int kept = 0;
    for (const auto& b : dist.branches) {
      if (b.discarded) continue;
      ++kept;
      worst = std::max(worst, std::abs(b.probability - 1.0));
      ok = ok && b.bit("switch") == 1;
    }
    ok = ok && kept == 1;
  }
  return {ok && worst <= 1e-12, fmt("N=1..64 single kept branch, max |p-1| = %.3g", worst)};
}

Outcome stage_count() {
  int scanned = 1;
  for (;; ++scanned) {
    const double c = std::cos(std::numbers::pi / (2.0 * scanned));
    if (std::pow(c * c, scanned) >= 0.9) break;
  }
  const int chosen = choose_stage_count(0.1);
  return {chosen == 24 && scanned == 24, "choose_stage_count=" + std::to_string(chosen) + " scan=" + std::to_string(scanned)};
}

Outcome dense_local_equivalence() {
  Rng rng(20240601);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(n, 3)));
    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) qubits[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) std::swap(qubits[static_cast<std::size_t>(i)], qubits[i + rng() % static_cast<std::uint64_t>(n - i)]);
    qubits.resize(static_cast<std::size_t>(k));
    const auto s = random_state(n, rng);
    const auto u = random_unitary(k, rng);
    const auto local = apply_local(s, u, qubits);
    const auto dense = apply_dense(s, embed_gate(u, qubits, n));
    worst = std::max(worst, max_abs_diff(local.amplitudes(), dense.amplitudes()));
  }
  return {worst < 1e-12, fmt("200 cases, max entrywise error %.3g", worst)};
}

Outcome qft_oracle() {
  Rng rng(99);
  double worst = 0.0;
  bool counts = true;
  for (int n = 1; n <= 10; ++n) {
    worst = std::max(worst, verify_qft(n, 20, rng));
    counts = counts && qft_program(n).gate_count() == static_cast<std::size_t>(n * (n + 1) / 2 + n / 2);
  }
  return {worst < 1e-10 && counts, fmt("n=1..10 x 20 states, max error %.3g", worst) + (counts ? ", gate counts exact" : ", BAD gate count")};
}

Outcome count_laws() {
  bool ok = true;
  for (int n = 2; n <= 10; ++n) {
    OpCounter local, dense;
    const auto s = zero_state(n);
    (void)apply_local(s, gates::hadamard(), std::vector{n / 2}, &local);
    (void)apply_dense(s, embed_gate(gates::hadamard(), std::vector{n / 2}, n), &dense);
    ok = ok && local.complex_mults == (std::uint64_t{1} << (n + 1)) && dense.complex_mults == (std::uint64_t{1} << (2 * n));
  }
  BenchConfig cfg;
  cfg.n_max = 10;
  cfg.k_max = 4;
  cfg.timing = false;
  const auto ratios = bench_local_vs_dense(cfg).ratios();
  std::map<std::pair<int, int>, double> by_nk;
  for (const auto& r : ratios) by_nk[{r.n, r.k}] = r.ratio;
  bool monotone = true;
  for (const auto& [nk, ratio] : by_nk) {
    const auto [n, k] = nk;
    if (auto it = by_nk.find({n, k - 1}); it != by_nk.end()) monotone = monotone && it->second < ratio;
    if (auto it = by_nk.find({n - 1, k}); it != by_nk.end()) monotone = monotone && ratio < it->second;
  }
  return {ok && monotone, std::string(ok ? "counts exact for n=2..10" : "COUNT MISMATCH") +
                              (monotone ? ", ratio monotone" : ", ratio NOT monotone")};
}

Outcome chi_squared() {
  constexpr int kSamples = 100000;
  const auto program = basic_counterfactual(ComputerModel{1});
  const auto exact = enumerate_branches(program);
  Rng rng(424242);
  std::map<std::pair<int, int>, double> observed;
  for (int i = 0; i < kSamples; ++i) {
    const auto b = sample_history(program, rng);
    observed[{b.bit("switch"), b.bit("output")}] += 1.0;
  }
  double stat = 0.0;
  for (const auto& b : exact.branches) {
    const double e = b.probability * kSamples;
    const double o = observed[{b.bit("switch"), b.bit("output")}];
    stat += (o - e) * (o - e) / e;
  }
  constexpr double kCritical = 16.266;  // chi^2, df = 3, upper 0.001
  return {stat < kCritical, fmt("chi2=%.4g", stat) + fmt(" < %.5g", kCritical)};
}

Outcome cli_determinism() {
  const std::vector<std::vector<std::string>> invocations{
      {"qcf", "mz", "--json", "--seed", "3"},
      {"qcf", "mz", "--detector", "--mode", "sample", "--trials", "20000", "--seed", "3", "--csv"},
      {"qcf", "basic", "--r", "1", "--mode", "exact", "--json", "--seed", "3"},
      {"qcf", "basic", "--r", "1", "--mode", "sample", "--trials", "50000", "--seed", "3", "--json"},
      {"qcf", "zeno", "--r", "1", "--N", "20", "--mode", "exact", "--json", "--seed", "3"},
      {"qcf", "zeno", "--r", "1", "--epsilon", "0.1", "--mode", "sample", "--trials", "5000", "--seed", "3"},
      {"qcf", "zeno", "--r", "0", "--N", "8", "--csv", "--seed", "3"},
      {"qcf", "qft-verify", "--n", "8", "--seed", "3", "--json"},
      {"qcf", "bench", "--n-max", "8", "--k-max", "3", "--no-timing", "--seed", "3", "--csv"},
  };
  int identical = 0;
  for (const auto& args : invocations) {
    std::ostringstream a, b, err;
    const int ca = run_cli(args, a, err);
    const int cb = run_cli(args, b, err);
    if (ca == kExitOk && cb == kExitOk && !a.str().empty() && a.str() == b.str()) ++identical;
  }
  return {identical == static_cast<int>(invocations.size()),
          std::to_string(identical) + "/" + std::to_string(invocations.size()) + " invocations byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1  Mach-Zehnder without detector", mz_without_detector},
      {"2  Mach-Zehnder with detector", mz_with_detector},
      {"3  basic scheme r=1", basic_r1},
      {"4  basic scheme r=0", basic_r0},
      {"5  Zeno r=1 keep probability", zeno_r1},
      {"6  Zeno r=0", zeno_r0},
      {"7  stage count for epsilon=0.1", stage_count},
      {"8  local/dense equivalence", dense_local_equivalence},
      {"9  QFT vs classical DFT", qft_oracle},
      {"10 multiplication count laws", count_laws},
      {"11 sampling chi-squared", chi_squared},
      {"12 CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %-36s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
