#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcf/report.hpp"

namespace qcf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Parsed command line for one `qcf` invocation.
struct RunConfig {
  std::string subcommand;
  int r = 0;
  std::optional<int> stages;
  std::optional<double> epsilon;
  double duration = 1.0;
  bool detector = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 100000;
  std::uint64_t restart_cap = 1000;
  RunMode mode = RunMode::Exact;
  Format format = Format::Text;
  int qft_n = 0;
  int n_max = 10;
  int k_max = 3;
  int reps = 3;
  bool timing = true;
};

/// Runs one invocation; `args` includes the program name. Writes exactly one
/// report to `out` on success and nothing to `out` on a usage error.
/// Returns kExitOk, kExitUsage or kExitInternal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcf
