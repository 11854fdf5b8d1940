#include "qcf/protocols.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "qcf/errors.hpp"

namespace qcf {

namespace {

const std::array<std::string, 2> kPathSymbols{"F", "G"};
const std::array<std::string, 2> kDetectorSymbols{"M0", "M1"};
const std::array<std::string, 2> kSwitchSymbols{"off", "on"};

constexpr int kMaxStages = 100000;

void check_bit(int r) {
  if (r != 0 && r != 1) throw DomainError("computation result r must be 0 or 1");
}

void check_stages(int stages) {
  if (stages < 1 || stages > kMaxStages) {
    throw ConfigurationError("stage count " + std::to_string(stages) + " outside [1, " +
                             std::to_string(kMaxStages) + "]");
  }
}

std::string output_label(int stage) { return "output" + std::to_string(stage); }

bool any_output_one(const Branch& branch) {
  for (const auto& rec : branch.record) {
    if (rec.label.starts_with("output") && rec.bit == 1) return true;
  }
  return false;
}

OutcomeRow make_row(const Branch& branch, const MeasurementProgram& program, std::string_view protocol,
                    std::optional<int> r) {
  OutcomeRow row;
  for (const auto& rec : branch.record) row.labels.emplace_back(rec.label, program.symbols(rec.label)[rec.bit]);
  row.discarded = branch.discarded;
  if (protocol != kMachZehnder) {
    row.outcome_class = classify_history(branch, protocol, *r);
    row.computation_ran = computation_ran(branch, protocol);
  }
  return row;
}

// Sampled rows are keyed by their rendered record so ordering is stable.
std::string row_key(const OutcomeRow& row) {
  std::string key;
  for (const auto& [label, symbol] : row.labels) key += label + "=" + symbol + ";";
  return key + (row.discarded ? "discarded" : "");
}

void fill_exact(ProtocolReport& report, const MeasurementProgram& program, std::optional<int> r) {
  const BranchDistribution dist = enumerate_branches(program);
  double exploded = 0.0;
  for (const auto& branch : dist.branches) {
    OutcomeRow row = make_row(branch, program, report.protocol, r);
    row.probability = branch.probability;
    if (row.outcome_class == OutcomeClass::LearnedR1Free) report.counterfactual_free_probability += row.probability;
    if (r == 1 && row.computation_ran) exploded += row.probability;
    report.outcomes.push_back(std::move(row));
  }
  if (r.has_value()) report.would_have_exploded = exploded;
  if (std::abs(dist.total_probability() - 1.0) > 1e-10) {
    throw InvariantError("enumerated probabilities sum to " + std::to_string(dist.total_probability()));
  }
}

// Runs `trials` independent histories (with restart-on-discard when
// `restart_cap` > 0) and aggregates them into count rows.
void fill_sampled(ProtocolReport& report, const MeasurementProgram& program, std::optional<int> r,
                  const RunOptions& options, bool restart_on_discard) {
  if (options.trials == 0) throw ConfigurationError("sampled mode needs at least one trial");
  Rng rng(options.seed);
  std::map<std::string, OutcomeRow> rows;
  std::uint64_t free_count = 0;
  std::uint64_t exploded_trials = 0;
  std::uint64_t attempts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t gave_up = 0;
  bool discarded_ran = false;

  for (std::uint64_t t = 0; t < options.trials; ++t) {
    bool exploded = false;
    std::uint64_t restarts_this_trial = 0;
    for (;;) {
      Branch branch = sample_history(program, rng);
      ++attempts;
      OutcomeRow row = make_row(branch, program, report.protocol, r);
      if (r == 1 && row.computation_ran) exploded = true;
      const bool retry = restart_on_discard && branch.discarded && restarts_this_trial < options.restart_cap;
      if (branch.discarded && row.computation_ran) discarded_ran = true;
      if (retry) {
        ++restarts_this_trial;
        continue;
      }
      if (branch.discarded && restart_on_discard) ++gave_up;
      if (row.outcome_class == OutcomeClass::LearnedR1Free) ++free_count;
      const std::string key = row_key(row);
      auto [it, inserted] = rows.try_emplace(key, std::move(row));
      ++it->second.count;
      break;
    }
    restarts += restarts_this_trial;
    if (exploded) ++exploded_trials;
  }

  const double n = static_cast<double>(options.trials);
  for (auto& [key, row] : rows) {
    row.probability = static_cast<double>(row.count) / n;
    report.outcomes.push_back(std::move(row));
  }
  report.trials = options.trials;
  report.counterfactual_free_probability = static_cast<double>(free_count) / n;
  if (r.has_value()) report.would_have_exploded = static_cast<double>(exploded_trials) / n;
  if (restart_on_discard) {
    report.restarts = restarts;
    report.gave_up = gave_up;
    report.discarded_attempt_ran = discarded_ran;
    report.p_keep_all = static_cast<double>(options.trials - gave_up) / static_cast<double>(attempts);
  }
}

}  // namespace

GateMatrix ComputerModel::evolution() const {
  check_bit(r);
  return r == 1 ? gates::cnot() : GateMatrix::identity(2);
}

double ZenoConfig::alpha() const { return std::numbers::pi / (2.0 * stages); }

ZenoConfig ZenoConfig::with_stages(int stages) {
  check_stages(stages);
  return ZenoConfig{stages, std::nullopt};
}

ZenoConfig ZenoConfig::for_epsilon(double epsilon) { return ZenoConfig{choose_stage_count(epsilon), epsilon}; }

MeasurementProgram mach_zehnder(bool detector_present) {
  MeasurementProgram program(detector_present ? 2 : 1);
  program.gate(gates::hadamard(), {kPathQubit});
  if (detector_present) program.gate(gates::cnot(), {kPathQubit, kDetectorQubit});
  program.gate(gates::hadamard(), {kPathQubit});
  program.measure(kPathQubit, "path", kPathSymbols);
  if (detector_present) program.measure(kDetectorQubit, "detector", kDetectorSymbols);
  return program;
}

MeasurementProgram basic_counterfactual(const ComputerModel& computer) {
  MeasurementProgram program(2);
  program.gate(gates::hadamard(), {kSwitchQubit})
      .gate(computer.evolution(), {kSwitchQubit, kOutputQubit})
      .gate(gates::hadamard(), {kSwitchQubit})
      .measure(kSwitchQubit, "switch", kSwitchSymbols)
      .measure(kOutputQubit, "output");
  return program;
}

MeasurementProgram zeno_counterfactual(const ComputerModel& computer, const ZenoConfig& config) {
  check_stages(config.stages);
  const GateMatrix rotate = SwitchRotation{config.alpha()}.matrix();
  const GateMatrix run = computer.evolution();
  MeasurementProgram program(2);
  for (int stage = 1; stage <= config.stages; ++stage) {
    program.gate(rotate, {kSwitchQubit})
        .gate(run, {kSwitchQubit, kOutputQubit})
        .measure(kOutputQubit, output_label(stage))
        .discard_if(output_label(stage), 1);
  }
  program.measure(kSwitchQubit, "switch", kSwitchSymbols);
  return program;
}

double zeno_keep_probability(int stages) {
  check_stages(stages);
  const double c = std::cos(std::numbers::pi / (2.0 * stages));
  return std::pow(c * c, stages);
}

int choose_stage_count(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  for (int n = 1; n <= kMaxStages; ++n) {
    if (zeno_keep_probability(n) >= 1.0 - epsilon) return n;
  }
  throw ConfigurationError("epsilon " + std::to_string(epsilon) + " needs more than " +
                           std::to_string(kMaxStages) + " stages");
}

std::string_view to_string(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::LearnedR1Free: return "LearnedR1_Free";
    case OutcomeClass::LearnedR1Computed: return "LearnedR1_Computed";
    case OutcomeClass::LearnedR0Computed: return "LearnedR0_Computed";
    case OutcomeClass::Inconclusive: return "Inconclusive";
    case OutcomeClass::Discarded: return "Discarded";
  }
  return "?";
}

std::string_view to_string(RunMode m) { return m == RunMode::Exact ? "exact" : "sample"; }

OutcomeClass classify_history(const Branch& branch, std::string_view protocol, int r) {
  check_bit(r);
  if (protocol == kBasic) {
    const int sw = branch.bit("switch");
    const int out = branch.bit("output");
    if (sw < 0 || out < 0) throw DomainError("basic history is missing switch or output record");
    if (out == 1) return OutcomeClass::LearnedR1Computed;
    return sw == 1 ? OutcomeClass::LearnedR1Free : OutcomeClass::Inconclusive;
  }
  if (protocol == kZeno) {
    if (branch.discarded) return OutcomeClass::Discarded;
    const int sw = branch.bit("switch");
    if (sw < 0) throw DomainError("zeno history is missing the final switch record");
    if (any_output_one(branch)) return OutcomeClass::LearnedR1Computed;
    return sw == 0 ? OutcomeClass::LearnedR1Free : OutcomeClass::LearnedR0Computed;
  }
  throw DomainError("no classification for protocol '" + std::string(protocol) + "'");
}

bool computation_ran(const Branch& branch, std::string_view protocol) {
  if (any_output_one(branch)) return true;
  return protocol == kZeno && !branch.discarded && branch.bit("switch") == 1;
}

double ProtocolReport::total_probability() const {
  double acc = 0.0;
  for (const auto& row : outcomes) acc += row.probability;
  return acc;
}

ProtocolReport run_mach_zehnder(bool detector_present, const RunOptions& options) {
  const MeasurementProgram program = mach_zehnder(detector_present);
  ProtocolReport report;
  report.protocol = std::string(kMachZehnder);
  report.detector = detector_present;
  report.mode = options.mode;
  report.seed = options.seed;
  if (options.mode == RunMode::Exact) {
    fill_exact(report, program, std::nullopt);
  } else {
    fill_sampled(report, program, std::nullopt, options, false);
  }

  std::vector<std::string> labels{"path"};
  if (detector_present) labels.emplace_back("detector");
  for (const auto& label : labels) {
    const auto& symbols = program.symbols(label);
    Marginal m{label, {{symbols[0], 0.0}, {symbols[1], 0.0}}};
    for (const auto& row : report.outcomes) {
      for (const auto& [l, s] : row.labels) {
        if (l == label) (s == symbols[0] ? m.values[0] : m.values[1]).second += row.probability;
      }
    }
    report.marginals.push_back(std::move(m));
  }
  return report;
}

ProtocolReport run_basic(const ComputerModel& computer, const RunOptions& options) {
  const MeasurementProgram program = basic_counterfactual(computer);
  ProtocolReport report;
  report.protocol = std::string(kBasic);
  report.r = computer.r;
  report.mode = options.mode;
  report.seed = options.seed;
  report.duration = computer.duration;
  if (options.mode == RunMode::Exact) {
    fill_exact(report, program, computer.r);
  } else {
    fill_sampled(report, program, computer.r, options, false);
  }
  return report;
}

ProtocolReport run_zeno(const ComputerModel& computer, const ZenoConfig& config, const RunOptions& options) {
  const MeasurementProgram program = zeno_counterfactual(computer, config);
  ProtocolReport report;
  report.protocol = std::string(kZeno);
  report.r = computer.r;
  report.mode = options.mode;
  report.seed = options.seed;
  report.stages = config.stages;
  report.epsilon = config.epsilon;
  report.duration = computer.duration;
  if (options.mode == RunMode::Exact) {
    fill_exact(report, program, computer.r);
    double kept = 0.0;
    for (const auto& row : report.outcomes) {
      if (!row.discarded) kept += row.probability;
    }
    report.p_keep_all = kept;
  } else {
    fill_sampled(report, program, computer.r, options, true);
  }
  return report;
}

}  // namespace qcf
