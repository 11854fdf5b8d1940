#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcf/measurement.hpp"

namespace qcf {

/// Idealised computer answering a decision problem with result `r`.
/// Acts on (switch, output) as |on>|y> -> |on>|y xor r>, |off>|y> -> |off>|y>.
/// `duration` is the nominal running time; it is reported, never waited on.
struct ComputerModel {
  int r = 0;
  double duration = 1.0;

  /// Two-qubit gate on targets {switch, output}.
  GateMatrix evolution() const;
};

/// |off> -> cos a|off> + sin a|on>, |on> -> -sin a|off> + cos a|on>.
struct SwitchRotation {
  double alpha;
  GateMatrix matrix() const { return gates::rotation(alpha); }
};

struct ZenoConfig {
  int stages = 1;
  std::optional<double> epsilon;

  /// pi / (2N), recomputed on every use.
  double alpha() const;

  static ZenoConfig with_stages(int stages);
  /// Smallest stage count whose keep-all probability reaches 1 - epsilon.
  static ZenoConfig for_epsilon(double epsilon);
};

// Qubit layout shared by the counterfactual programs.
inline constexpr int kSwitchQubit = 0;
inline constexpr int kOutputQubit = 1;
// Mach-Zehnder layout.
inline constexpr int kPathQubit = 0;
inline constexpr int kDetectorQubit = 1;

inline constexpr std::string_view kMachZehnder = "mz";
inline constexpr std::string_view kBasic = "basic";
inline constexpr std::string_view kZeno = "zeno";

/// Path qubit: |U> = |0>, |L> = |1> before H2 and |F> = |0>, |G> = |1> after.
/// Both beamsplitters are Hadamards: U -> (F + G)/sqrt2, L -> (F - G)/sqrt2.
/// The optional detector is an ancilla flipped when the photon takes L.
MeasurementProgram mach_zehnder(bool detector_present);

/// Switch in (|off> + |on>)/sqrt2, one run of the computer, Hadamard on the
/// switch, then measure switch ("switch") and output ("output").
MeasurementProgram basic_counterfactual(const ComputerModel& computer);

/// N rounds of rotate / run / read output (discarding on 1), then a final
/// switch measurement. Output readings are labelled "output1".."outputN".
MeasurementProgram zeno_counterfactual(const ComputerModel& computer, const ZenoConfig& config);

/// (cos^2(pi/2N))^N.
double zeno_keep_probability(int stages);

int choose_stage_count(double epsilon);

enum class OutcomeClass { LearnedR1Free, LearnedR1Computed, LearnedR0Computed, Inconclusive, Discarded };

std::string_view to_string(OutcomeClass c);

/// Classifies a history by its measurement record alone. A history is
/// "free" when every output reading is 0 and the record certifies r = 1.
/// Throws DomainError for protocols other than basic and zeno.
OutcomeClass classify_history(const Branch& branch, std::string_view protocol, int r);

/// Whether the record shows the computation ran: any output reading of 1, or
/// a Zeno run that ended with the switch on.
bool computation_ran(const Branch& branch, std::string_view protocol);

enum class RunMode { Exact, Sampled };

std::string_view to_string(RunMode m);

struct OutcomeRow {
  std::vector<std::pair<std::string, std::string>> labels;  // label -> symbol
  double probability = 0.0;                                // exact mode
  std::uint64_t count = 0;                                 // sampled mode
  std::optional<OutcomeClass> outcome_class;
  bool computation_ran = false;
  bool discarded = false;
};

struct Marginal {
  std::string label;
  std::vector<std::pair<std::string, double>> values;  // symbol -> probability
};

struct ProtocolReport {
  std::string protocol;
  std::optional<int> r;
  std::optional<bool> detector;
  RunMode mode = RunMode::Exact;
  std::uint64_t seed = 0;
  std::optional<int> stages;
  std::optional<double> epsilon;
  std::optional<double> duration;
  std::optional<double> p_keep_all;
  std::vector<OutcomeRow> outcomes;
  std::vector<Marginal> marginals;
  double counterfactual_free_probability = 0.0;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> restarts;
  std::optional<std::uint64_t> gave_up;
  std::optional<bool> discarded_attempt_ran;
  std::optional<double> would_have_exploded;

  double total_probability() const;
};

inline constexpr std::uint64_t kDefaultRestartCap = 1000;

struct RunOptions {
  RunMode mode = RunMode::Exact;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100000;
  std::uint64_t restart_cap = kDefaultRestartCap;
};

ProtocolReport run_mach_zehnder(bool detector_present, const RunOptions& options);
ProtocolReport run_basic(const ComputerModel& computer, const RunOptions& options);
ProtocolReport run_zeno(const ComputerModel& computer, const ZenoConfig& config, const RunOptions& options);

}  // namespace qcf
