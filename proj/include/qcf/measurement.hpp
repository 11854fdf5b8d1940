#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qcf/rng.hpp"
#include "qcf/state.hpp"

namespace qcf {

/// Outcomes whose conditional probability falls below this are dropped.
inline constexpr double kPruneThreshold = 1e-15;
inline constexpr std::size_t kDefaultBranchLimit = std::size_t{1} << 20;

struct OutcomeProbabilities {
  double p0;
  double p1;
};

OutcomeProbabilities outcome_probabilities(const StateVector& state, int qubit);

struct MeasurementResult {
  int bit;
  double probability;
  StateVector state;
};

/// Born-rule sample of `qubit` followed by collapse. Outcomes below
/// kPruneThreshold are never selected.
MeasurementResult measure_qubit(const StateVector& state, int qubit, Rng& rng);

struct GateStep {
  GateMatrix gate;
  std::vector<int> targets;
};

struct MeasureStep {
  int qubit;
  std::string label;
  /// Display names for outcomes 0 and 1 (e.g. "off"/"on").
  std::array<std::string, 2> symbols{"0", "1"};
};

/// Marks the history discarded, and ends it, when `label` recorded `bit`.
struct DiscardIfStep {
  std::string label;
  int bit;
};

using Step = std::variant<GateStep, MeasureStep, DiscardIfStep>;

/// A straight-line sequence of steps starting from |0...0>.
/// Steps are validated as they are appended.
class MeasurementProgram {
 public:
  explicit MeasurementProgram(int num_qubits);

  MeasurementProgram& gate(GateMatrix gate, std::vector<int> targets);
  MeasurementProgram& measure(int qubit, std::string label, std::array<std::string, 2> symbols = {"0", "1"});
  MeasurementProgram& discard_if(std::string label, int bit);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t measurement_count() const;
  /// Symbols of the measurement labelled `label`; throws DomainError if absent.
  const std::array<std::string, 2>& symbols(std::string_view label) const;

 private:
  bool has_label(std::string_view label) const;

  int num_qubits_;
  std::vector<Step> steps_;
};

struct Record {
  std::string label;
  int bit;
};

/// One measurement history.
struct Branch {
  double probability = 1.0;
  std::vector<Record> record;  // in measurement order
  StateVector final_state;
  bool discarded = false;

  /// Recorded bit for `label`, or -1 when the history never reached it.
  int bit(std::string_view label) const;
};

struct BranchDistribution {
  std::vector<Branch> branches;

  double total_probability() const;
  double kept_probability() const;
  double discarded_probability() const;
};

/// Every measurement history of `program` with its exact probability.
/// Discarded histories stop at their DiscardIf step and keep their mass.
/// Throws ResourceError when more than `branch_limit` live histories exist.
BranchDistribution enumerate_branches(const MeasurementProgram& program,
                                      std::size_t branch_limit = kDefaultBranchLimit);

/// One history drawn with probability equal to its enumerated probability.
Branch sample_history(const MeasurementProgram& program, Rng& rng);

}  // namespace qcf
