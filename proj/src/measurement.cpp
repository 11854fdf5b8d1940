#include "qcf/measurement.hpp"

#include <algorithm>
#include <numeric>

#include "qcf/errors.hpp"

namespace qcf {

namespace {

void check_qubit(int qubit, int num_qubits) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw DomainError("qubit " + std::to_string(qubit) + " outside [0, " + std::to_string(num_qubits) + ")");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool discard_matches(const Branch& branch, const DiscardIfStep& step) {
  return branch.bit(step.label) == step.bit;
}

}  // namespace

OutcomeProbabilities outcome_probabilities(const StateVector& state, int qubit) {
  check_qubit(qubit, state.num_qubits());
  const std::size_t mask = std::size_t{1} << qubit;
  double p0 = 0.0;
  double p1 = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    ((i & mask) != 0 ? p1 : p0) += std::norm(amps[i]);
  }
  // Absorb the norm's roundoff so that p0 + p1 == 1.
  const double total = p0 + p1;
  return {p0 / total, p1 / total};
}

MeasurementResult measure_qubit(const StateVector& state, int qubit, Rng& rng) {
  const auto [p0, p1] = outcome_probabilities(state, qubit);
  int bit;
  if (p0 < kPruneThreshold) {
    bit = 1;
  } else if (p1 < kPruneThreshold) {
    bit = 0;
  } else {
    bit = rng.uniform() < p0 ? 0 : 1;
  }
  const double p = bit == 0 ? p0 : p1;
  if (!(p >= kPruneThreshold)) throw InvariantError("measurement selected a zero-probability outcome");
  return {bit, p, project_qubit(state, qubit, bit)};
}

MeasurementProgram::MeasurementProgram(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw ConfigurationError("program qubit count " + std::to_string(num_qubits) + " out of range");
  }
}

MeasurementProgram& MeasurementProgram::gate(GateMatrix gate, std::vector<int> targets) {
  if (static_cast<int>(targets.size()) != gate.arity()) throw DomainError("gate arity does not match target count");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    check_qubit(targets[i], num_qubits_);
    if (std::find(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(i), targets[i]) !=
        targets.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw DomainError("duplicate target qubit " + std::to_string(targets[i]));
    }
  }
  steps_.emplace_back(GateStep{std::move(gate), std::move(targets)});
  return *this;
}

MeasurementProgram& MeasurementProgram::measure(int qubit, std::string label, std::array<std::string, 2> symbols) {
  check_qubit(qubit, num_qubits_);
  if (label.empty()) throw DomainError("measurement label must not be empty");
  if (has_label(label)) throw DomainError("duplicate measurement label '" + label + "'");
  steps_.emplace_back(MeasureStep{qubit, std::move(label), std::move(symbols)});
  return *this;
}

MeasurementProgram& MeasurementProgram::discard_if(std::string label, int bit) {
  if (!has_label(label)) throw DomainError("discard_if refers to unknown label '" + label + "'");
  if (bit != 0 && bit != 1) throw DomainError("discard_if bit must be 0 or 1");
  steps_.emplace_back(DiscardIfStep{std::move(label), bit});
  return *this;
}

std::size_t MeasurementProgram::measurement_count() const {
  return static_cast<std::size_t>(
      std::count_if(steps_.begin(), steps_.end(), [](const Step& s) { return std::holds_alternative<MeasureStep>(s); }));
}

bool MeasurementProgram::has_label(std::string_view label) const {
  return std::any_of(steps_.begin(), steps_.end(), [&](const Step& s) {
    const auto* m = std::get_if<MeasureStep>(&s);
    return m != nullptr && m->label == label;
  });
}

const std::array<std::string, 2>& MeasurementProgram::symbols(std::string_view label) const {
  for (const auto& s : steps_) {
    if (const auto* m = std::get_if<MeasureStep>(&s); m != nullptr && m->label == label) return m->symbols;
  }
  throw DomainError("unknown measurement label '" + std::string(label) + "'");
}

int Branch::bit(std::string_view label) const {
  for (const auto& r : record) {
    if (r.label == label) return r.bit;
  }
  return -1;
}

double BranchDistribution::total_probability() const {
  return std::accumulate(branches.begin(), branches.end(), 0.0,
                         [](double acc, const Branch& b) { return acc + b.probability; });
}

double BranchDistribution::kept_probability() const {
  double acc = 0.0;
  for (const auto& b : branches) {
    if (!b.discarded) acc += b.probability;
  }
  return acc;
}

double BranchDistribution::discarded_probability() const {
  double acc = 0.0;
  for (const auto& b : branches) {
    if (b.discarded) acc += b.probability;
  }
  return acc;
}

BranchDistribution enumerate_branches(const MeasurementProgram& program, std::size_t branch_limit) {
  std::vector<Branch> live;
  live.push_back(Branch{1.0, {}, zero_state(program.num_qubits()), false});
  std::vector<Branch> finished;

  for (const auto& step : program.steps()) {
    std::vector<Branch> next;
    next.reserve(live.size());
    for (auto& branch : live) {
      std::visit(Overloaded{
                     [&](const GateStep& g) {
                       branch.final_state = apply_local(std::move(branch.final_state), g.gate, g.targets);
                       next.push_back(std::move(branch));
                     },
                     [&](const MeasureStep& m) {
                       const auto [p0, p1] = outcome_probabilities(branch.final_state, m.qubit);
                       const double probs[2] = {p0, p1};
                       for (int bit = 0; bit < 2; ++bit) {
                         if (probs[bit] < kPruneThreshold) continue;
                         Branch child{branch.probability * probs[bit], branch.record,
                                      project_qubit(branch.final_state, m.qubit, bit), false};
                         child.record.push_back({m.label, bit});
                         next.push_back(std::move(child));
                       }
                     },
                     [&](const DiscardIfStep& d) {
                       if (discard_matches(branch, d)) {
                         branch.discarded = true;
                         finished.push_back(std::move(branch));
                       } else {
                         next.push_back(std::move(branch));
                       }
                     },
                 },
                 step);
    }
    if (next.size() + finished.size() > branch_limit) {
      throw ResourceError("branch enumeration exceeds limit of " + std::to_string(branch_limit) + " histories");
    }
    live = std::move(next);
  }

  // Discarded histories are reported in the order they were cut off, after
  // the histories that ran to completion.
  BranchDistribution out;
  out.branches = std::move(live);
  std::move(finished.begin(), finished.end(), std::back_inserter(out.branches));
  return out;
}

Branch sample_history(const MeasurementProgram& program, Rng& rng) {
  Branch branch{1.0, {}, zero_state(program.num_qubits()), false};
  for (const auto& step : program.steps()) {
    bool stop = false;
    std::visit(Overloaded{
                   [&](const GateStep& g) {
                     branch.final_state = apply_local(std::move(branch.final_state), g.gate, g.targets);
                   },
                   [&](const MeasureStep& m) {
                     auto result = measure_qubit(branch.final_state, m.qubit, rng);
                     branch.probability *= result.probability;
                     branch.record.push_back({m.label, result.bit});
                     branch.final_state = std::move(result.state);
                   },
                   [&](const DiscardIfStep& d) {
                     if (discard_matches(branch, d)) {
                       branch.discarded = true;
                       stop = true;
                     }
                   },
               },
               step);
    if (stop) break;
  }
  return branch;
}

}  // namespace qcf
