#include "qcf/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qcf/errors.hpp"
#include "qcf/rng.hpp"

namespace qcf {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw ConfigurationError("qubit count " + std::to_string(n) + " outside [1, " +
                             std::to_string(kMaxQubits) + "]");
  }
}

void check_targets(std::span<const int> targets, int num_qubits, int arity) {
  if (static_cast<int>(targets.size()) != arity) {
    throw DomainError("gate of arity " + std::to_string(arity) + " given " +
                      std::to_string(targets.size()) + " targets");
  }
  std::uint64_t seen = 0;
  for (int t : targets) {
    if (t < 0 || t >= num_qubits) {
      throw DomainError("target qubit " + std::to_string(t) + " outside [0, " +
                        std::to_string(num_qubits) + ")");
    }
    if (seen & (std::uint64_t{1} << t)) throw DomainError("duplicate target qubit " + std::to_string(t));
    seen |= std::uint64_t{1} << t;
  }
}

// offsets[l] is the basis-index displacement selecting local index l.
std::vector<std::size_t> local_offsets(std::span<const int> targets) {
  std::vector<std::size_t> offsets(std::size_t{1} << targets.size());
  for (std::size_t l = 0; l < offsets.size(); ++l) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if ((l >> j) & 1U) off |= std::size_t{1} << targets[j];
    }
    offsets[l] = off;
  }
  return offsets;
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : num_qubits_(0), amplitudes_(std::move(amplitudes)) {
  const std::size_t dim = amplitudes_.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw DomainError("amplitude count " + std::to_string(dim) + " is not a power of two >= 2");
  }
  num_qubits_ = std::countr_zero(dim);
  check_qubit_count(num_qubits_);
  const double norm2 = norm_squared();
  if (!(std::abs(norm2 - 1.0) <= 1e-10)) {
    throw DomainError("amplitudes are not normalized (norm^2 = " + std::to_string(norm2) + ")");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes_) a *= scale;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

StateVector zero_state(int num_qubits) { return basis_state(num_qubits, 0); }

StateVector basis_state(int num_qubits, std::uint64_t index) {
  check_qubit_count(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw DomainError("basis index " + std::to_string(index) + " outside [0, " + std::to_string(dim) + ")");
  }
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(StateVector::Trusted{}, num_qubits, std::move(amps));
}

StateVector random_state(int num_qubits, Rng& rng) {
  check_qubit_count(num_qubits);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = Complex(rng.normal(), rng.normal());
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= scale;
  return StateVector(std::move(amps));
}

StateVector apply_local(StateVector state, const GateMatrix& gate, std::span<const int> targets,
                        OpCounter* counter) {
  const int n = state.num_qubits();
  const int k = gate.arity();
  check_targets(targets, n, k);

  auto& amps = state.amplitudes_;
  const std::size_t d = gate.dimension();
  const std::size_t blocks = amps.size() >> k;

  if (k == 1) {
    // Pairs (i, i + stride) with bit t clear in i.
    const std::size_t stride = std::size_t{1} << targets[0];
    const Complex u00 = gate(0, 0), u01 = gate(0, 1), u10 = gate(1, 0), u11 = gate(1, 1);
    for (std::size_t hi = 0; hi < amps.size(); hi += 2 * stride) {
      for (std::size_t i = hi; i < hi + stride; ++i) {
        const Complex a0 = amps[i];
        const Complex a1 = amps[i + stride];
        amps[i] = u00 * a0 + u01 * a1;
        amps[i + stride] = u10 * a0 + u11 * a1;
      }
    }
  } else {
    const std::vector<std::size_t> offsets = local_offsets(targets);
    std::vector<int> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    const Complex* u = gate.entries().data();
    std::vector<Complex> in(d);
    for (std::size_t b = 0; b < blocks; ++b) {
      // Spread b over the non-target bit positions.
      std::size_t base = b;
      for (int t : sorted) {
        const std::size_t low = base & ((std::size_t{1} << t) - 1);
        base = ((base >> t) << (t + 1)) | low;
      }
      for (std::size_t l = 0; l < d; ++l) in[l] = amps[base + offsets[l]];
      for (std::size_t r = 0; r < d; ++r) {
        Complex acc = 0.0;
        const Complex* row = u + r * d;
        for (std::size_t c = 0; c < d; ++c) acc += row[c] * in[c];
        amps[base + offsets[r]] = acc;
      }
    }
  }

  if (counter != nullptr) {
    counter->complex_mults += blocks * d * d;
    counter->complex_adds += blocks * d * (d - 1);
  }
  return state;
}

GateMatrix embed_gate(const GateMatrix& gate, std::span<const int> targets, int num_qubits) {
  check_qubit_count(num_qubits);
  check_targets(targets, num_qubits, gate.arity());
  if (num_qubits > kDenseLimit) {
    throw ResourceError("dense embedding of " + std::to_string(num_qubits) + " qubits exceeds limit " +
                        std::to_string(kDenseLimit));
  }
  const std::vector<std::size_t> offsets = local_offsets(targets);
  std::size_t target_mask = 0;
  for (auto off : offsets) target_mask |= off;

  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t d = gate.dimension();
  std::vector<Complex> full(dim * dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t local_col = 0;
    for (std::size_t j = 0; j < targets.size(); ++j) local_col |= ((col >> targets[j]) & 1U) << j;
    const std::size_t rest = col & ~target_mask;
    for (std::size_t local_row = 0; local_row < d; ++local_row) {
      full[(rest | offsets[local_row]) * dim + col] = gate(local_row, local_col);
    }
  }
  return GateMatrix(GateMatrix::Trusted{}, num_qubits, std::move(full));
}

StateVector apply_dense(const StateVector& state, const GateMatrix& full, OpCounter* counter) {
  if (full.arity() != state.num_qubits()) {
    throw DomainError("dense gate on " + std::to_string(full.arity()) + " qubits applied to a " +
                      std::to_string(state.num_qubits()) + "-qubit state");
  }
  const std::size_t dim = state.dimension();
  const Complex* m = full.entries().data();
  std::vector<Complex> out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    Complex acc = 0.0;
    const Complex* row = m + r * dim;
    for (std::size_t c = 0; c < dim; ++c) acc += row[c] * state.amplitudes_[c];
    out[r] = acc;
  }
  if (counter != nullptr) {
    counter->complex_mults += dim * dim;
    counter->complex_adds += dim * (dim - 1);
  }
  return StateVector(StateVector::Trusted{}, state.num_qubits(), std::move(out));
}

StateVector project_qubit(StateVector state, int qubit, int bit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw DomainError("qubit " + std::to_string(qubit) + " outside [0, " +
                      std::to_string(state.num_qubits()) + ")");
  }
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t want = bit != 0 ? mask : 0;
  double kept = 0.0;
  for (std::size_t i = 0; i < state.amplitudes_.size(); ++i) {
    if ((i & mask) == want) {
      kept += std::norm(state.amplitudes_[i]);
    } else {
      state.amplitudes_[i] = 0.0;
    }
  }
  if (!(kept >= 1e-15)) throw InvariantError("projection onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : state.amplitudes_) a *= scale;
  return state;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DomainError("dimension mismatch in max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace qcf
