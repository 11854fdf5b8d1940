#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcf/measurement.hpp"
#include "qcf/rng.hpp"
#include "qcf/state.hpp"

namespace qcf {

inline constexpr int kMaxQftQubits = 14;

/// Unitary-only circuit: an ordered list of local gates.
struct GateProgram {
  int num_qubits = 0;
  std::vector<GateStep> gates;

  std::size_t gate_count() const { return gates.size(); }

  StateVector run(StateVector state, OpCounter* counter = nullptr) const;

  /// Reversed program of adjoint gates.
  GateProgram inverse() const;
};

/// Hadamard / controlled-phase cascade followed by floor(n/2) swaps; maps
/// |j> to sum_k exp(2 pi i jk / 2^n) |k> / sqrt(2^n).
GateProgram qft_program(int num_qubits);

/// n(n+1)/2 + floor(n/2).
std::uint64_t qft_gate_count(int num_qubits);

enum class FftDirection { Forward, Inverse };

/// Unitary DFT with kernel exp(+2 pi i jk / N) / sqrt(N) (Forward) or its
/// inverse, computed by recursive radix-2 decimation in time. The counter
/// records one multiplication per butterfly twiddle plus one per output
/// for the normalization.
std::vector<Complex> dft_oracle(std::span<const Complex> input, FftDirection direction = FftDirection::Forward,
                                OpCounter* counter = nullptr);

/// Max entrywise error between the simulated QFT and dft_oracle over
/// `trials` random states.
double verify_qft(int num_qubits, int trials, Rng& rng);

struct QftCountRow {
  int n;
  std::uint64_t qft_gates;
  std::uint64_t fft_complex_mults;
};

struct QftReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_error = 0.0;
  std::uint64_t gate_count = 0;
  std::vector<QftCountRow> scaling;  // n = 2..12
};

/// verify_qft plus the gate-count versus FFT-count table.
QftReport run_qft_verify(int num_qubits, int trials, std::uint64_t seed);

}  // namespace qcf
