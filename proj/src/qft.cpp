#include "qcf/qft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qcf/errors.hpp"

namespace qcf {

namespace {

void fft_recursive(std::span<Complex> data, double sign, OpCounter* counter) {
  const std::size_t n = data.size();
  if (n == 1) return;
  std::vector<Complex> even(n / 2), odd(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i) {
    even[i] = data[2 * i];
    odd[i] = data[2 * i + 1];
  }
  fft_recursive(even, sign, counter);
  fft_recursive(odd, sign, counter);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const Complex twiddle = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    const Complex t = twiddle * odd[k];
    data[k] = even[k] + t;
    data[k + n / 2] = even[k] - t;
  }
  if (counter != nullptr) {
    counter->complex_mults += n / 2;
    counter->complex_adds += n;
  }
}

}  // namespace

StateVector GateProgram::run(StateVector state, OpCounter* counter) const {
  if (state.num_qubits() != num_qubits) throw DomainError("program and state qubit counts differ");
  for (const auto& g : gates) state = apply_local(std::move(state), g.gate, g.targets, counter);
  return state;
}

GateProgram GateProgram::inverse() const {
  GateProgram inv{num_qubits, {}};
  inv.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) inv.gates.push_back(GateStep{it->gate.adjoint(), it->targets});
  return inv;
}

GateProgram qft_program(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQftQubits) {
    throw ConfigurationError("QFT qubit count " + std::to_string(num_qubits) + " outside [1, " +
                             std::to_string(kMaxQftQubits) + "]");
  }
  GateProgram program{num_qubits, {}};
  // Most significant qubit first; qubit c < j contributes phase 2 pi / 2^(j-c+1).
  for (int j = num_qubits - 1; j >= 0; --j) {
    program.gates.push_back(GateStep{gates::hadamard(), {j}});
    for (int c = j - 1; c >= 0; --c) {
      const double theta = 2.0 * std::numbers::pi / std::ldexp(1.0, j - c + 1);
      program.gates.push_back(GateStep{gates::controlled_phase(theta), {c, j}});
    }
  }
  for (int q = 0; q < num_qubits / 2; ++q) program.gates.push_back(GateStep{gates::swap(), {q, num_qubits - 1 - q}});
  return program;
}

std::uint64_t qft_gate_count(int num_qubits) {
  const auto n = static_cast<std::uint64_t>(num_qubits);
  return n * (n + 1) / 2 + n / 2;
}

std::vector<Complex> dft_oracle(std::span<const Complex> input, FftDirection direction, OpCounter* counter) {
  if (input.empty() || !std::has_single_bit(input.size())) {
    throw DomainError("DFT length " + std::to_string(input.size()) + " is not a power of two");
  }
  std::vector<Complex> data(input.begin(), input.end());
  fft_recursive(data, direction == FftDirection::Forward ? 1.0 : -1.0, counter);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& z : data) z *= scale;
  if (counter != nullptr) counter->complex_mults += data.size();
  return data;
}

double verify_qft(int num_qubits, int trials, Rng& rng) {
  if (num_qubits < 1 || num_qubits > kDenseLimit) {
    throw ConfigurationError("qft verification supports 1 to " + std::to_string(kDenseLimit) + " qubits");
  }
  if (trials < 1) throw ConfigurationError("qft verification needs at least one trial");
  const GateProgram program = qft_program(num_qubits);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const StateVector input = random_state(num_qubits, rng);
    const StateVector simulated = program.run(input);
    const std::vector<Complex> expected = dft_oracle(input.amplitudes());
    worst = std::max(worst, max_abs_diff(simulated.amplitudes(), expected));
  }
  return worst;
}

QftReport run_qft_verify(int num_qubits, int trials, std::uint64_t seed) {
  Rng rng(seed);
  QftReport report;
  report.n = num_qubits;
  report.trials = trials;
  report.seed = seed;
  report.max_error = verify_qft(num_qubits, trials, rng);
  report.gate_count = qft_program(num_qubits).gate_count();
  for (int n = 2; n <= kDenseLimit; ++n) {
    OpCounter fft;
    const std::vector<Complex> impulse = [&] {
      std::vector<Complex> v(std::size_t{1} << n);
      v[0] = 1.0;
      return v;
    }();
    (void)dft_oracle(impulse, FftDirection::Forward, &fft);
    report.scaling.push_back({n, qft_program(n).gate_count(), fft.complex_mults});
  }
  return report;
}

}  // namespace qcf
