#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcf/gate.hpp"

namespace qcf {

inline constexpr int kMaxQubits = 28;
inline constexpr int kDenseLimit = 12;
inline constexpr double kNormTolerance = 1e-12;

struct OpCounter {
  std::uint64_t complex_mults = 0;
  std::uint64_t complex_adds = 0;
};

/// Normalized amplitudes over the 2^n computational basis states.
/// Bit q of a basis index is the value of qubit q (qubit 0 is the LSB).
class StateVector {
 public:
  /// Takes ownership of `amplitudes`; length must be 2^n with n in
  /// [1, kMaxQubits] and the norm within 1e-10 of one. The stored vector is
  /// rescaled to unit norm.
  explicit StateVector(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t index) const { return amplitudes_[index]; }

  double norm_squared() const;

 private:
  struct Trusted {};
  StateVector(Trusted, int num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  friend StateVector zero_state(int);
  friend StateVector basis_state(int, std::uint64_t);
  friend StateVector apply_local(StateVector, const GateMatrix&, std::span<const int>, OpCounter*);
  friend StateVector apply_dense(const StateVector&, const GateMatrix&, OpCounter*);
  friend StateVector project_qubit(StateVector, int, int);

  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

StateVector zero_state(int num_qubits);
StateVector basis_state(int num_qubits, std::uint64_t index);

/// Normalized Gaussian random state.
StateVector random_state(int num_qubits, Rng& rng);

/// Applies `gate` to `targets` with identity on the remaining qubits, without
/// forming the full matrix. Costs 4^k * 2^(n-k) complex multiplications.
StateVector apply_local(StateVector state, const GateMatrix& gate, std::span<const int> targets,
                        OpCounter* counter = nullptr);

/// Full 2^n x 2^n matrix of `gate` on `targets` tensored with identity.
/// Throws ResourceError above kDenseLimit qubits.
GateMatrix embed_gate(const GateMatrix& gate, std::span<const int> targets, int num_qubits);

/// Plain matrix-vector product; costs 4^n complex multiplications.
StateVector apply_dense(const StateVector& state, const GateMatrix& full,
                        OpCounter* counter = nullptr);

/// Zeroes every amplitude whose bit `qubit` differs from `bit` and
/// renormalizes. Throws InvariantError if the surviving norm is below 1e-15.
StateVector project_qubit(StateVector state, int qubit, int bit);

/// Largest entrywise |a_i - b_i|; states must have equal dimension.
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace qcf
