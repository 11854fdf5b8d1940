#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qcf {

using Complex = std::complex<double>;

inline constexpr double kUnitarityTolerance = 1e-10;

class Rng;

/// Unitary matrix acting on `arity` qubits, stored row-major.
///
/// Local index convention: bit j of a row/column index is the value of the
/// j-th entry of the target list the gate is applied to. A controlled gate
/// applied to targets {c, t} therefore sees the control as bit 0.
class GateMatrix {
 public:
  /// Validates shape and unitarity (U†U = I within kUnitarityTolerance).
  GateMatrix(int arity, std::vector<Complex> entries);

  static GateMatrix identity(int arity);

  int arity() const { return arity_; }
  std::size_t dimension() const { return std::size_t{1} << arity_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dimension() + col];
  }
  std::span<const Complex> entries() const { return entries_; }

  GateMatrix adjoint() const;

  /// Largest entrywise deviation of U†U from the identity.
  double unitarity_defect() const;

 private:
  struct Trusted {};
  GateMatrix(Trusted, int arity, std::vector<Complex> entries)
      : arity_(arity), entries_(std::move(entries)) {}

  friend GateMatrix embed_gate(const GateMatrix&, std::span<const int>, int);

  int arity_;
  std::vector<Complex> entries_;
};

/// Haar-distributed random unitary (QR of a complex Ginibre matrix).
GateMatrix random_unitary(int arity, Rng& rng);

namespace gates {

GateMatrix hadamard();
GateMatrix pauli_x();
/// diag(1, e^{i theta}).
GateMatrix phase(double theta);
/// [[cos a, -sin a], [sin a, cos a]]: |0> -> cos a|0> + sin a|1>.
GateMatrix rotation(double alpha);
/// Two-qubit gate; target order {control, target}.
GateMatrix controlled(const GateMatrix& single);
GateMatrix cnot();
/// Two-qubit diag(1, 1, 1, e^{i theta}); symmetric in its targets.
GateMatrix controlled_phase(double theta);
GateMatrix swap();

}  // namespace gates

}  // namespace qcf
