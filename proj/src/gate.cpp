#include "qcf/gate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcf/errors.hpp"
#include "qcf/rng.hpp"

namespace qcf {

namespace {

constexpr int kMaxGateArity = 12;

void check_arity(int arity) {
  if (arity < 1 || arity > kMaxGateArity) {
    throw ConfigurationError("gate arity " + std::to_string(arity) + " outside [1, " +
                             std::to_string(kMaxGateArity) + "]");
  }
}

}  // namespace

GateMatrix::GateMatrix(int arity, std::vector<Complex> entries)
    : arity_(arity), entries_(std::move(entries)) {
  check_arity(arity_);
  if (entries_.size() != dimension() * dimension()) {
    throw DomainError("gate of arity " + std::to_string(arity_) + " needs " +
                      std::to_string(dimension() * dimension()) + " entries, got " +
                      std::to_string(entries_.size()));
  }
  const double defect = unitarity_defect();
  if (!(defect <= kUnitarityTolerance)) {
    throw DomainError("gate is not unitary (max |U^dag U - I| = " + std::to_string(defect) + ")");
  }
}

GateMatrix GateMatrix::identity(int arity) {
  check_arity(arity);
  const std::size_t d = std::size_t{1} << arity;
  std::vector<Complex> m(d * d);
  for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
  return GateMatrix(Trusted{}, arity, std::move(m));
}

GateMatrix GateMatrix::adjoint() const {
  const std::size_t d = dimension();
  std::vector<Complex> m(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m[c * d + r] = std::conj(entries_[r * d + c]);
  }
  return GateMatrix(Trusted{}, arity_, std::move(m));
}

double GateMatrix::unitarity_defect() const {
  const std::size_t d = dimension();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < d; ++r) acc += std::conj(entries_[r * d + i]) * entries_[r * d + j];
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

GateMatrix random_unitary(int arity, Rng& rng) {
  check_arity(arity);
  const std::size_t d = std::size_t{1} << arity;
  // Column-major Ginibre sample, orthonormalized column by column. Modified
  // Gram-Schmidt leaves a positive-diagonal R, which makes Q Haar-distributed.
  std::vector<std::vector<Complex>> cols(d, std::vector<Complex>(d));
  for (auto& col : cols) {
    for (auto& z : col) z = Complex(rng.normal(), rng.normal());
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Complex proj = 0.0;
      for (std::size_t r = 0; r < d; ++r) proj += std::conj(cols[i][r]) * cols[j][r];
      for (std::size_t r = 0; r < d; ++r) cols[j][r] -= proj * cols[i][r];
    }
    double norm = 0.0;
    for (const auto& z : cols[j]) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : cols[j]) z /= norm;
  }
  std::vector<Complex> m(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m[r * d + c] = cols[c][r];
  }
  return GateMatrix(arity, std::move(m));
}

namespace gates {

GateMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return GateMatrix(1, {s, s, s, -s});
}

GateMatrix pauli_x() { return GateMatrix(1, {0.0, 1.0, 1.0, 0.0}); }

GateMatrix phase(double theta) { return GateMatrix(1, {1.0, 0.0, 0.0, std::polar(1.0, theta)}); }

GateMatrix rotation(double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return GateMatrix(1, {c, -s, s, c});
}

GateMatrix controlled(const GateMatrix& single) {
  if (single.arity() != 1) throw DomainError("controlled() expects a single-qubit gate");
  // Local index = control + 2 * target.
  std::vector<Complex> m(16);
  m[0 * 4 + 0] = 1.0;
  m[2 * 4 + 2] = 1.0;
  for (std::size_t t_out = 0; t_out < 2; ++t_out) {
    for (std::size_t t_in = 0; t_in < 2; ++t_in) m[(1 + 2 * t_out) * 4 + (1 + 2 * t_in)] = single(t_out, t_in);
  }
  return GateMatrix(2, std::move(m));
}

GateMatrix cnot() { return controlled(pauli_x()); }

GateMatrix controlled_phase(double theta) {
  std::vector<Complex> m(16);
  m[0] = m[5] = m[10] = 1.0;
  m[15] = std::polar(1.0, theta);
  return GateMatrix(2, std::move(m));
}

GateMatrix swap() {
  std::vector<Complex> m(16);
  m[0 * 4 + 0] = m[1 * 4 + 2] = m[2 * 4 + 1] = m[3 * 4 + 3] = 1.0;
  return GateMatrix(2, std::move(m));
}

}  // namespace gates

}  // namespace qcf
