#pragma once

#include <array>
#include <complex>

#include "qdrive/errors.hpp"

namespace qdrive {

using complex = std::complex<double>;
using BlochVector = std::array<double, 3>;

// Tolerance used for the algebraic identities of 2x2 objects.
inline constexpr double kAlgebraTol = 1e-12;

// Normalized qubit state a0|0> + a1|1>.
class PureState {
 public:
  // Throws ValidationError unless |a0|^2 + |a1|^2 = 1 within kAlgebraTol.
  PureState(complex amplitude0, complex amplitude1);

  // Rescales to unit norm; throws ValidationError on the zero vector.
  static PureState normalized(complex amplitude0, complex amplitude1);

  static PureState zero() { return {1.0, 0.0}; }
  static PureState one() { return {0.0, 1.0}; }
  static PureState plus();
  static PureState minus();

  // sqrt(c)|0> + sqrt(1-c)|1>, so that |<0|psi>|^2 = c.
  static PureState with_population(double c);

  complex amplitude0() const noexcept { return a0_; }
  complex amplitude1() const noexcept { return a1_; }
  complex operator[](int i) const noexcept { return i == 0 ? a0_ : a1_; }

 private:
  complex a0_;
  complex a1_;
};

// 2x2 Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
 public:
  using Entries = std::array<complex, 4>;  // row-major

  // Validates Hermiticity, trace and spectrum. Eigenvalues in [-tol, 0)
  // are clamped to zero; anything further below is rejected.
  static DensityMatrix from_entries(const Entries& entries);

  static DensityMatrix maximally_mixed();

  complex operator()(int row, int col) const noexcept {
    return m_[static_cast<std::size_t>(2 * row + col)];
  }
  const Entries& entries() const noexcept { return m_; }
  double trace() const noexcept { return m_[0].real() + m_[3].real(); }
  std::array<double, 2> eigenvalues() const noexcept;

 private:
  explicit DensityMatrix(const Entries& entries) : m_(entries) {}
  friend DensityMatrix from_bloch(const BlochVector& r);
  Entries m_;
};

class OrthonormalBasis {
 public:
  // Throws ValidationError if |<first|second>| exceeds kAlgebraTol.
  OrthonormalBasis(PureState first, PureState second);

  static OrthonormalBasis computational();
  // {psi, orthogonal_complement(psi)}
  static OrthonormalBasis completing(const PureState& psi);

  const PureState& first() const noexcept { return first_; }
  const PureState& second() const noexcept { return second_; }
  const PureState& operator[](int i) const noexcept {
    return i == 0 ? first_ : second_;
  }

 private:
  PureState first_;
  PureState second_;
};

// <a|b>
complex overlap(const PureState& a, const PureState& b);

// <psi|rho|psi>, clamped to [0, 1].
double expectation(const PureState& psi, const DensityMatrix& rho);

DensityMatrix projector(const PureState& psi);

// Normalized state orthogonal to psi. The |0> amplitude of the result is
// real and nonnegative; when it vanishes the result is exactly |1>.
PureState orthogonal_complement(const PureState& psi);

// rho = (I + r.sigma)/2. Throws ValidationError when |r| > 1 + tol.
DensityMatrix from_bloch(const BlochVector& r);
BlochVector to_bloch(const DensityMatrix& rho);

}  // namespace qdrive
