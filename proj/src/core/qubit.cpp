#include "qdrive/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qdrive {

namespace {

double norm_squared(complex a0, complex a1) {
  return std::norm(a0) + std::norm(a1);
}

DensityMatrix::Entries entries_from_bloch(const BlochVector& r) {
  return {complex(0.5 * (1.0 + r[2]), 0.0), complex(0.5 * r[0], -0.5 * r[1]),
          complex(0.5 * r[0], 0.5 * r[1]), complex(0.5 * (1.0 - r[2]), 0.0)};
}

}  // namespace

PureState::PureState(complex amplitude0, complex amplitude1)
    : a0_(amplitude0), a1_(amplitude1) {
  const double n2 = norm_squared(a0_, a1_);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kAlgebraTol) {
    std::ostringstream os;
    os << "state is not normalized (norm^2 = " << n2 << ")";
    throw ValidationError(os.str());
  }
}

PureState PureState::normalized(complex amplitude0, complex amplitude1) {
  const double n = std::sqrt(norm_squared(amplitude0, amplitude1));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError("cannot normalize a zero or non-finite vector");
  }
  return {amplitude0 / n, amplitude1 / n};
}

PureState PureState::plus() {
  return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
}

PureState PureState::minus() {
  return {std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0};
}

PureState PureState::with_population(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainError("population must lie in [0, 1]");
  }
  return {std::sqrt(c), std::sqrt(1.0 - c)};
}

DensityMatrix DensityMatrix::from_entries(const Entries& e) {
  for (const auto& z : e) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("density matrix has non-finite entries");
    }
  }
  if (std::abs(e[0].imag()) > kAlgebraTol ||
      std::abs(e[3].imag()) > kAlgebraTol ||
      std::abs(e[1] - std::conj(e[2])) > kAlgebraTol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  const double tr = e[0].real() + e[3].real();
  if (std::abs(tr - 1.0) > kAlgebraTol) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", expected 1";
    throw ValidationError(os.str());
  }
  const complex off = 0.5 * (e[1] + std::conj(e[2]));
  BlochVector r{2.0 * off.real(), -2.0 * off.imag(), e[0].real() - e[3].real()};
  const double len = std::hypot(r[0], r[1], r[2]);
  // Smallest eigenvalue is (1 - |r|)/2.
  const double min_eig = 0.5 * (1.0 - len);
  if (min_eig < -kAlgebraTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << min_eig;
    throw ValidationError(os.str());
  }
  if (len > 1.0) {
    for (auto& x : r) x /= len;
    return DensityMatrix(entries_from_bloch(r));
  }
  return DensityMatrix({complex(e[0].real(), 0.0), off, std::conj(off),
                        complex(e[3].real(), 0.0)});
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix({0.5, 0.0, 0.0, 0.5});
}

std::array<double, 2> DensityMatrix::eigenvalues() const noexcept {
  const double a = m_[0].real();
  const double d = m_[3].real();
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(m_[1]));
  return {0.5 * (a + d - disc), 0.5 * (a + d + disc)};
}

OrthonormalBasis::OrthonormalBasis(PureState first, PureState second)
    : first_(first), second_(second) {
  if (std::abs(overlap(first_, second_)) > kAlgebraTol) {
    throw ValidationError("basis members are not orthogonal");
  }
}

OrthonormalBasis OrthonormalBasis::computational() {
  return {PureState::zero(), PureState::one()};
}

OrthonormalBasis OrthonormalBasis::completing(const PureState& psi) {
  return {psi, orthogonal_complement(psi)};
}

complex overlap(const PureState& a, const PureState& b) {
  return std::conj(a.amplitude0()) * b.amplitude0() +
         std::conj(a.amplitude1()) * b.amplitude1();
}

double expectation(const PureState& psi, const DensityMatrix& rho) {
  complex acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      acc += std::conj(psi[i]) * rho(i, j) * psi[j];
    }
  }
  const double p = acc.real();
  if (p < -kAlgebraTol || p > 1.0 + kAlgebraTol) {
    throw ValidationError("expectation value outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

DensityMatrix projector(const PureState& psi) {
  const complex a = psi.amplitude0();
  const complex b = psi.amplitude1();
  return DensityMatrix::from_entries(
      {a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b)});
}

PureState orthogonal_complement(const PureState& psi) {
  // (-conj(b), conj(a)) is orthogonal to (a, b); rotate its global phase so
  // the |0> amplitude becomes |b| >= 0.
  const complex b = psi.amplitude1();
  const double mag = std::abs(b);
  if (mag == 0.0) return PureState::one();
  const complex phase = -b / mag;  // phase * (-conj(b)) = |b|
  return {mag, std::conj(psi.amplitude0()) * phase};
}

DensityMatrix from_bloch(const BlochVector& r) {
  const double len = std::hypot(r[0], r[1], r[2]);
  if (!std::isfinite(len) || len > 1.0 + kAlgebraTol) {
    throw ValidationError("Bloch vector longer than 1");
  }
  if (len > 1.0) {
    return DensityMatrix(
        entries_from_bloch({r[0] / len, r[1] / len, r[2] / len}));
  }
  return DensityMatrix(entries_from_bloch(r));
}

BlochVector to_bloch(const DensityMatrix& rho) {
  const complex off = rho(1, 0);
  return {2.0 * off.real(), 2.0 * off.imag(),
          rho(0, 0).real() - rho(1, 1).real()};
}

}  // namespace qdrive
