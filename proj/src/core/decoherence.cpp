#include "qdrive/decoherence.hpp"

#include <cmath>
#include <sstream>

namespace qdrive {

namespace {

void require_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw DomainError("|<0|perp>|^2 must lie in [0, 1]");
  }
}

void require_time(double gt) {
  if (!(gt >= 0.0) || !std::isfinite(gt)) {
    throw DomainError("gt must be finite and >= 0");
  }
}

void require_coupling(double g) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw DomainError("coupling g must be > 0");
  }
}

double resolve_tol(const SeriesOptions& opts, double fallback) {
  if (opts.tolerance < 0.0 || !std::isfinite(opts.tolerance)) {
    throw DomainError("series tolerance must be >= 0");
  }
  return opts.tolerance > 0.0 ? opts.tolerance : fallback;
}

[[noreturn]] void throw_cap(const char* series, double partial,
                            std::uint64_t terms) {
  std::ostringstream os;
  os << series << " series did not converge within " << terms
     << " terms (partial sum " << partial << ")";
  throw NumericalError(os.str(), partial, terms);
}

}  // namespace

ThermalEnvironment::ThermalEnvironment(double mean_occupation)
    : mean_occupation_(mean_occupation) {
  if (!(mean_occupation >= 0.0) || !std::isfinite(mean_occupation)) {
    throw DomainError("mean occupation must be finite and >= 0");
  }
}

ThermalEnvironment ThermalEnvironment::from_energy_ratio(double x) {
  if (!(x > 0.0)) {
    throw DomainError("hbar*omega/(k_B*T) must be > 0");
  }
  return ThermalEnvironment(1.0 / std::expm1(x));
}

DephasingModel::DephasingModel(double g, ThermalEnvironment env)
    : coupling(g), environment(env) {
  require_coupling(g);
}

JaynesCummingsModel::JaynesCummingsModel(double g, ThermalEnvironment env)
    : coupling(g), environment(env) {
  require_coupling(g);
}

double laguerre(std::uint32_t n, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 - x;
  for (std::uint32_t k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double dephasing_factor(const DephasingModel& model, double gt) {
  require_time(gt);
  const double n = model.environment.mean_occupation();
  return std::exp(-2.0 * gt * gt * (1.0 + 2.0 * n));
}

SeriesResult dephasing_factor_series(const DephasingModel& model, double gt,
                                     const SeriesOptions& opts) {
  require_time(gt);
  const double tol = resolve_tol(opts, kDephasingSeriesTol);
  const double s = model.environment.boltzmann_ratio();
  const double x = 4.0 * gt * gt;
  const double prefactor =
      std::exp(-2.0 * gt * gt) / (1.0 + model.environment.mean_occupation());

  // Laguerre recurrence carried along with the series.
  double l_prev = 0.0;
  double l_cur = 1.0;
  double weight = 1.0;  // s^k
  double sum = 0.0;
  for (std::uint64_t k = 0; k < opts.term_cap; ++k) {
    sum += weight * l_cur;
    weight *= s;
    const double tail = weight;  // s^(k+1)
    if (tail < tol) {
      return {prefactor * sum, k + 1, tail};
    }
    const double kd = static_cast<double>(k);
    const double l_next =
        ((2.0 * kd + 1.0 - x) * l_cur - kd * l_prev) / (kd + 1.0);
    l_prev = l_cur;
    l_cur = l_next;
  }
  throw_cap("dephasing", prefactor * sum, opts.term_cap);
}

double dephasing_diagonal(const DephasingModel& model, double gt, double w) {
  require_weight(w);
  const double a = dephasing_factor(model, gt);
  return 1.0 - 2.0 * (1.0 - a) * w * (1.0 - w);
}

DensityMatrix dephasing_channel(const DensityMatrix& rho,
                                const DephasingModel& model, double gt) {
  const double a = dephasing_factor(model, gt);
  auto e = rho.entries();
  e[1] *= a;
  e[2] *= a;
  return DensityMatrix::from_entries(e);
}

DephasingLimits dephasing_limits(double w, double gt) {
  require_weight(w);
  require_time(gt);
  const double coherence = w * (1.0 - w);
  const double delta = gt == 0.0 ? 1.0 : 0.0;
  return {1.0 - 2.0 * (1.0 - std::exp(-2.0 * gt * gt)) * coherence,
          1.0 - 2.0 * (1.0 - delta) * coherence};
}

SeriesResult jc_diagonal_series(const JaynesCummingsModel& model, double gt,
                                double w, const SeriesOptions& opts) {
  require_time(gt);
  require_weight(w);
  const double tol = resolve_tol(opts, kJcSeriesTol);
  const double s = model.environment.boltzmann_ratio();
  const double norm = 1.0 + model.environment.mean_occupation();
  const double mixed = w * (1.0 - w);

  // cos/sin of sqrt(n+1) gt from one term become those of sqrt(n) gt in the
  // next.
  double cos_n = 1.0;
  double sin_n = 0.0;
  double weight = 1.0;
  double sum = 0.0;
  for (std::uint64_t n = 0; n < opts.term_cap; ++n) {
    const double arg = std::sqrt(static_cast<double>(n + 1)) * gt;
    const double cos_n1 = std::cos(arg);
    const double sin_n1 = std::sin(arg);
    const double amp = w * cos_n + (1.0 - w) * cos_n1;
    sum += weight *
           (amp * amp + mixed * (sin_n * sin_n + sin_n1 * sin_n1));
    cos_n = cos_n1;
    sin_n = sin_n1;
    weight *= s;
    const double tail = 1.5 * weight * norm;  // 1.5 s^(n+1) / (1 - s)
    if (tail < tol) {
      return {sum / norm, n + 1, tail};
    }
  }
  throw_cap("Jaynes-Cummings", sum / norm, opts.term_cap);
}

double jc_diagonal(const JaynesCummingsModel& model, double gt, double w,
                   const SeriesOptions& opts) {
  return jc_diagonal_series(model, gt, w, opts).value;
}

const char* to_string(RegionClass r) noexcept {
  switch (r) {
    case RegionClass::White:
      return "white";
    case RegionClass::Grey:
      return "grey";
    case RegionClass::Black:
      return "black";
  }
  return "?";
}

RegionClass classify_region(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("region value must lie in [0, 1]");
  }
  if (value >= 0.5) return RegionClass::White;
  if (value <= 0.25) return RegionClass::Black;
  return RegionClass::Grey;
}

}  // namespace qdrive
