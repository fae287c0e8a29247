#pragma once

#include <cstdint>
#include <variant>

#include "qdrive/qubit.hpp"

namespace qdrive {

// Thermal boson mode, described by its mean occupation <n>_T.
class ThermalEnvironment {
 public:
  explicit ThermalEnvironment(double mean_occupation);

  // <n>_T = 1 / (exp(x) - 1) with x = hbar*omega / (k_B*T) > 0.
  static ThermalEnvironment from_energy_ratio(double hbar_omega_over_kt);

  double mean_occupation() const noexcept { return mean_occupation_; }
  // <n>/(1 + <n>), the geometric weight of the thermal distribution.
  double boltzmann_ratio() const noexcept {
    return mean_occupation_ / (1.0 + mean_occupation_);
  }

 private:
  double mean_occupation_;
};

// Qubit coupled to the mode through g (b + b^dag) sigma_z.
struct DephasingModel {
  double coupling = 1.0;
  ThermalEnvironment environment{0.0};

  DephasingModel(double g, ThermalEnvironment env);
};

// Qubit coupled resonantly through g (b sigma_+ + b^dag sigma_-).
struct JaynesCummingsModel {
  double coupling = 1.0;
  ThermalEnvironment environment{0.0};

  JaynesCummingsModel(double g, ThermalEnvironment env);
};

using DecoherenceModel = std::variant<DephasingModel, JaynesCummingsModel>;

struct SeriesOptions {
  double tolerance = 0.0;  // 0 selects the per-series default
  std::uint64_t term_cap = 1'000'000;
};

inline constexpr double kDephasingSeriesTol = 1e-12;
inline constexpr double kJcSeriesTol = 1e-10;

struct SeriesResult {
  double value = 0.0;
  std::uint64_t terms = 0;
  double tail_bound = 0.0;  // bound on the neglected remainder
};

// L_n(x) by the three-term recurrence.
double laguerre(std::uint32_t n, double x);

// Coherence factor A_T(t), closed form exp(-2 (gt)^2 (1 + 2<n>)).
double dephasing_factor(const DephasingModel& model, double gt);

// Same quantity from the thermal Laguerre series
//   exp(-2(gt)^2)/(1+<n>) sum_n s^n L_n(4 (gt)^2),  s = <n>/(1+<n>).
// |L_n(x)| <= exp(x/2) bounds the remainder after n terms by s^(n+1).
// Throws NumericalError when term_cap is reached first.
SeriesResult dephasing_factor_series(const DephasingModel& model, double gt,
                                     const SeriesOptions& opts = {});

// <perp|rho_t|perp> = 1 - 2 (1 - A_T) w (1 - w), with w = |<0|perp>|^2.
double dephasing_diagonal(const DephasingModel& model, double gt, double w);

// Off-diagonal entries in the computational basis scaled by A_T(t);
// populations untouched.
DensityMatrix dephasing_channel(const DensityMatrix& rho,
                                const DephasingModel& model, double gt);

struct DephasingLimits {
  double low_temperature = 1.0;
  double high_temperature = 1.0;
};
DephasingLimits dephasing_limits(double w, double gt);

// Thermal Jaynes-Cummings diagonal element for the initial state perp with
// w = |<0|perp>|^2. Each summand is bounded by 1.5, so the remainder after
// n terms is at most 1.5 s^(n+1) / (1 - s).
SeriesResult jc_diagonal_series(const JaynesCummingsModel& model, double gt,
                                double w, const SeriesOptions& opts = {});
double jc_diagonal(const JaynesCummingsModel& model, double gt, double w,
                   const SeriesOptions& opts = {});

enum class RegionClass { White, Grey, Black };
const char* to_string(RegionClass r) noexcept;

// White >= 1/2, Grey in (1/4, 1/2), Black <= 1/4.
RegionClass classify_region(double value);

}  // namespace qdrive
