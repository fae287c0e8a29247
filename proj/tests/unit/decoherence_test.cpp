#include "qdrive/decoherence.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

namespace qdrive {
namespace {

DephasingModel dephasing(double mean_n) {
  return {1.0, ThermalEnvironment(mean_n)};
}
JaynesCummingsModel jc(double mean_n) {
  return {1.0, ThermalEnvironment(mean_n)};
}

// Quad-precision summation of the Jaynes-Cummings series with the summand
// expanded into squared cosines before evaluation:
//   w^2 C0 + 2 w (1-w) c0 c1 + (1-w)^2 C1 + w (1-w) (2 - C0 - C1),
// Ck = cos^2(sqrt(n+k) gt). Stops when the bound is 10x under `tol`.
double jc_high_precision(double mean_n, double gt, double w, double tol) {
  using quad = boost::multiprecision::cpp_bin_float_quad;
  const quad nbar = mean_n;
  const quad s = nbar / (1 + nbar);
  const quad qw = w;
  const quad qgt = gt;
  quad sum = 0;
  quad weight = 1;
  for (int n = 0;; ++n) {
    const quad c0 = cos(sqrt(quad(n)) * qgt);
    const quad c1 = cos(sqrt(quad(n + 1)) * qgt);
    const quad C0 = c0 * c0;
    const quad C1 = c1 * c1;
    const quad term = qw * qw * C0 + 2 * qw * (1 - qw) * c0 * c1 +
                      (1 - qw) * (1 - qw) * C1 +
                      qw * (1 - qw) * (2 - C0 - C1);
    sum += weight * term;
    weight *= s;
    if (s == 0 || 1.5 * weight * (1 + nbar) < tol / 10) break;
  }
  return static_cast<double>(sum / (1 + nbar));
}

TEST(Thermal, OccupationFromEnergyRatio) {
  EXPECT_NEAR(ThermalEnvironment::from_energy_ratio(std::log(2.0))
                  .mean_occupation(),
              1.0, 1e-12);
  // Monotone increasing in temperature, i.e. decreasing in the ratio.
  double prev = 0.0;
  for (double x = 5.0; x > 0.01; x *= 0.8) {
    const double n = ThermalEnvironment::from_energy_ratio(x).mean_occupation();
    EXPECT_GT(n, prev);
    prev = n;
  }
  EXPECT_THROW(ThermalEnvironment(-0.1), DomainError);
  EXPECT_THROW(ThermalEnvironment::from_energy_ratio(0.0), DomainError);
  EXPECT_THROW(DephasingModel(0.0, ThermalEnvironment(1.0)), DomainError);
  EXPECT_THROW(JaynesCummingsModel(-1.0, ThermalEnvironment(1.0)),
               DomainError);
}

TEST(Laguerre, Examples) {
  EXPECT_EQ(laguerre(0, 17.3), 1.0);
  EXPECT_EQ(laguerre(1, 2.0), -1.0);
  EXPECT_NEAR(oracle::laguerre_coefficients(5, 3.7), -0.20530891666666667,
              1e-15);
  EXPECT_NEAR(laguerre(5, 3.7), oracle::laguerre_coefficients(5, 3.7), 1e-10);
}

TEST(Laguerre, MatchesCoefficientSumOnGrid) {
  for (std::uint32_t n = 0; n <= 12; ++n) {
    for (double x = 0.0; x <= 6.0; x += 0.25) {
      EXPECT_NEAR(laguerre(n, x), oracle::laguerre_coefficients(n, x), 1e-10)
          << "n=" << n << " x=" << x;
    }
  }
}

TEST(DephasingFactor, Examples) {
  for (double n : {0.0, 1.0, 50.0}) {
    EXPECT_DOUBLE_EQ(dephasing_factor(dephasing(n), 0.0), 1.0);
    EXPECT_NEAR(dephasing_factor_series(dephasing(n), 0.0).value, 1.0, 1e-12);
  }
  EXPECT_NEAR(dephasing_factor_series(dephasing(0.0), 0.5).value,
              0.6065306597126334, 1e-12);
  EXPECT_NEAR(dephasing_factor_series(dephasing(1.0), 0.5).value,
              0.22313016014842982, 1e-9);
  EXPECT_NEAR(dephasing_factor(dephasing(1.0), 0.5), 0.22313016014842982,
              1e-15);
}

TEST(DephasingFactor, SeriesMatchesGeneratingFunction) {
  for (double n : {0.0, 0.5, 1.0, 10.0, 100.0}) {
    for (int i = 0; i <= 24; ++i) {
      const double gt = 3.0 * i / 24.0;
      const auto r = dephasing_factor_series(dephasing(n), gt);
      EXPECT_NEAR(r.value, oracle::dephasing_closed_form(n, gt), 1e-9)
          << "n=" << n << " gt=" << gt;
      EXPECT_LT(r.tail_bound, kDephasingSeriesTol);
    }
  }
}

TEST(DephasingFactor, TermCapCarriesPartialSum) {
  try {
    dephasing_factor_series(dephasing(100.0), 1.0, {1e-12, 10});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.terms(), 10u);
    EXPECT_TRUE(std::isfinite(e.partial_sum()));
  }
}

TEST(DephasingDiagonal, Examples) {
  for (double w : {0.0, 0.3, 0.5, 1.0}) {
    EXPECT_DOUBLE_EQ(dephasing_diagonal(dephasing(3.0), 0.0, w), 1.0);
  }
  for (double gt : {0.1, 1.0, 5.0}) {
    EXPECT_DOUBLE_EQ(dephasing_diagonal(dephasing(3.0), gt, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(dephasing_diagonal(dephasing(3.0), gt, 1.0), 1.0);
  }
  EXPECT_NEAR(dephasing_diagonal(dephasing(1.0), 0.5, 0.5), 0.6115650800742149,
              1e-12);
  EXPECT_THROW(dephasing_diagonal(dephasing(1.0), 0.5, 1.2), DomainError);
}

TEST(DephasingDiagonal, NeverBelowOneHalf) {
  for (double n : {0.0, 0.5, 1.0, 10.0, 1000.0}) {
    for (double gt = 0.0; gt <= 10.0; gt += 0.1) {
      for (double w = 0.0; w <= 1.0; w += 0.05) {
        EXPECT_GE(dephasing_diagonal(dephasing(n), gt, w), 0.5 - 1e-12);
      }
    }
  }
}

TEST(DephasingChannel, Examples) {
  const auto rho = projector(PureState::plus());
  const auto same = dephasing_channel(rho, dephasing(2.0), 0.0);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(same.entries()[i] - rho.entries()[i]), 0.0, 1e-15);
  }
  const auto flat = dephasing_channel(rho, dephasing(2.0), 10.0);
  EXPECT_NEAR(flat(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(flat(0, 1)), 0.0, 1e-15);
}

TEST(DephasingChannel, ReproducesDiagonalElement) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    const auto perp = PureState::normalized({g(rng), g(rng)}, {g(rng), g(rng)});
    const double w = std::norm(perp.amplitude0());
    for (double n : {0.0, 1.0, 20.0}) {
      for (double gt = 0.0; gt <= 2.0; gt += 0.2) {
        const auto rho_t = dephasing_channel(projector(perp), dephasing(n), gt);
        // Populations in the computational basis are untouched.
        EXPECT_NEAR(rho_t(0, 0).real(), w, 1e-12);
        EXPECT_NEAR(expectation(perp, rho_t),
                    dephasing_diagonal(dephasing(n), gt, w), 1e-10);
      }
    }
  }
}

TEST(DephasingLimits, Examples) {
  auto l = dephasing_limits(0.3, 0.0);
  EXPECT_DOUBLE_EQ(l.low_temperature, 1.0);
  EXPECT_DOUBLE_EQ(l.high_temperature, 1.0);
  l = dephasing_limits(0.5, 50.0);
  EXPECT_NEAR(l.low_temperature, 0.5, 1e-15);
  EXPECT_NEAR(l.high_temperature, 0.5, 1e-15);
  for (double w = 0.0; w <= 1.0; w += 0.1) {
    for (double gt = 0.0; gt <= 3.0; gt += 0.1) {
      const auto lim = dephasing_limits(w, gt);
      EXPECT_NEAR(lim.low_temperature,
                  dephasing_diagonal(dephasing(0.0), gt, w), 1e-10);
      EXPECT_GE(lim.low_temperature, 0.5 - 1e-12);
      EXPECT_GE(lim.high_temperature, 0.5 - 1e-12);
      // High temperature is approached from above as <n> grows.
      if (gt > 0.5) {
        EXPECT_NEAR(dephasing_diagonal(dephasing(1e4), gt, w),
                    lim.high_temperature, 1e-10);
      }
    }
  }
}

TEST(JcDiagonal, Examples) {
  for (double n : {0.0, 1.0, 100.0}) {
    for (double w : {0.0, 0.4, 1.0}) {
      EXPECT_NEAR(jc_diagonal(jc(n), 0.0, w), 1.0, 1e-10);
    }
  }
  EXPECT_NEAR(jc_diagonal(jc(0.0), std::numbers::pi / 2, 0.0), 0.0, 1e-15);
  // Frozen from an independent arbitrary-precision evaluation.
  const double oracle = jc_high_precision(1.0, 1.0, 0.5, kJcSeriesTol);
  EXPECT_NEAR(oracle, 0.65998377290350258, 1e-10);
  EXPECT_NEAR(jc_diagonal(jc(1.0), 1.0, 0.5), oracle, 1e-8);
}

TEST(JcDiagonal, MatchesHighPrecisionOracle) {
  for (double n : {0.0, 0.3, 1.0, 5.0, 40.0}) {
    for (double gt : {0.3, 1.7, 4.2, 9.5}) {
      for (double w : {0.0, 0.25, 0.5, 1.0}) {
        EXPECT_NEAR(jc_diagonal(jc(n), gt, w),
                    jc_high_precision(n, gt, w, kJcSeriesTol), 1e-9)
            << "n=" << n << " gt=" << gt << " w=" << w;
      }
    }
  }
}

TEST(JcDiagonal, VacuumRabi) {
  for (double gt = 0.0; gt <= 2 * std::numbers::pi; gt += 0.01) {
    const double c = std::cos(gt);
    EXPECT_NEAR(jc_diagonal(jc(0.0), gt, 0.0), c * c, 1e-10);
  }
}

TEST(JcDiagonal, BoundedEverywhere) {
  for (double n : {0.0, 0.5, 1.0, 10.0, 100.0}) {
    for (double gt = 0.0; gt <= 10.0; gt += 0.37) {
      for (double w = 0.0; w <= 1.0; w += 0.1) {
        const double v = jc_diagonal(jc(n), gt, w);
        EXPECT_GE(v, -1e-10);
        EXPECT_LE(v, 1.0 + 1e-10);
      }
    }
  }
}

TEST(JcDiagonal, BlackZonesAtLowTemperature) {
  double lowest = 1.0;
  for (double gt = 0.0; gt <= 10.0; gt += 0.05) {
    for (double w = 0.0; w <= 1.0; w += 0.02) {
      lowest = std::min(lowest, jc_diagonal(jc(1.0), gt, w));
    }
  }
  EXPECT_LT(lowest, 0.25);
}

TEST(JcDiagonal, DoublingTermCapStaysWithinTailBound) {
  for (double n : {0.5, 3.0, 30.0}) {
    for (double gt : {0.7, 2.9, 8.1}) {
      const auto r = jc_diagonal_series(jc(n), gt, 0.3);
      try {
        // A vanishing tolerance is never met, so the cap stops the sum.
        jc_diagonal_series(jc(n), gt, 0.3, {1e-300, 2 * r.terms});
        FAIL();
      } catch (const NumericalError& e) {
        EXPECT_LE(std::abs(e.partial_sum() - r.value), r.tail_bound);
      }
    }
  }
}

TEST(JcDiagonal, TermCapError) {
  EXPECT_THROW(jc_diagonal(jc(100.0), 1.0, 0.5, {1e-10, 100}), NumericalError);
}

TEST(Region, Classification) {
  EXPECT_EQ(classify_region(0.8), RegionClass::White);
  EXPECT_EQ(classify_region(0.5), RegionClass::White);
  EXPECT_EQ(classify_region(0.3), RegionClass::Grey);
  EXPECT_EQ(classify_region(0.25), RegionClass::Black);
  EXPECT_EQ(classify_region(0.0), RegionClass::Black);
  EXPECT_THROW(classify_region(1.01), DomainError);
  EXPECT_THROW(classify_region(-0.01), DomainError);
  EXPECT_STREQ(to_string(RegionClass::Grey), "grey");
}

}  // namespace
}  // namespace qdrive
