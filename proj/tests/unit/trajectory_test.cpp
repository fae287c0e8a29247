#include "qdrive/trajectory.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qdrive/protocols.hpp"

namespace qdrive {
namespace {

TEST(Program, Validation) {
  EXPECT_THROW(ProtocolProgram::mub(1.2, 0.5, 3), DomainError);
  EXPECT_THROW(ProtocolProgram::dm(1.0, {0.5, 1.5}), DomainError);
  EXPECT_THROW(ProtocolProgram::dm_uniform(1.0, 0.5, 0), DomainError);
  ProtocolProgram bad{1.0, DmRounds{{0.1, 0.2}}, 5};
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Enumerate, Examples) {
  EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::mub(1.0, 0.5, 3)), 0.875,
              1e-12);
  EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::mub(0.0, 0.2, 5)), 1.0,
              1e-15);
  EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::dm(0.0, {0.9, 0.9})), 1.0,
              1e-15);
  EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::dm(1.0, {0.15, 0.15})),
              0.9775, 1e-12);
}

TEST(Enumerate, MatchesAnalyticLaws) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> rounds(1, 12);
  for (int i = 0; i < 200; ++i) {
    const double q0 = u(rng);
    const std::uint32_t n = rounds(rng);
    const double c = u(rng);
    const double qt = u(rng);
    EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::mub(q0, c, n)),
                mub_success_probability({q0, c, n}), 1e-12);
    EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::dm_uniform(q0, qt, n)),
                dm_success_probability({q0, qt, n}), 1e-12);
  }
}

TEST(Enumerate, MatchesUnmergedBruteForce) {
  for (std::uint32_t n = 0; n <= 10; ++n) {
    for (double c : {0.1, 0.5, 0.77}) {
      EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::mub(0.6, c, n)),
                  oracle::mub_brute_force(0.6, c, n), 1e-12);
    }
  }
}

TEST(Enumerate, NonUniformIntervals) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double q0 = u(rng);
    std::vector<double> qt(1 + i % 11);
    double product = 1.0;
    for (auto& q : qt) {
      q = u(rng);
      product *= q;
    }
    EXPECT_NEAR(enumerate_outcomes(ProtocolProgram::dm(q0, qt)),
                1.0 - q0 * product, 1e-12);
  }
}

TEST(Enumerate, PathGuard) {
  EXPECT_EQ(outcome_path_count(ProtocolProgram::mub(1.0, 0.5, 3)), 23u);
  EXPECT_EQ(outcome_path_count(ProtocolProgram::dm_uniform(1.0, 0.5, 4)), 5u);
  EXPECT_NO_THROW(enumerate_outcomes(ProtocolProgram::mub(1.0, 0.5, 18)));
  EXPECT_THROW(enumerate_outcomes(ProtocolProgram::mub(1.0, 0.5, 19)),
               ResourceError);
  EXPECT_THROW(enumerate_outcomes(ProtocolProgram::mub(1.0, 0.5, 3), 10),
               ResourceError);
}

TEST(MonteCarlo, DegenerateProbabilities) {
  auto certain = simulate_mc({ProtocolProgram::mub(0.0, 0.5, 2), 1000, 1});
  EXPECT_EQ(certain.estimate, 1.0);
  EXPECT_EQ(certain.standard_error, 0.0);
  auto never = simulate_mc({ProtocolProgram::dm_uniform(1.0, 1.0, 5), 1000, 1});
  EXPECT_EQ(never.estimate, 0.0);
  EXPECT_EQ(never.standard_error, 0.0);
  EXPECT_TRUE(within_sigmas(never, 0.0));
}

TEST(MonteCarlo, NearCertainProgramPassesGate) {
  // Every trial succeeds, so the plug-in error is zero while the exact
  // probability falls short of 1 by ~4e-10.
  const auto program = ProtocolProgram::dm_uniform(0.75, 0.117, 11);
  const double exact = enumerate_outcomes(program);
  ASSERT_LT(exact, 1.0);
  const auto mc = simulate_mc({program, 100'000, 1});
  EXPECT_EQ(mc.estimate, 1.0);
  EXPECT_EQ(mc.standard_error, 0.0);
  EXPECT_TRUE(within_sigmas(mc, exact));
  EXPECT_FALSE(within_sigmas(mc, 0.999));
}

TEST(MonteCarlo, StandardErrorFormula) {
  const auto mc = simulate_mc({ProtocolProgram::mub(1.0, 0.5, 1), 5000, 3});
  EXPECT_DOUBLE_EQ(mc.standard_error,
                   std::sqrt(mc.estimate * (1.0 - mc.estimate) / 5000.0));
  EXPECT_EQ(mc.trials, 5000u);
  EXPECT_EQ(mc.seed, 3u);
}

TEST(MonteCarlo, LongDecoherenceRun) {
  const auto program = ProtocolProgram::dm_uniform(1.0, 0.8, 10);
  const auto mc = simulate_mc({program, 1'000'000, 12345}, 4);
  EXPECT_NEAR(enumerate_outcomes(program), 1.0 - std::pow(0.8, 9), 1e-12);
  EXPECT_TRUE(within_sigmas(mc, 1.0 - std::pow(0.8, 9)))
      << mc.estimate << " +- " << mc.standard_error;
}

TEST(MonteCarlo, RandomProgramsWithinFiveSigma) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int passed = 0;
  for (int i = 0; i < 20; ++i) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(u(rng) * 8);
    const auto program = i % 2 ? ProtocolProgram::mub(u(rng), u(rng), n)
                               : ProtocolProgram::dm_uniform(u(rng), u(rng), n);
    const auto mc = simulate_mc({program, 100'000, rng()}, 2);
    if (within_sigmas(mc, enumerate_outcomes(program))) ++passed;
  }
  EXPECT_GE(passed, 19);
}

TEST(MonteCarlo, SeedDeterminismAcrossThreadCounts) {
  const auto program = ProtocolProgram::mub(0.9, 0.35, 4);
  const auto a = simulate_mc({program, 300'000, 42}, 1);
  const auto b = simulate_mc({program, 300'000, 42}, 8);
  const auto c = simulate_mc({program, 300'000, 42}, 3);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(a.successes, c.successes);
  EXPECT_EQ(a.estimate, b.estimate);
  const auto d = simulate_mc({program, 300'000, 43}, 1);
  EXPECT_NE(a.successes, d.successes);
}

TEST(MonteCarlo, ReferenceGeneratorSequence) {
  // The chunk generator is std::mt19937_64, whose 10000th output is fixed by
  // the C++ standard.
  std::mt19937_64 rng(5489u);
  rng.discard(9999);
  EXPECT_EQ(rng(), 9981545732273789042ULL);
  // splitmix64 reference: first output for state 0 is 0xE220A8397B1DCDAF.
  EXPECT_EQ(derive_chunk_seed(0, 0), 0xE220A8397B1DCDAFULL);
}

TEST(MonteCarlo, DensityMatrixModeAgreesWithReduction) {
  const DephasingModel model(1.0, ThermalEnvironment(0.5));
  const PureState target = PureState::normalized({0.6, 0.1}, {0.3, -0.7});
  const PureState perp = orthogonal_complement(target);
  const DensityMatrix rho0 = from_bloch({0.2, -0.3, 0.1});
  const double q0 = expectation(perp, rho0);
  const double w = std::norm(perp.amplitude0());
  const double gt = 0.6;
  const std::uint32_t n = 4;
  const double exact = dm_success_probability(
      {q0, dephasing_diagonal(model, gt, w), n});
  const auto mc = simulate_mc_dephasing_density(rho0, target, model, gt, n,
                                                200'000, 9, 4);
  EXPECT_TRUE(within_sigmas(mc, exact))
      << mc.estimate << " vs " << exact << " +- " << mc.standard_error;
}

TEST(FromModel, Examples) {
  const auto none = dm_program_from_model(
      DephasingModel(1.0, ThermalEnvironment(2.0)), 0.0, 0.3, 0.7, 4);
  for (double qt : std::get<DmRounds>(none.round_model).qt) EXPECT_EQ(qt, 1.0);
  EXPECT_NEAR(enumerate_outcomes(none), 0.3, 1e-15);

  const auto deph = dm_program_from_model(
      DephasingModel(1.0, ThermalEnvironment(1.0)), 0.5, 0.5, 1.0, 3);
  for (double qt : std::get<DmRounds>(deph.round_model).qt) {
    EXPECT_NEAR(qt, 0.6115650800742149, 1e-12);
  }

  const auto vac = dm_program_from_model(
      JaynesCummingsModel(1.0, ThermalEnvironment(0.0)), std::numbers::pi / 2,
      0.0, 1.0, 2);
  EXPECT_NEAR(std::get<DmRounds>(vac.round_model).qt[0], 0.0, 1e-15);
  EXPECT_NEAR(enumerate_outcomes(vac), 1.0, 1e-15);
}

}  // namespace
}  // namespace qdrive
