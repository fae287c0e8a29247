#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qdrive/decoherence.hpp"
#include "qdrive/qubit.hpp"

namespace qdrive {

// Alternating-observable rounds: each round measures the computational
// basis, then the target observable. c = |<0|target>|^2.
struct MubRound {
  double c = 0.5;
};

// Decoherence intervals between target measurements; qt[k] is the
// probability that the (k+2)-th measurement fails again. Uniform lists
// reproduce the equally spaced protocol; anything else is an extension.
struct DmRounds {
  std::vector<double> qt;
};

struct ProtocolProgram {
  double q0 = 1.0;
  std::variant<MubRound, DmRounds> round_model = MubRound{};
  std::uint32_t rounds = 0;  // Mub: round count; Dm: measurement count

  static ProtocolProgram mub(double q0, double c, std::uint32_t rounds);
  static ProtocolProgram dm(double q0, std::vector<double> qt);
  static ProtocolProgram dm_uniform(double q0, double qt, std::uint32_t rounds);

  // Throws DomainError on out-of-range probabilities or a Dm list whose
  // length is not rounds - 1.
  void validate() const;
  bool is_mub() const noexcept {
    return std::holds_alternative<MubRound>(round_model);
  }
};

inline constexpr std::uint64_t kDefaultPathGuard = std::uint64_t{1} << 20;

// Number of distinct outcome sequences of the program.
std::uint64_t outcome_path_count(const ProtocolProgram& program);

// Exact probability that at least one target measurement succeeds, found by
// propagating the measured qubit through every outcome branch. Branches
// that fail a target measurement collapse onto the same state and are
// merged, so the cost is linear in the number of rounds. Throws
// ResourceError when outcome_path_count exceeds path_guard.
double enumerate_outcomes(const ProtocolProgram& program,
                          std::uint64_t path_guard = kDefaultPathGuard);

struct TrajectoryConfig {
  ProtocolProgram program;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
};

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / trials)
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Trials are split into fixed chunks of kMcChunkTrials. Chunk k draws from
// std::mt19937_64 seeded with derive_chunk_seed(seed, k); uniforms are the
// top 53 bits of each output scaled by 2^-53. Success counts are summed as
// integers, so results are identical for any thread count.
inline constexpr std::uint64_t kMcChunkTrials = std::uint64_t{1} << 16;

// splitmix64 finaliser applied to seed + (k + 1) * 0x9E3779B97F4A7C15.
std::uint64_t derive_chunk_seed(std::uint64_t seed, std::uint64_t chunk);

McEstimate simulate_mc(const TrajectoryConfig& config, unsigned threads = 1);

// Slow reference mode that tracks full density matrices through the
// dephasing channel instead of abstract failure probabilities. The target
// basis is {target, orthogonal_complement(target)}; rounds counts target
// measurements.
McEstimate simulate_mc_dephasing_density(const DensityMatrix& rho0,
                                         const PureState& target,
                                         const DephasingModel& model,
                                         double gt, std::uint32_t rounds,
                                         std::uint64_t trials,
                                         std::uint64_t seed,
                                         unsigned threads = 1);

// sqrt(p (1 - p) / trials).
double binomial_standard_error(double p, std::uint64_t trials);

// |estimate - exact| <= sigmas * binomial_standard_error(exact, trials)
// (+1e-12 for exact hits). The gate uses the exact probability because the
// plug-in error vanishes when every trial lands on the same outcome.
bool within_sigmas(const McEstimate& mc, double exact, double sigmas = 5.0);

// Uniform Dm program whose qt is the model's diagonal element at (gt, w),
// w = |<0|perp>|^2.
ProtocolProgram dm_program_from_model(const DecoherenceModel& model,
                                      double gt, double w, double q0,
                                      std::uint32_t rounds,
                                      const SeriesOptions& opts = {});

}  // namespace qdrive
