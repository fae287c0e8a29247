#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qdrive/qubit.hpp"

namespace qdrive {

struct MeasurementOutcome {
  int outcome_index = 0;
  double probability = 0.0;
  PureState post_state = PureState::zero();
};

// Projective measurement of rho in basis. Outcome i projects onto basis[i].
std::array<MeasurementOutcome, 2> measure(const DensityMatrix& rho,
                                          const OrthonormalBasis& basis);

// Two-observable protocol: one measurement of the target observable, then
// `rounds` repetitions of (computational-basis measurement, target
// measurement).
struct MubProtocolParams {
  double q0 = 1.0;  // <target_perp|rho0|target_perp>
  double c = 0.5;   // |<0|target>|^2; |<target|1>|^2 = 1 - c
  std::uint32_t rounds = 0;
};

// Single-observable protocol: `rounds` target measurements separated by a
// decoherence interval.
struct DmProtocolParams {
  double q0 = 1.0;
  double qt = 0.0;  // <target_perp|rho_t|target_perp>
  std::uint32_t rounds = 1;
};

enum class ProtocolKind { Mub, Dm };

struct ProtocolCurve {
  ProtocolKind kind = ProtocolKind::Mub;
  double q0 = 1.0;
  double parameter = 0.0;  // c for Mub, qt for Dm
  std::vector<std::pair<std::uint32_t, double>> points;
};

// Clamps v into [0, 1]; throws ValidationError when v lies further than
// kAlgebraTol outside.
double clamp_probability(double v, const char* what);

// 1 - q0 (1 - 2 c (1 - c))^N
double mub_success_probability(const MubProtocolParams& params);

// p1 + (1 - p1) p2
double two_step_success(double p1, double p2);

// 1 - q0 qt^(N-1). Throws DomainError for N = 0.
double dm_success_probability(const DmProtocolParams& params);

// 2^(-N/(N-1)): the largest qt for which the single-observable protocol is
// at least as fast as the unbiased pair after N rounds. Requires N >= 2.
double crossover_threshold(std::uint32_t rounds);

ProtocolCurve mub_curve(double q0, double c, std::uint32_t max_rounds);
ProtocolCurve dm_curve(double q0, double qt, std::uint32_t max_rounds);

enum class Verdict { DmFaster, Equal, MubFaster };
const char* to_string(Verdict v) noexcept;

// Relative tolerance on failure probabilities for an Equal verdict.
inline constexpr double kTieTolerance = 1e-12;

struct ComparisonRow {
  std::uint32_t rounds = 0;        // N for Dm
  std::uint32_t mub_rounds = 0;    // N used in the Mub formula
  double p_mub = 0.0;
  double p_dm = 0.0;
  Verdict verdict = Verdict::Equal;           // from the two probabilities
  double threshold = 0.0;                     // crossover_threshold(N)
  Verdict threshold_verdict = Verdict::Equal; // from qt vs threshold
  bool consistent = true;
};

enum class ComparisonMode {
  // Both formulas evaluated at the same N.
  EqualRounds,
  // Non-default: equal physical measurement counts. A Dm run with N
  // measurements is compared against (N - 1) / 2 Mub rounds (2k + 1
  // measurements). The threshold verdict does not apply and mirrors the
  // probability verdict.
  EqualMeasurements,
};

// Compares the protocols for N = 2..max_rounds. Throws DomainError unless
// mub.c == 1/2, both q0 agree and max_rounds >= 2.
std::vector<ComparisonRow> compare_protocols(
    const MubProtocolParams& mub, const DmProtocolParams& dm,
    std::uint32_t max_rounds,
    ComparisonMode mode = ComparisonMode::EqualRounds);

}  // namespace qdrive
