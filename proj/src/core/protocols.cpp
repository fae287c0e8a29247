#include "qdrive/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdrive {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << v << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

// Compares failure probabilities, which keep full relative precision where
// both success probabilities round to 1.
Verdict compare_failures(double dm, double mub) {
  if (std::abs(dm - mub) <= kTieTolerance * std::max(dm, mub)) {
    return Verdict::Equal;
  }
  return dm < mub ? Verdict::DmFaster : Verdict::MubFaster;
}

}  // namespace

std::array<MeasurementOutcome, 2> measure(const DensityMatrix& rho,
                                          const OrthonormalBasis& basis) {
  std::array<MeasurementOutcome, 2> out{};
  for (int i = 0; i < 2; ++i) {
    out[static_cast<std::size_t>(i)] = {i, expectation(basis[i], rho),
                                        basis[i]};
  }
  const double total = out[0].probability + out[1].probability;
  if (std::abs(total - 1.0) > 1e-10) {
    throw ValidationError("measurement probabilities do not sum to one");
  }
  return out;
}

double clamp_probability(double v, const char* what) {
  if (!(v >= -kAlgebraTol && v <= 1.0 + kAlgebraTol)) {
    std::ostringstream os;
    os << what << " evaluated to " << v << ", outside [0, 1]";
    throw ValidationError(os.str());
  }
  return std::clamp(v, 0.0, 1.0);
}

double mub_success_probability(const MubProtocolParams& params) {
  require_unit_interval(params.q0, "q0");
  require_unit_interval(params.c, "c");
  const double c0 = params.c;        // |<0|target>|^2
  const double c1 = 1.0 - params.c;  // |<target|1>|^2
  const double fail_per_round = 1.0 - 2.0 * c0 * c1;
  return clamp_probability(
      1.0 - params.q0 * std::pow(fail_per_round, params.rounds),
      "mub success probability");
}

double two_step_success(double p1, double p2) {
  require_unit_interval(p1, "p1");
  require_unit_interval(p2, "p2");
  return clamp_probability(p1 + (1.0 - p1) * p2, "two-step success");
}

double dm_success_probability(const DmProtocolParams& params) {
  require_unit_interval(params.q0, "q0");
  require_unit_interval(params.qt, "qt");
  if (params.rounds == 0) {
    throw DomainError("decoherence protocol needs at least one measurement");
  }
  return clamp_probability(
      1.0 - params.q0 * std::pow(params.qt, params.rounds - 1),
      "dm success probability");
}

double crossover_threshold(std::uint32_t rounds) {
  if (rounds < 2) {
    throw DomainError("crossover threshold is defined for N >= 2");
  }
  const double n = rounds;
  return std::exp2(-n / (n - 1.0));
}

ProtocolCurve mub_curve(double q0, double c, std::uint32_t max_rounds) {
  ProtocolCurve curve{ProtocolKind::Mub, q0, c, {}};
  for (std::uint32_t n = 0; n <= max_rounds; ++n) {
    curve.points.emplace_back(n, mub_success_probability({q0, c, n}));
  }
  return curve;
}

ProtocolCurve dm_curve(double q0, double qt, std::uint32_t max_rounds) {
  ProtocolCurve curve{ProtocolKind::Dm, q0, qt, {}};
  for (std::uint32_t n = 1; n <= max_rounds; ++n) {
    curve.points.emplace_back(n, dm_success_probability({q0, qt, n}));
  }
  return curve;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::DmFaster:
      return "dm_faster";
    case Verdict::Equal:
      return "equal";
    case Verdict::MubFaster:
      return "mub_faster";
  }
  return "?";
}

std::vector<ComparisonRow> compare_protocols(const MubProtocolParams& mub,
                                             const DmProtocolParams& dm,
                                             std::uint32_t max_rounds,
                                             ComparisonMode mode) {
  if (mub.c != 0.5) {
    throw DomainError("protocol comparison is defined at c = 1/2");
  }
  if (mub.q0 != dm.q0) {
    throw DomainError("protocols must share the same q0");
  }
  if (max_rounds < 2) {
    throw DomainError("comparison needs max N >= 2");
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(max_rounds - 1);
  for (std::uint32_t n = 2; n <= max_rounds; ++n) {
    ComparisonRow row;
    row.rounds = n;
    row.mub_rounds = mode == ComparisonMode::EqualRounds ? n : (n - 1) / 2;
    row.p_mub = mub_success_probability({mub.q0, 0.5, row.mub_rounds});
    row.p_dm = dm_success_probability({dm.q0, dm.qt, n});
    row.verdict = compare_failures(
        dm.q0 * std::pow(dm.qt, static_cast<double>(n - 1)),
        mub.q0 * std::pow(0.5, static_cast<double>(row.mub_rounds)));
    row.threshold = crossover_threshold(n);
    if (mode == ComparisonMode::EqualRounds) {
      if (std::abs(dm.qt - row.threshold) <= kTieTolerance) {
        row.threshold_verdict = Verdict::Equal;
      } else {
        row.threshold_verdict =
            dm.qt < row.threshold ? Verdict::DmFaster : Verdict::MubFaster;
      }
      // A tie on either side is compatible with anything but the opposite
      // strict verdict.
      const bool opposite =
          (row.verdict == Verdict::DmFaster &&
           row.threshold_verdict == Verdict::MubFaster) ||
          (row.verdict == Verdict::MubFaster &&
           row.threshold_verdict == Verdict::DmFaster);
      row.consistent = dm.q0 == 0.0 || !opposite;
    } else {
      row.threshold_verdict = row.verdict;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qdrive
