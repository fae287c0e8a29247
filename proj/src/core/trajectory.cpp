#include "qdrive/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <type_traits>
#include <sstream>

#include "qdrive/parallel.hpp"
#include "qdrive/protocols.hpp"

namespace qdrive {

namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << p << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

// Uniform in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Mixture of the target and its complement with the given failure weight.
DensityMatrix mixture(const PureState& target, const PureState& perp,
                      double fail) {
  const auto& a = projector(target).entries();
  const auto& b = projector(perp).entries();
  DensityMatrix::Entries e{};
  for (std::size_t i = 0; i < 4; ++i) e[i] = (1.0 - fail) * a[i] + fail * b[i];
  return DensityMatrix::from_entries(e);
}

struct Branch {
  PureState state;
  double weight;
};

// Collapses branches sitting on the same ray into one.
void merge(std::vector<Branch>& alive) {
  std::vector<Branch> out;
  for (const auto& b : alive) {
    bool merged = false;
    for (auto& o : out) {
      if (std::abs(std::abs(overlap(o.state, b.state)) - 1.0) < 1e-12) {
        o.weight += b.weight;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(b);
  }
  alive = std::move(out);
}

McEstimate finish(std::uint64_t successes, std::uint64_t trials,
                  std::uint64_t seed) {
  McEstimate mc;
  mc.successes = successes;
  mc.trials = trials;
  mc.seed = seed;
  mc.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  mc.standard_error =
      std::sqrt(mc.estimate * (1.0 - mc.estimate) / static_cast<double>(trials));
  return mc;
}

// Runs trial(rng) -> bool over fixed seeded chunks.
template <typename Trial>
McEstimate run_chunked(std::uint64_t trials, std::uint64_t seed,
                       unsigned threads, Trial&& trial) {
  if (trials == 0) throw DomainError("trials must be >= 1");
  const std::uint64_t chunks = (trials + kMcChunkTrials - 1) / kMcChunkTrials;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t k) {
    std::mt19937_64 rng(derive_chunk_seed(seed, k));
    const std::uint64_t begin = k * kMcChunkTrials;
    const std::uint64_t end = std::min(trials, begin + kMcChunkTrials);
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      if (trial(rng)) ++local;
    }
    hits[k] = local;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return finish(total, trials, seed);
}

}  // namespace

ProtocolProgram ProtocolProgram::mub(double q0, double c, std::uint32_t rounds) {
  ProtocolProgram p{q0, MubRound{c}, rounds};
  p.validate();
  return p;
}

ProtocolProgram ProtocolProgram::dm(double q0, std::vector<double> qt) {
  const auto n = static_cast<std::uint32_t>(qt.size() + 1);
  ProtocolProgram p{q0, DmRounds{std::move(qt)}, n};
  p.validate();
  return p;
}

ProtocolProgram ProtocolProgram::dm_uniform(double q0, double qt,
                                            std::uint32_t rounds) {
  if (rounds == 0) throw DomainError("decoherence program needs N >= 1");
  return dm(q0, std::vector<double>(rounds - 1, qt));
}

void ProtocolProgram::validate() const {
  require_probability(q0, "q0");
  if (const auto* m = std::get_if<MubRound>(&round_model)) {
    require_probability(m->c, "c");
    return;
  }
  const auto& d = std::get<DmRounds>(round_model);
  if (rounds == 0 || d.qt.size() + 1 != rounds) {
    throw DomainError("decoherence program needs N - 1 qt values");
  }
  for (double qt : d.qt) require_probability(qt, "qt");
}

std::uint64_t outcome_path_count(const ProtocolProgram& program) {
  if (!program.is_mub()) return std::uint64_t{program.rounds} + 1;
  // One path succeeding immediately, 2^k succeeding in round k, and 2^N
  // that never succeed: 3 * 2^N - 1.
  if (program.rounds >= 62) return UINT64_MAX;
  return 3 * (std::uint64_t{1} << program.rounds) - 1;
}

double enumerate_outcomes(const ProtocolProgram& program,
                          std::uint64_t path_guard) {
  program.validate();
  const std::uint64_t paths = outcome_path_count(program);
  if (paths > path_guard) {
    std::ostringstream os;
    os << "program has " << paths << " outcome paths, guard is "
       << path_guard;
    throw ResourceError(os.str());
  }

  const bool mub = program.is_mub();
  const PureState target = mub
      ? PureState::with_population(std::get<MubRound>(program.round_model).c)
      : PureState::zero();
  const OrthonormalBasis target_basis = OrthonormalBasis::completing(target);
  const PureState& perp = target_basis.second();
  const OrthonormalBasis theta_basis = OrthonormalBasis::computational();

  double success = 0.0;
  std::vector<Branch> alive;

  const auto first = measure(mixture(target, perp, program.q0), target_basis);
  success += first[0].probability;
  if (first[1].probability > 0.0) alive.push_back({perp, first[1].probability});

  if (mub) {
    for (std::uint32_t r = 0; r < program.rounds && !alive.empty(); ++r) {
      std::vector<Branch> next;
      for (const auto& b : alive) {
        for (const auto& t : measure(projector(b.state), theta_basis)) {
          if (t.probability == 0.0) continue;
          const auto s = measure(projector(t.post_state), target_basis);
          success += b.weight * t.probability * s[0].probability;
          next.push_back({s[1].post_state,
                          b.weight * t.probability * s[1].probability});
        }
      }
      alive = std::move(next);
      merge(alive);
    }
  } else {
    for (double qt : std::get<DmRounds>(program.round_model).qt) {
      if (alive.empty()) break;
      std::vector<Branch> next;
      for (const auto& b : alive) {
        // The decohered state is only known through its failure weight; a
        // diagonal representative carries exactly that.
        const auto s = measure(mixture(target, b.state, qt), target_basis);
        success += b.weight * s[0].probability;
        next.push_back({s[1].post_state, b.weight * s[1].probability});
      }
      alive = std::move(next);
      merge(alive);
    }
  }
  return clamp_probability(success, "enumerated success probability");
}

std::uint64_t derive_chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t z = seed + (chunk + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

McEstimate simulate_mc(const TrajectoryConfig& config, unsigned threads) {
  const ProtocolProgram& program = config.program;
  program.validate();
  if (const auto* m = std::get_if<MubRound>(&program.round_model)) {
    const double c = m->c;
    const std::uint32_t rounds = program.rounds;
    const double q0 = program.q0;
    return run_chunked(config.trials, config.seed, threads,
                       [=](std::mt19937_64& rng) {
      if (!(uniform01(rng) < q0)) return true;
      for (std::uint32_t r = 0; r < rounds; ++r) {
        // From perp, outcome |0> has probability 1 - c; the target is then
        // found with probability c from |0> and 1 - c from |1>.
        const bool zero = uniform01(rng) < 1.0 - c;
        const double hit = zero ? c : 1.0 - c;
        if (uniform01(rng) < hit) return true;
      }
      return false;
    });
  }
  const auto& qts = std::get<DmRounds>(program.round_model).qt;
  const double q0 = program.q0;
  return run_chunked(config.trials, config.seed, threads,
                     [&qts, q0](std::mt19937_64& rng) {
    if (!(uniform01(rng) < q0)) return true;
    for (double qt : qts) {
      if (!(uniform01(rng) < qt)) return true;
    }
    return false;
  });
}

McEstimate simulate_mc_dephasing_density(const DensityMatrix& rho0,
                                         const PureState& target,
                                         const DephasingModel& model,
                                         double gt, std::uint32_t rounds,
                                         std::uint64_t trials,
                                         std::uint64_t seed,
                                         unsigned threads) {
  if (rounds == 0) throw DomainError("rounds must be >= 1");
  const OrthonormalBasis basis = OrthonormalBasis::completing(target);
  return run_chunked(trials, seed, threads, [&](std::mt19937_64& rng) {
    DensityMatrix rho = rho0;
    for (std::uint32_t m = 0; m < rounds; ++m) {
      const auto out = measure(rho, basis);
      if (uniform01(rng) < out[0].probability) return true;
      rho = dephasing_channel(projector(out[1].post_state), model, gt);
    }
    return false;
  });
}

double binomial_standard_error(double p, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  const double q = std::clamp(p, 0.0, 1.0);
  return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

bool within_sigmas(const McEstimate& mc, double exact, double sigmas) {
  return std::abs(mc.estimate - exact) <=
         sigmas * binomial_standard_error(exact, mc.trials) + 1e-12;
}

ProtocolProgram dm_program_from_model(const DecoherenceModel& model,
                                      double gt, double w, double q0,
                                      std::uint32_t rounds,
                                      const SeriesOptions& opts) {
  const double qt = std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, DephasingModel>) {
          return dephasing_diagonal(m, gt, w);
        } else {
          return clamp_probability(jc_diagonal(m, gt, w, opts),
                                   "Jaynes-Cummings diagonal");
        }
      },
      model);
  return ProtocolProgram::dm_uniform(q0, qt, rounds);
}

}  // namespace qdrive
