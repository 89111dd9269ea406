#pragma once

// Discrete-time multiagent message population: agents carry an energy that
// decays by 1 per tick and is raised by like (+1), repost (+2), link (+1)
// events; a repost also copies the agent, and new agents self-generate with
// probability p_spawn. An agent whose energy reaches 0 dies.

#include <array>
#include <cassert>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "newsflow/errors.hpp"
#include "newsflow/timeseries.hpp"

namespace newsflow {

enum class PhiKind { constant_one, saturating };

/// Energy response scaling the base event probabilities; monotone
/// non-decreasing with values in [0, 1].
struct PhiSpec {
  PhiKind kind = PhiKind::constant_one;
  double scale = 1.0;  // saturating only: phi(E) = E / (E + scale)
};

inline double phi_eval(const PhiSpec& phi, std::int64_t energy) {
  assert(energy >= 0);
  if (phi.kind == PhiKind::constant_one) return 1.0;
  const double e = static_cast<double>(energy);
  return e / (e + phi.scale);
}

struct ModelParams {
  double p_spawn = 0.0;    // spontaneous birth per tick
  double p_like0 = 0.0;    // base "like" probability, scaled by phi(E)
  double p_repost0 = 0.0;  // base "repost" probability, scaled by phi(E)
  double p_link0 = 0.0;    // base "link" probability, scaled by phi(E)
  std::int64_t e0 = 10;    // initial energy of every new agent
  PhiSpec phi;
};

// Field names in errors follow the external JSON schema.
inline void validate(const ModelParams& p) {
  const auto check01 = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError(std::string(name) + " must be within [0,1]");
  };
  check01(p.p_spawn, "p_spawn");
  check01(p.p_like0, "p_like");
  check01(p.p_repost0, "p_repost");
  check01(p.p_link0, "p_link");
  if (p.e0 < 1) throw ConfigError("e0 must be >= 1");
  if (p.phi.kind == PhiKind::saturating && !(p.phi.scale > 0.0))
    throw ConfigError("phi.scale must be > 0");
}

struct ScheduleSegment {
  std::int64_t start_tick = 0;
  ModelParams params;
};

/// Piecewise-constant parameters over time ("soft" model): segment i governs
/// every tick in [start_tick_i, start_tick_{i+1}).
struct ParamSchedule {
  std::vector<ScheduleSegment> segments;

  const ModelParams& params_at(std::int64_t tick) const {
    assert(!segments.empty());
    const ModelParams* current = &segments.front().params;
    for (const ScheduleSegment& seg : segments) {
      if (seg.start_tick > tick) break;
      current = &seg.params;
    }
    return *current;
  }
};

inline void validate(const ParamSchedule& s) {
  if (s.segments.empty()) throw ConfigError("segments must be non-empty");
  if (s.segments.front().start_tick != 0)
    throw ConfigError("segments[0].start_tick must be 0");
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    if (i > 0 && s.segments[i].start_tick <= s.segments[i - 1].start_tick)
      throw ConfigError("segments[" + std::to_string(i) +
                        "].start_tick must be strictly increasing");
    try {
      validate(s.segments[i].params);
    } catch (const ConfigError& e) {
      throw ConfigError("segments[" + std::to_string(i) + "].params." + e.what());
    }
  }
}

/// Law of the per-tick energy increment -1 + like + 2*repost + link.
/// prob(d) covers d in [-1, +3]; +3 is reachable only with links enabled.
struct DeltaDistribution {
  static constexpr int min_delta = -1;
  static constexpr int max_delta = 3;
  std::array<double, 5> probs{};  // probs[d - min_delta]

  double prob(int delta) const {
    if (delta < min_delta || delta > max_delta) return 0.0;
    return probs[static_cast<std::size_t>(delta - min_delta)];
  }
};

/// Joint like/repost Bernoullis give the four-point walk on {-1,0,+1,+2};
/// the link Bernoulli (+1 with probability p_link0*phi(E)) is convolved in.
inline DeltaDistribution delta_distribution(const ModelParams& params, std::int64_t energy) {
  assert(energy >= 1);
  const double s = phi_eval(params.phi, energy);
  const double pl = params.p_like0 * s;
  const double pr = params.p_repost0 * s;
  const double pk = params.p_link0 * s;

  DeltaDistribution d;
  d.probs[0] = (1.0 - pl) * (1.0 - pr);  // -1: nothing happened
  d.probs[1] = pl * (1.0 - pr);          //  0: like only
  d.probs[2] = pr * (1.0 - pl);          // +1: repost only
  d.probs[3] = pl * pr;                  // +2: like and repost
  d.probs[4] = 0.0;
  for (int i = 4; i >= 0; --i) {
    const double up = (i > 0) ? d.probs[static_cast<std::size_t>(i - 1)] * pk : 0.0;
    d.probs[static_cast<std::size_t>(i)] =
        d.probs[static_cast<std::size_t>(i)] * (1.0 - pk) + up;
  }
  return d;
}

struct Agent {
  std::uint64_t id = 0;
  std::int64_t energy = 0;
  std::int64_t birth_tick = 0;
  std::optional<std::uint64_t> parent_id;  // set for repost children
};

struct EventCounters {
  std::uint64_t births_spawn = 0;
  std::uint64_t births_repost = 0;
  std::uint64_t deaths = 0;
  std::uint64_t likes = 0;
  std::uint64_t reposts = 0;
  std::uint64_t links = 0;
};

/// Alive population at one tick. `alive` stays sorted by ascending id:
/// step() keeps survivors in order and only appends fresh, larger ids.
struct PopulationState {
  std::int64_t tick = 0;
  std::vector<Agent> alive;
  std::uint64_t next_id = 0;
  EventCounters counters;
};

inline PopulationState initial_state(const ModelParams& params) {
  PopulationState st;
  st.alive.push_back(Agent{.id = 0, .energy = params.e0, .birth_tick = 0});
  st.next_id = 1;
  return st;
}

/// Canonical 53-bit mapping of one mt19937_64 draw onto [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Seed of run `run_index` in an ensemble: the (run_index + 1)-th output of
/// a SplitMix64 generator whose state starts at base_seed, i.e.
///   z = base_seed + (run_index + 1) * 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  std::uint64_t z = base_seed + (run_index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// One synchronous tick. Agents are visited in ascending id; each draws its
/// like, repost, link Bernoullis in that order (three uniforms per agent,
/// always consumed), then a single spawn Bernoulli closes the tick. Repost
/// children and the spawned agent join at tick + 1 with fresh energy e0 and
/// are neither processed nor death-checked this tick. Survivors whose energy
/// reached 0 are removed and counted as deaths.
inline PopulationState step(const PopulationState& state, const ModelParams& params,
                            std::mt19937_64& rng) {
  PopulationState next;
  next.tick = state.tick + 1;
  next.next_id = state.next_id;
  next.counters = state.counters;
  next.alive.reserve(state.alive.size() + 1);

  std::vector<Agent> children;
  for (const Agent& agent : state.alive) {
    assert(agent.energy >= 1);
    const double s = phi_eval(params.phi, agent.energy);
    const bool like = uniform01(rng) < params.p_like0 * s;
    const bool repost = uniform01(rng) < params.p_repost0 * s;
    const bool link = uniform01(rng) < params.p_link0 * s;

    if (like) ++next.counters.likes;
    if (link) ++next.counters.links;
    if (repost) {
      ++next.counters.reposts;
      ++next.counters.births_repost;
      children.push_back(Agent{.id = next.next_id++,
                               .energy = params.e0,
                               .birth_tick = next.tick,
                               .parent_id = agent.id});
    }

    const std::int64_t energy =
        agent.energy - 1 + (like ? 1 : 0) + (repost ? 2 : 0) + (link ? 1 : 0);
    if (energy > 0) {
      Agent survivor = agent;
      survivor.energy = energy;
      next.alive.push_back(survivor);
    } else {
      ++next.counters.deaths;
    }
  }

  if (uniform01(rng) < params.p_spawn) {
    ++next.counters.births_spawn;
    children.push_back(
        Agent{.id = next.next_id++, .energy = params.e0, .birth_tick = next.tick});
  }

  next.alive.insert(next.alive.end(), children.begin(), children.end());
  return next;
}

/// Evolves the population from a single fresh agent and returns the alive
/// counts at ticks 1..steps. Identical (schedule, steps, seed) give a
/// bit-identical series. Aggregate event counters are written to *totals
/// when given.
inline Series run(const ParamSchedule& schedule, std::int64_t steps, std::uint64_t seed,
                  EventCounters* totals = nullptr) {
  validate(schedule);
  if (steps < 1) throw ConfigError("steps must be >= 1");
  std::mt19937_64 rng(seed);
  PopulationState st = initial_state(schedule.segments.front().params);
  Series out;
  out.origin_tick = 1;
  out.values.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t t = 0; t < steps; ++t) {
    st = step(st, schedule.params_at(st.tick), rng);
    out.values.push_back(static_cast<double>(st.alive.size()));
  }
  if (totals) *totals = st.counters;
  return out;
}

/// Independent runs i = 0..n_runs-1 seeded with derive_seed(base_seed, i),
/// assembled in index order.
inline std::vector<Series> run_ensemble(const ParamSchedule& schedule, std::int64_t steps,
                                        std::uint64_t base_seed, std::size_t n_runs) {
  if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
  std::vector<Series> out;
  out.reserve(n_runs);
  for (std::size_t i = 0; i < n_runs; ++i)
    out.push_back(run(schedule, steps, derive_seed(base_seed, i)));
  return out;
}

}  // namespace newsflow
