#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "newsflow/diffusion.hpp"

using namespace newsflow;

namespace {

ModelParams case1_params() {
  return ModelParams{.p_spawn = 0.9, .p_like0 = 0.05, .p_repost0 = 0.001};
}

ModelParams case2_params() {
  return ModelParams{.p_spawn = 0.9, .p_like0 = 0.05, .p_repost0 = 0.05};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST_CASE("phi_eval", "[diffusion]") {
  CHECK(phi_eval(PhiSpec{PhiKind::constant_one, 1.0}, 7) == 1.0);
  CHECK(phi_eval(PhiSpec{PhiKind::saturating, 10.0}, 0) == 0.0);
  CHECK(phi_eval(PhiSpec{PhiKind::saturating, 10.0}, 10) == 0.5);

  SECTION("saturating is monotone non-decreasing with values in [0,1)") {
    const PhiSpec phi{PhiKind::saturating, 3.5};
    double prev = -1.0;
    for (std::int64_t e = 0; e <= 1000; e += 7) {
      const double v = phi_eval(phi, e);
      CHECK(v >= prev);
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
      prev = v;
    }
  }
}

TEST_CASE("delta_distribution matches the joint Bernoulli law", "[diffusion]") {
  SECTION("no events ever") {
    const auto d = delta_distribution(ModelParams{}, 5);
    CHECK(d.prob(-1) == 1.0);
    CHECK(d.prob(0) == 0.0);
    CHECK(d.prob(1) == 0.0);
    CHECK(d.prob(2) == 0.0);
  }
  SECTION("p_like = p_repost = 1/2 gives the uniform four-point law") {
    const auto d = delta_distribution(ModelParams{.p_like0 = 0.5, .p_repost0 = 0.5}, 5);
    for (int delta = -1; delta <= 2; ++delta)
      CHECK_THAT(d.prob(delta), Catch::Matchers::WithinAbs(0.25, 1e-15));
    CHECK(d.prob(3) == 0.0);
  }
  SECTION("case-study-1 base probabilities") {
    const auto d = delta_distribution(ModelParams{.p_like0 = 0.05, .p_repost0 = 0.001}, 3);
    CHECK_THAT(d.prob(2), Catch::Matchers::WithinAbs(5e-5, 1e-15));
    CHECK_THAT(d.prob(1), Catch::Matchers::WithinAbs(9.5e-4, 1e-15));
    CHECK_THAT(d.prob(0), Catch::Matchers::WithinAbs(0.04995, 1e-15));
    CHECK_THAT(d.prob(-1), Catch::Matchers::WithinAbs(0.94905, 1e-15));
  }
  SECTION("certain link shifts the whole support up by one") {
    const auto d = delta_distribution(
        ModelParams{.p_like0 = 0.5, .p_repost0 = 0.5, .p_link0 = 1.0}, 2);
    CHECK(d.prob(-1) == 0.0);
    for (int delta = 0; delta <= 3; ++delta)
      CHECK_THAT(d.prob(delta), Catch::Matchers::WithinAbs(0.25, 1e-15));
  }
  SECTION("probabilities sum to 1 within 1e-12 over random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      ModelParams p{.p_like0 = u(rng), .p_repost0 = u(rng), .p_link0 = u(rng)};
      if (i % 2) p.phi = PhiSpec{PhiKind::saturating, 0.1 + 20.0 * u(rng)};
      const auto d = delta_distribution(p, 1 + static_cast<std::int64_t>(u(rng) * 50));
      double sum = 0.0;
      for (double q : d.probs) {
        CHECK(q >= 0.0);
        sum += q;
      }
      CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("empirical increment frequencies follow delta_distribution", "[diffusion]") {
  // One step over a large population gives one iid increment sample per agent
  // (phi is constant, so the law does not depend on the starting energy).
  const std::size_t k = 120000;
  ModelParams p{.p_like0 = 0.3, .p_repost0 = 0.04, .e0 = 10};

  PopulationState st;
  for (std::size_t i = 0; i < k; ++i)
    st.alive.push_back(Agent{.id = i, .energy = 10, .birth_tick = 0});
  st.next_id = k;

  std::mt19937_64 rng(123);
  const PopulationState next = step(st, p, rng);

  std::array<std::size_t, 5> counts{};
  std::size_t survivors = 0;
  for (const Agent& a : next.alive) {
    if (a.id >= k) continue;  // child born this tick
    ++survivors;
    const int delta = static_cast<int>(a.energy - 10);
    REQUIRE(delta >= -1);
    REQUIRE(delta <= 2);  // link disabled: walk stays on {-1,0,+1,+2}
    ++counts[static_cast<std::size_t>(delta + 1)];
  }
  REQUIRE(survivors == k);  // energy 10 cannot reach 0 in one tick

  const auto expected = delta_distribution(p, 10);
  for (int delta = -1; delta <= 3; ++delta) {
    const double prob = expected.prob(delta);
    const double freq =
        static_cast<double>(counts[static_cast<std::size_t>(delta + 1)]) / static_cast<double>(k);
    const double se = std::sqrt(prob * (1.0 - prob) / static_cast<double>(k));
    if (prob == 0.0) {
      CHECK(freq == 0.0);
    } else {
      CHECK(std::abs(freq - prob) <= 3.0 * se);
    }
  }
}

TEST_CASE("step handles deterministic decay and death", "[diffusion]") {
  std::mt19937_64 rng(1);

  SECTION("energy-1 agent with no events dies") {
    PopulationState st;
    st.alive.push_back(Agent{.id = 0, .energy = 1, .birth_tick = 0});
    st.next_id = 1;
    const PopulationState next = step(st, ModelParams{}, rng);
    CHECK(next.alive.empty());
    CHECK(next.counters.deaths == 1);
    CHECK(next.tick == 1);
  }

  SECTION("energy-3 agent decays over ticks 0..3 as 1,1,1,0 alive") {
    PopulationState st;
    st.alive.push_back(Agent{.id = 0, .energy = 3, .birth_tick = 0});
    st.next_id = 1;
    std::vector<std::size_t> counts{st.alive.size()};
    for (int i = 0; i < 3; ++i) {
      st = step(st, ModelParams{}, rng);
      counts.push_back(st.alive.size());
    }
    CHECK(counts == std::vector<std::size_t>{1, 1, 1, 0});
  }

  SECTION("spawn-and-die cycle keeps the population at 1") {
    ModelParams p{.p_spawn = 1.0, .e0 = 1};
    PopulationState st;  // start empty
    for (int tick = 1; tick <= 10; ++tick) {
      st = step(st, p, rng);
      CHECK(st.alive.size() == 1);
      CHECK(st.alive.front().energy == 1);
      CHECK(!st.alive.front().parent_id.has_value());
    }
    CHECK(st.counters.births_spawn == 10);
    CHECK(st.counters.deaths == 9);
  }
}

TEST_CASE("population bookkeeping is conserved", "[diffusion]") {
  ModelParams p{.p_spawn = 0.8, .p_like0 = 0.2, .p_repost0 = 0.15, .p_link0 = 0.05, .e0 = 3};
  std::mt19937_64 rng(2024);
  PopulationState st = initial_state(p);
  const std::size_t alive0 = st.alive.size();

  for (int tick = 0; tick < 500; ++tick) {
    const EventCounters before = st.counters;
    st = step(st, p, rng);
    CHECK(st.counters.births_spawn >= before.births_spawn);
    CHECK(st.counters.deaths >= before.deaths);
    const std::int64_t born = static_cast<std::int64_t>(st.counters.births_spawn +
                                                        st.counters.births_repost);
    const std::int64_t dead = static_cast<std::int64_t>(st.counters.deaths);
    CHECK(born - dead ==
          static_cast<std::int64_t>(st.alive.size()) - static_cast<std::int64_t>(alive0));
    // ids stay sorted and unique, energies stay positive
    for (std::size_t i = 0; i < st.alive.size(); ++i) {
      CHECK(st.alive[i].energy >= 1);
      if (i > 0) CHECK(st.alive[i - 1].id < st.alive[i].id);
      CHECK(st.alive[i].id < st.next_id);
    }
  }
}

TEST_CASE("run returns the alive counts at ticks 1..steps", "[diffusion]") {
  SECTION("lone agent with e0=2 and no events") {
    ParamSchedule sched{{{0, ModelParams{.e0 = 2}}}};
    const Series s = run(sched, 5, 42);
    CHECK(s.origin_tick == 1);
    CHECK(s.values == std::vector<double>{1, 0, 0, 0, 0});
  }

  SECTION("identical seed gives a bit-identical series") {
    ParamSchedule sched{{{0, case1_params()}}};
    const Series a = run(sched, 1000, 77);
    const Series b = run(sched, 1000, 77);
    CHECK(a.values == b.values);
    const Series c = run(sched, 1000, 78);
    CHECK(a.values != c.values);
  }

  SECTION("empty schedule is a configuration error") {
    CHECK_THROWS_AS(run(ParamSchedule{}, 10, 1), ConfigError);
  }

  SECTION("steps must be >= 1") {
    ParamSchedule sched{{{0, case1_params()}}};
    CHECK_THROWS_AS(run(sched, 0, 1), ConfigError);
  }
}

TEST_CASE("schedule switches parameters at the segment boundary", "[diffusion]") {
  // Segment 1 zeroes every probability at tick 50: counters freeze afterwards.
  ModelParams lively{.p_spawn = 1.0, .p_like0 = 0.5, .p_repost0 = 0.3, .e0 = 4};
  ParamSchedule sched{{{0, lively}, {50, ModelParams{.e0 = 4}}}};
  validate(sched);

  std::mt19937_64 rng(5);
  PopulationState st = initial_state(lively);
  for (int tick = 0; tick < 50; ++tick) st = step(st, sched.params_at(st.tick), rng);
  const EventCounters at_switch = st.counters;
  CHECK(at_switch.births_spawn == 50);  // p_spawn=1 fired every pre-switch tick

  for (int tick = 50; tick < 120; ++tick) st = step(st, sched.params_at(st.tick), rng);
  CHECK(st.counters.births_spawn == at_switch.births_spawn);
  CHECK(st.counters.births_repost == at_switch.births_repost);
  CHECK(st.counters.likes == at_switch.likes);
  CHECK(st.counters.reposts == at_switch.reposts);
  CHECK(st.alive.empty());  // everything decays once events stop
}

TEST_CASE("schedule validation", "[diffusion]") {
  CHECK_THROWS_AS(validate(ParamSchedule{}), ConfigError);
  CHECK_THROWS_AS(validate(ParamSchedule{{{5, ModelParams{}}}}), ConfigError);
  CHECK_THROWS_AS(validate(ParamSchedule{{{0, ModelParams{}}, {0, ModelParams{}}}}), ConfigError);
  CHECK_THROWS_AS(validate(ModelParams{.p_like0 = 1.5}), ConfigError);
  CHECK_THROWS_AS(validate(ModelParams{.p_spawn = -0.1}), ConfigError);
  CHECK_THROWS_AS(validate(ModelParams{.e0 = 0}), ConfigError);
  CHECK_THROWS_AS(validate(ModelParams{.phi = PhiSpec{PhiKind::saturating, 0.0}}), ConfigError);
  CHECK_NOTHROW(validate(ParamSchedule{{{0, case1_params()}, {400, case2_params()}}}));
}

TEST_CASE("derive_seed is the documented SplitMix64 sequence", "[diffusion]") {
  // Known SplitMix64 vectors for state 0.
  CHECK(derive_seed(0, 0) == 0xE220A8397B1DCDAFULL);
  CHECK(derive_seed(0, 1) == 0x6E789E6AA1B965F4ULL);
  CHECK(derive_seed(0, 2) == 0x06C45D188009454FULL);
  CHECK(derive_seed(1, 0) != derive_seed(0, 0));
}

TEST_CASE("run_ensemble derives per-run seeds and is reproducible", "[diffusion]") {
  ParamSchedule sched{{{0, case1_params()}}};

  SECTION("singleton ensemble equals the derived-seed run") {
    const auto ens = run_ensemble(sched, 200, 99, 1);
    REQUIRE(ens.size() == 1);
    CHECK(ens[0].values == run(sched, 200, derive_seed(99, 0)).values);
  }

  SECTION("same inputs give identical ensembles") {
    const auto a = run_ensemble(sched, 100, 5, 4);
    const auto b = run_ensemble(sched, 100, 5, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);
  }
}

TEST_CASE("case-1 ensemble mean population stays in the frozen band", "[diffusion][ensemble]") {
  ParamSchedule sched{{{0, case1_params()}}};
  const auto ens = run_ensemble(sched, 2000, 4242, 50);
  int in_band = 0;
  for (const Series& s : ens) {
    double sum = 0.0;
    for (double v : s.values) sum += v;
    const double mean = sum / static_cast<double>(s.values.size());
    if (mean >= 5.0 && mean <= 30.0) ++in_band;
  }
  CHECK(in_band >= 45);
}

TEST_CASE("case-2 runs fluctuate more than case-1 runs", "[diffusion][ensemble]") {
  const auto stddev_of = [](const Series& s) {
    double sum = 0.0;
    for (double v : s.values) sum += v;
    const double mean = sum / static_cast<double>(s.values.size());
    double sq = 0.0;
    for (double v : s.values) sq += (v - mean) * (v - mean);
    return std::sqrt(sq / static_cast<double>(s.values.size()));
  };
  ParamSchedule s1{{{0, case1_params()}}};
  ParamSchedule s2{{{0, case2_params()}}};
  std::vector<double> sd1, sd2;
  for (const Series& s : run_ensemble(s1, 2000, 31, 50)) sd1.push_back(stddev_of(s));
  for (const Series& s : run_ensemble(s2, 2000, 31, 50)) sd2.push_back(stddev_of(s));
  CHECK(median(sd2) > median(sd1));
}
