#include <doctest.h>

#include <random>

#include "bwshare/model.hpp"
#include "support.hpp"

using namespace bwshare;
namespace ts = bwshare::testsupport;

namespace {

// 2 operators, 1 region, explicit client counts and T.
SystemConfig small_config(int clients0, int clients1, int T) {
  SystemConfig cfg;
  cfg.num_operators = 2;
  cfg.num_regions = 1;
  cfg.num_clients = {{clients0}, {clients1}};
  cfg.period_length = T;
  cfg.horizon = 1;
  cfg.delivery_prob = cfg.client_field<double>(1.0);
  cfg.throughput_req = cfg.client_field<double>(0.0);
  cfg.sharing_bound = cfg.pair_field<double>(0.0);
  cfg.validate();
  return cfg;
}

PeriodState all_arrived(const SystemConfig& cfg) {
  PeriodState s{cfg.client_field<std::uint8_t>(1), cfg.region_field<int>(0),
                cfg.client_field<std::uint8_t>(1)};
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      s.region_arrivals[i][r] = cfg.num_clients[i][r];
  return s;
}

bool has(const std::vector<Violation>& v, Constraint c) {
  for (const auto& x : v)
    if (x.constraint == c) return true;
  return false;
}

}  // namespace

TEST_CASE("all-zero decision satisfies every constraint") {
  std::mt19937_64 g(7);
  for (int rep = 0; rep < 50; ++rep) {
    const SystemConfig cfg = ts::random_config(g, {});
    const PeriodState s = ts::random_state(g, cfg);
    CHECK(validate_decision(cfg, s, Decision::zero(cfg)).empty());
  }
}

TEST_CASE("own use above the slot budget is flagged") {
  const SystemConfig cfg = small_config(3, 0, 2);
  const PeriodState s = all_arrived(cfg);  // operator 0 has 3 arrivals, T = 2
  Decision d = Decision::zero(cfg);
  d.share[0][0][0] = 3;  // within arrivals, above the T budget
  const auto v = validate_decision(cfg, s, d);
  REQUIRE(v.size() == 1);
  CHECK(v[0].constraint == Constraint::giver_slot_budget);
  CHECK(v[0].giver == 0);
  CHECK(v[0].region == 0);
}

TEST_CASE("receiving beyond the overflow bound is flagged") {
  // Receiver has 3 arrivals with T = 2, so it may take at most one extra
  // slot; two violates the overflow bound and nothing else.
  const SystemConfig cfg = small_config(3, 0, 2);
  const PeriodState s = all_arrived(cfg);
  Decision d = Decision::zero(cfg);
  d.share[1][0][0] = 2;  // operator 1 (no arrivals) gives 2 to operator 0
  const auto v = validate_decision(cfg, s, d);
  REQUIRE(v.size() == 1);
  CHECK(v[0].constraint == Constraint::receive_exceeds_overflow);
  CHECK(v[0].receiver == 0);
}

TEST_CASE("remaining constraint kinds are reported individually") {
  const SystemConfig cfg = small_config(2, 2, 2);

  SUBCASE("schedule without arrival") {
    PeriodState s{cfg.client_field<std::uint8_t>(0), cfg.region_field<int>(0),
                  cfg.client_field<std::uint8_t>(0)};
    Decision d = Decision::zero(cfg);
    d.schedule[0][0][0] = 1;
    const auto v = validate_decision(cfg, s, d);
    CHECK(has(v, Constraint::schedule_without_arrival));
    CHECK(has(v, Constraint::schedule_exceeds_slots));  // no slots granted either
  }

  SUBCASE("schedule exceeds granted slots") {
    const PeriodState s = all_arrived(cfg);
    Decision d = Decision::zero(cfg);
    d.share[0][0][0] = 1;
    d.schedule[0][0][0] = 1;
    d.schedule[0][0][1] = 1;
    const auto v = validate_decision(cfg, s, d);
    REQUIRE(v.size() == 1);
    CHECK(v[0].constraint == Constraint::schedule_exceeds_slots);
  }

  SUBCASE("negative share") {
    const PeriodState s = all_arrived(cfg);
    Decision d = Decision::zero(cfg);
    d.share[0][1][0] = -1;
    CHECK(has(validate_decision(cfg, s, d), Constraint::negative_share));
  }

  SUBCASE("own use above arrivals") {
    PeriodState s = all_arrived(cfg);
    s.arrivals[0][0][1] = 0;
    s.region_arrivals[0][0] = 1;
    Decision d = Decision::zero(cfg);
    d.share[0][0][0] = 2;
    const auto v = validate_decision(cfg, s, d);
    REQUIRE(v.size() == 1);
    CHECK(v[0].constraint == Constraint::own_use_exceeds_arrivals);
  }

  SUBCASE("giving without spare capacity") {
    const PeriodState s = all_arrived(cfg);  // both fully loaded: A = T = 2
    Decision d = Decision::zero(cfg);
    d.share[0][1][0] = 1;
    const auto v = validate_decision(cfg, s, d);
    CHECK(has(v, Constraint::give_exceeds_spare));
    // receiver side is equally out of bounds here: A(1) - T = 0
    CHECK(has(v, Constraint::receive_exceeds_overflow));
  }
}

TEST_CASE("sharing cap bounds both directions") {
  SystemConfig cfg = small_config(4, 0, 2);
  cfg.sharing_cap = 1;
  const PeriodState s = all_arrived(cfg);  // op 0: A=4, needs 2; op 1 idle
  Decision d = Decision::zero(cfg);
  d.share[1][0][0] = 2;  // within overflow (4-2=2) but above the cap
  const auto v = validate_decision(cfg, s, d);
  CHECK(has(v, Constraint::receive_exceeds_cap));
  CHECK(has(v, Constraint::give_exceeds_cap));
  CHECK_FALSE(has(v, Constraint::receive_exceeds_overflow));
}

TEST_CASE("validator is pure") {
  std::mt19937_64 g(11);
  for (int rep = 0; rep < 30; ++rep) {
    const SystemConfig cfg = ts::random_config(g, {});
    const PeriodState s = ts::random_state(g, cfg);
    const Decision d = ts::random_feasible_decision(g, cfg, s);
    const auto a = validate_decision(cfg, s, d);
    const auto b = validate_decision(cfg, s, d);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(a[k].describe() == b[k].describe());
  }
}

TEST_CASE("own-use and spare bounds imply the giver budget") {
  // Random allocations obeying own <= min(A, T) and cross-give within spare
  // never trip the giver budget; the validator still checks it on its own.
  std::mt19937_64 g(13);
  ts::InstanceOptions opt;
  opt.max_ops = 3;
  for (int rep = 0; rep < 200; ++rep) {
    const SystemConfig cfg = ts::random_config(g, opt);
    const PeriodState s = ts::random_state(g, cfg);
    Decision d = Decision::zero(cfg);
    const int T = cfg.period_length;
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int j = 0; j < cfg.num_operators; ++j) {
        const int arrived = s.region_arrivals[j][r];
        d.share[j][j][r] = ts::uniform_int(g, 0, std::min(arrived, T));
        int spare = std::max(T - arrived, 0);
        for (int i = 0; i < cfg.num_operators && spare > 0; ++i) {
          if (i == j) continue;
          const int give = ts::uniform_int(g, 0, spare);
          d.share[j][i][r] += give;  // receive side intentionally unchecked
          spare -= give;
        }
      }
    CHECK_FALSE(has(validate_decision(cfg, s, d), Constraint::giver_slot_budget));
  }
}

TEST_CASE("mismatched shapes raise IndexError") {
  const SystemConfig cfg = small_config(2, 2, 2);
  const SystemConfig other = small_config(3, 2, 2);
  const PeriodState s = all_arrived(cfg);
  CHECK_THROWS_AS(validate_decision(cfg, s, Decision::zero(other)), IndexError);
  CHECK_THROWS_AS(validate_decision(other, s, Decision::zero(other)), IndexError);
}

TEST_CASE("config invariants are enforced") {
  SystemConfig cfg = small_config(2, 2, 2);
  SUBCASE("asymmetric sharing bound") {
    cfg.sharing_bound[0][1] = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("probability out of range") {
    cfg.delivery_prob[0][0][0] = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("negative requirement") {
    cfg.throughput_req[1][0][1] = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("bad period length") {
    cfg.period_length = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("negative cap") {
    cfg.sharing_cap = -1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}
