#ifndef BWSHARE_TESTS_SUPPORT_HPP_
#define BWSHARE_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <random>
#include <vector>

#include "bwshare/model.hpp"

namespace bwshare::testsupport {

struct InstanceOptions {
  int min_ops = 2;
  int max_ops = 2;
  int max_regions = 2;
  int max_clients = 4;
  int max_period = 3;
  double max_delivery_debt = 5.0;
  double max_sharing_debt = 5.0;
  bool with_cap = false;
};

inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
  return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double uniform_real(std::mt19937_64& g, double lo, double hi) {
  const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline SystemConfig random_config(std::mt19937_64& g, const InstanceOptions& o) {
  SystemConfig cfg;
  cfg.num_operators = uniform_int(g, o.min_ops, o.max_ops);
  cfg.num_regions = uniform_int(g, 1, o.max_regions);
  cfg.period_length = uniform_int(g, 1, o.max_period);
  cfg.horizon = 1;
  cfg.num_clients = cfg.region_field<int>(0);
  for (auto& row : cfg.num_clients)
    for (int& c : row) c = uniform_int(g, 0, o.max_clients);
  cfg.delivery_prob = cfg.client_field<double>(0.0);
  cfg.throughput_req = cfg.client_field<double>(0.0);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n) {
        cfg.delivery_prob[i][r][n] = uniform_real(g, 0.5, 1.0);
        cfg.throughput_req[i][r][n] = uniform_real(g, 0.0, 1.0);
      }
  cfg.sharing_bound = cfg.pair_field<double>(0.0);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int j = i + 1; j < cfg.num_operators; ++j)
      cfg.sharing_bound[i][j] = cfg.sharing_bound[j][i] = uniform_real(g, 0.0, 0.01);
  if (o.with_cap && uniform_int(g, 0, 1) == 1)
    cfg.sharing_cap = uniform_int(g, 0, o.max_period);
  return cfg;
}

inline PeriodState random_state(std::mt19937_64& g, const SystemConfig& cfg,
                                double arrival_prob = 0.6) {
  PeriodState s{cfg.client_field<std::uint8_t>(0), cfg.region_field<int>(0),
                cfg.client_field<std::uint8_t>(0)};
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n) {
        s.arrivals[i][r][n] = uniform_real(g, 0.0, 1.0) < arrival_prob ? 1 : 0;
        s.region_arrivals[i][r] += s.arrivals[i][r][n];
        s.delivery_flip[i][r][n] = uniform_int(g, 0, 1);
      }
  return s;
}

inline DebtState random_debts(std::mt19937_64& g, const SystemConfig& cfg,
                              const InstanceOptions& o) {
  DebtState d = DebtState::zero(cfg);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        d.delivery_debt[i][r][n] = uniform_real(g, 0.0, o.max_delivery_debt);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int j = 0; j < cfg.num_operators; ++j)
      if (i != j) d.sharing_debt[i][j] = uniform_real(g, 0.0, o.max_sharing_debt);
  return d;
}

// Arbitrary feasible decision (not an optimizer): random own use, random
// transfers within the give/receive budgets, random schedule subset.
inline Decision random_feasible_decision(std::mt19937_64& g, const SystemConfig& cfg,
                                         const PeriodState& state) {
  const int T = cfg.period_length;
  const int ops = cfg.num_operators;
  const int cap =
      cfg.sharing_cap ? *cfg.sharing_cap : std::numeric_limits<int>::max();
  Decision d = Decision::zero(cfg);
  for (int r = 0; r < cfg.num_regions; ++r) {
    std::vector<int> give_left(ops), recv_left(ops);
    for (int i = 0; i < ops; ++i) {
      const int arrived = state.region_arrivals[i][r];
      d.share[i][i][r] = uniform_int(g, 0, std::min(arrived, T));
      give_left[i] = std::min({std::max(T - arrived, 0), cap, T - d.share[i][i][r]});
      recv_left[i] = std::min(std::max(arrived - T, 0), cap);
    }
    for (int j = 0; j < ops; ++j)
      for (int i = 0; i < ops; ++i) {
        if (i == j) continue;
        const int most = std::min(give_left[j], recv_left[i]);
        if (most <= 0 || uniform_int(g, 0, 1) == 0) continue;
        const int s = uniform_int(g, 0, most);
        d.share[j][i][r] = s;
        give_left[j] -= s;
        recv_left[i] -= s;
      }
    for (int i = 0; i < ops; ++i) {
      int slots = 0;
      for (int j = 0; j < ops; ++j) slots += d.share[j][i][r];
      std::vector<int> arrived;
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        if (state.arrivals[i][r][n]) arrived.push_back(n);
      std::shuffle(arrived.begin(), arrived.end(), g);
      const int take = uniform_int(g, 0, std::min<int>(slots, arrived.size()));
      for (int t = 0; t < take; ++t) d.schedule[i][r][arrived[t]] = 1;
    }
  }
  return d;
}

}  // namespace bwshare::testsupport

#endif  // BWSHARE_TESTS_SUPPORT_HPP_
