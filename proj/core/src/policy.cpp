#include "bwshare/policy.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace bwshare {

namespace {

void check_state_consistent(const SystemConfig& cfg, const PeriodState& state) {
  check_state_shape(cfg, state);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r) {
      int sum = 0;
      for (int n = 0; n < cfg.num_clients[i][r]; ++n) sum += state.arrivals[i][r][n];
      if (sum != state.region_arrivals[i][r])
        throw IndexError("state: region_arrivals inconsistent with arrivals");
    }
}

// One region's cross-operator slot assignment: pick integer y[receiver][giver]
// maximizing sum of receiver marginal gains minus transfer costs, subject to
// per-operator give/receive budgets. Solved exactly by repeatedly augmenting
// one slot along the minimum-cost path in the residual graph (which may
// reroute already-placed transfers), stopping as soon as the best path no
// longer strictly improves the objective. Marginal gains are non-increasing
// per receiver, so each augmentation's cost is the true objective change.
//
// Node layout: 0 = source, 1..n = givers, n+1..2n = receivers, 2n+1 = sink.
std::vector<std::vector<int>> assign_transfers(
    int n, const std::vector<int>& spare, const std::vector<int>& need,
    const std::vector<std::vector<double>>& gains, const PerPair<double>& cost) {
  std::vector<std::vector<int>> y(n, std::vector<int>(n, 0));
  if (n <= 1) return y;

  std::vector<int> given(n, 0), got(n, 0);
  int remaining = 0;
  for (int i = 0; i < n; ++i) remaining += need[i];

  const int source = 0, sink = 2 * n + 1, num_nodes = 2 * n + 2;
  const double inf = std::numeric_limits<double>::infinity();

  struct Arc {
    int from, to;
    double c;
    int kind;  // 0: source->giver, 1: giver->receiver, 2: receiver->giver, 3: receiver->sink
    int giver, receiver;
  };

  for (; remaining > 0; --remaining) {
    // Residual arcs in a fixed order so shortest-path ties resolve
    // deterministically (lowest operator index wins).
    std::vector<Arc> arcs;
    for (int g = 0; g < n; ++g)
      if (given[g] < spare[g]) arcs.push_back({source, 1 + g, 0.0, 0, g, -1});
    for (int g = 0; g < n; ++g)
      for (int i = 0; i < n; ++i)
        if (i != g) arcs.push_back({1 + g, 1 + n + i, cost[i][g], 1, g, i});
    for (int i = 0; i < n; ++i)
      for (int g = 0; g < n; ++g)
        if (i != g && y[i][g] > 0)
          arcs.push_back({1 + n + i, 1 + g, -cost[i][g], 2, g, i});
    for (int i = 0; i < n; ++i)
      if (got[i] < need[i])
        arcs.push_back({1 + n + i, sink, -gains[i][got[i]], 3, -1, i});

    std::vector<double> dist(num_nodes, inf);
    std::vector<int> parent(num_nodes, -1);  // index into arcs
    dist[source] = 0.0;
    for (int sweep = 0; sweep + 1 < num_nodes; ++sweep) {
      bool changed = false;
      for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
        const Arc& arc = arcs[a];
        if (dist[arc.from] == inf) continue;
        const double cand = dist[arc.from] + arc.c;
        if (cand < dist[arc.to]) {
          dist[arc.to] = cand;
          parent[arc.to] = a;
          changed = true;
        }
      }
      if (!changed) break;
    }

    if (!(dist[sink] < 0.0)) break;  // no strictly improving transfer left

    for (int v = sink, steps = 0; v != source; ++steps) {
      const Arc& arc = arcs[static_cast<std::size_t>(parent[v])];
      if (arc.kind == 1) ++y[arc.receiver][arc.giver];
      if (arc.kind == 2) --y[arc.receiver][arc.giver];
      v = arc.from;
      if (steps > num_nodes) throw std::logic_error("transfer path reconstruction cycle");
    }
    for (int g = 0; g < n; ++g) {
      given[g] = 0;
      for (int i = 0; i < n; ++i) given[g] += y[i][g];
    }
    for (int i = 0; i < n; ++i) {
      got[i] = 0;
      for (int g = 0; g < n; ++g) got[i] += y[i][g];
    }
  }
  return y;
}

// Arrived clients of (op, region) by descending weight, client index ascending.
std::vector<int> sorted_arrivals(const SystemConfig& cfg, const PeriodState& state,
                                 const ObjectiveWeights& w, int op, int region) {
  std::vector<int> list;
  for (int n = 0; n < cfg.num_clients[op][region]; ++n)
    if (state.arrivals[op][region][n]) list.push_back(n);
  std::sort(list.begin(), list.end(), [&](int a, int b) {
    const double wa = w.client_weight[op][region][a];
    const double wb = w.client_weight[op][region][b];
    if (wa != wb) return wa > wb;
    return a < b;
  });
  return list;
}

}  // namespace

ObjectiveWeights ObjectiveWeights::from(const SystemConfig& cfg,
                                        const DebtState& debts) {
  check_debt_shape(cfg, debts);
  ObjectiveWeights w{cfg.client_field<double>(0.0), cfg.pair_field<double>(0.0)};
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        w.client_weight[i][r][n] =
            debts.delivery_debt[i][r][n] * cfg.delivery_prob[i][r][n];
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int j = 0; j < cfg.num_operators; ++j)
      if (i != j)
        w.transfer_cost[i][j] = debts.sharing_debt[i][j] - debts.sharing_debt[j][i];
  return w;
}

double objective_value(const SystemConfig& cfg, const DebtState& debts,
                       const Decision& d) {
  check_debt_shape(cfg, debts);
  check_decision_shape(cfg, d);
  double f = 0.0;
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        if (d.schedule[i][r][n])
          f -= debts.delivery_debt[i][r][n] * cfg.delivery_prob[i][r][n];
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int j = 0; j < cfg.num_operators; ++j) {
      if (i == j) continue;
      int net_received = 0;
      for (int r = 0; r < cfg.num_regions; ++r)
        net_received += d.share[j][i][r] - d.share[i][j][r];
      f += debts.sharing_debt[i][j] * net_received;
    }
  return f;
}

Decision solve_period(const SystemConfig& cfg, const PeriodState& state,
                      const DebtState& debts) {
  check_state_consistent(cfg, state);
  const ObjectiveWeights w = ObjectiveWeights::from(cfg, debts);
  const int T = cfg.period_length;
  const int ops = cfg.num_operators;
  const int cap = cfg.sharing_cap ? *cfg.sharing_cap : std::numeric_limits<int>::max();

  Decision d = Decision::zero(cfg);
  for (int r = 0; r < cfg.num_regions; ++r) {
    std::vector<std::vector<int>> order(ops);
    std::vector<int> own(ops), spare(ops), need(ops);
    std::vector<std::vector<double>> gains(ops);
    for (int i = 0; i < ops; ++i) {
      order[i] = sorted_arrivals(cfg, state, w, i, r);
      const int arrived = state.region_arrivals[i][r];
      own[i] = std::min(arrived, T);
      spare[i] = std::min(std::max(T - arrived, 0), cap);
      need[i] = std::min(std::max(arrived - T, 0), cap);
      for (int t = 0; t < need[i]; ++t)
        gains[i].push_back(w.client_weight[i][r][order[i][T + t]]);
      d.share[i][i][r] = own[i];
    }

    const auto y = assign_transfers(ops, spare, need, gains, w.transfer_cost);

    for (int i = 0; i < ops; ++i) {
      int slots = own[i];
      for (int g = 0; g < ops; ++g) {
        if (g == i) continue;
        d.share[g][i][r] = y[i][g];
        slots += y[i][g];
      }
      for (int t = 0; t < slots; ++t) d.schedule[i][r][order[i][t]] = 1;
    }
  }
  return d;
}

Decision solve_period_no_sharing(const SystemConfig& cfg, const PeriodState& state,
                                 const DebtState& debts) {
  check_state_consistent(cfg, state);
  const ObjectiveWeights w = ObjectiveWeights::from(cfg, debts);
  const int T = cfg.period_length;

  Decision d = Decision::zero(cfg);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r) {
      const auto order = sorted_arrivals(cfg, state, w, i, r);
      const int own = std::min(state.region_arrivals[i][r], T);
      d.share[i][i][r] = own;
      for (int t = 0; t < own; ++t) d.schedule[i][r][order[t]] = 1;
    }
  return d;
}

DebtState update_debts(const SystemConfig& cfg, const DebtState& debts,
                       const Decision& d, const PeriodState& state) {
  check_debt_shape(cfg, debts);
  check_decision_shape(cfg, d);
  check_state_shape(cfg, state);

  DebtState out = debts;
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n) {
        const double delivered =
            d.schedule[i][r][n] && state.delivery_flip[i][r][n] ? 1.0 : 0.0;
        out.delivery_debt[i][r][n] = std::max(
            debts.delivery_debt[i][r][n] + cfg.throughput_req[i][r][n] - delivered,
            0.0);
      }
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int j = 0; j < cfg.num_operators; ++j) {
      if (i == j) continue;
      int net_received = 0;
      for (int r = 0; r < cfg.num_regions; ++r)
        net_received += d.share[j][i][r] - d.share[i][j][r];
      out.sharing_debt[i][j] =
          std::max(debts.sharing_debt[i][j] + net_received - cfg.sharing_bound[i][j],
                   0.0);
    }
  return out;
}

}  // namespace bwshare
