#include "bwshare/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bwshare {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::int64_t kJointBudget = 10'000'000;
constexpr std::int64_t kRawRegionBudget = 5'000'000;

// One region's slot allocation, flattened row-major by giver: m[j * ops + i].
using Matrix = std::vector<int>;

bool feasible(const Matrix& m, const SystemConfig& cfg, const PeriodState& state,
              int region) {
  const int ops = cfg.num_operators;
  const int T = cfg.period_length;
  const int cap = cfg.sharing_cap ? *cfg.sharing_cap : std::numeric_limits<int>::max();
  for (int j = 0; j < ops; ++j) {
    const int arrived = state.region_arrivals[j][region];
    int row = 0, given = 0;
    for (int i = 0; i < ops; ++i) {
      row += m[j * ops + i];
      if (i != j) given += m[j * ops + i];
    }
    if (row > T) return false;
    if (m[j * ops + j] > arrived) return false;
    if (given > std::max(T - arrived, 0) || given > cap) return false;
  }
  for (int i = 0; i < ops; ++i) {
    int received = 0;
    for (int j = 0; j < ops; ++j)
      if (j != i) received += m[j * ops + i];
    if (received > std::max(state.region_arrivals[i][region] - T, 0) ||
        received > cap)
      return false;
  }
  return true;
}

// All feasible allocations of one region, in lexicographic entry order.
std::vector<Matrix> enumerate_region(const SystemConfig& cfg,
                                     const PeriodState& state, int region,
                                     bool restrict_no_sharing) {
  const int ops = cfg.num_operators;
  const int T = cfg.period_length;
  const int cells = ops * ops;

  std::int64_t raw = 1;
  for (int c = 0; c < cells; ++c) {
    const int giver = c / ops, receiver = c % ops;
    const bool diagonal = giver == receiver;
    if (restrict_no_sharing && !diagonal) continue;
    raw *= T + 1;
    if (raw > kRawRegionBudget)
      throw BudgetError("oracle: instance too large to enumerate");
  }

  std::vector<Matrix> out;
  Matrix m(static_cast<std::size_t>(cells), 0);
  while (true) {
    if (feasible(m, cfg, state, region)) out.push_back(m);
    int c = cells - 1;
    for (; c >= 0; --c) {
      const bool diagonal = (c / ops) == (c % ops);
      if (restrict_no_sharing && !diagonal) continue;
      if (m[c] < T) {
        ++m[c];
        for (int c2 = c + 1; c2 < cells; ++c2) m[c2] = 0;
        break;
      }
      m[c] = 0;
    }
    if (c < 0) break;
  }
  return out;
}

// Descending client weights of arrived clients and their prefix sums.
struct ScheduleTable {
  std::vector<int> order;          // arrived client ids, weight desc, id asc
  std::vector<double> prefix_gain; // prefix_gain[m] = best total weight of m slots
};

ScheduleTable make_table(const SystemConfig& cfg, const PeriodState& state,
                         const DebtState& debts, int op, int region) {
  ScheduleTable t;
  for (int n = 0; n < cfg.num_clients[op][region]; ++n)
    if (state.arrivals[op][region][n]) t.order.push_back(n);
  std::sort(t.order.begin(), t.order.end(), [&](int a, int b) {
    const double wa = debts.delivery_debt[op][region][a] * cfg.delivery_prob[op][region][a];
    const double wb = debts.delivery_debt[op][region][b] * cfg.delivery_prob[op][region][b];
    if (wa != wb) return wa > wb;
    return a < b;
  });
  t.prefix_gain.assign(t.order.size() + 1, 0.0);
  for (std::size_t k = 0; k < t.order.size(); ++k)
    t.prefix_gain[k + 1] =
        t.prefix_gain[k] + debts.delivery_debt[op][region][t.order[k]] *
                               cfg.delivery_prob[op][region][t.order[k]];
  return t;
}

Rational exact_objective(const SystemConfig& cfg, const DebtState& debts,
                         const Decision& d) {
  Rational f = 0;
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        if (d.schedule[i][r][n])
          f -= Rational(debts.delivery_debt[i][r][n]) *
               Rational(cfg.delivery_prob[i][r][n]);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int j = 0; j < cfg.num_operators; ++j) {
      if (i == j) continue;
      int net_received = 0;
      for (int r = 0; r < cfg.num_regions; ++r)
        net_received += d.share[j][i][r] - d.share[i][j][r];
      f += Rational(debts.sharing_debt[i][j]) * net_received;
    }
  return f;
}

}  // namespace

OracleResult brute_force_optimum(const SystemConfig& cfg, const PeriodState& state,
                                 const DebtState& debts, bool restrict_no_sharing) {
  cfg.validate();
  check_state_shape(cfg, state);
  check_debt_shape(cfg, debts);

  const int ops = cfg.num_operators;
  const int regions = cfg.num_regions;

  std::vector<std::vector<Matrix>> per_region;
  std::int64_t joint = 1;
  for (int r = 0; r < regions; ++r) {
    per_region.push_back(enumerate_region(cfg, state, r, restrict_no_sharing));
    joint *= static_cast<std::int64_t>(per_region.back().size());
    if (joint > kJointBudget)
      throw BudgetError("oracle: instance too large to enumerate");
  }

  std::vector<std::vector<ScheduleTable>> tables(ops);
  for (int i = 0; i < ops; ++i)
    for (int r = 0; r < regions; ++r)
      tables[i].push_back(make_table(cfg, state, debts, i, r));

  std::vector<std::size_t> pick(static_cast<std::size_t>(regions), 0);
  std::vector<std::size_t> best_pick;
  double best_f = std::numeric_limits<double>::infinity();
  while (true) {
    double f = 0.0;
    for (int r = 0; r < regions; ++r) {
      const Matrix& m = per_region[r][pick[r]];
      for (int i = 0; i < ops; ++i) {
        int slots = 0;
        for (int j = 0; j < ops; ++j) slots += m[j * ops + i];
        const auto& t = tables[i][r];
        f -= t.prefix_gain[std::min<std::size_t>(slots, t.order.size())];
      }
    }
    for (int i = 0; i < ops; ++i)
      for (int j = 0; j < ops; ++j) {
        if (i == j) continue;
        int net_received = 0;
        for (int r = 0; r < regions; ++r) {
          const Matrix& m = per_region[r][pick[r]];
          net_received += m[j * ops + i] - m[i * ops + j];
        }
        f += debts.sharing_debt[i][j] * net_received;
      }
    if (f < best_f) {
      best_f = f;
      best_pick = pick;
    }
    int r = regions - 1;
    for (; r >= 0; --r) {
      if (++pick[r] < per_region[r].size()) break;
      pick[r] = 0;
    }
    if (r < 0) break;
  }

  Decision d = Decision::zero(cfg);
  for (int r = 0; r < regions; ++r) {
    const Matrix& m = per_region[r][best_pick[r]];
    for (int j = 0; j < ops; ++j)
      for (int i = 0; i < ops; ++i) d.share[j][i][r] = m[j * ops + i];
    for (int i = 0; i < ops; ++i) {
      int slots = 0;
      for (int j = 0; j < ops; ++j) slots += m[j * ops + i];
      const auto& t = tables[i][r];
      const std::size_t take = std::min<std::size_t>(slots, t.order.size());
      for (std::size_t k = 0; k < take; ++k) d.schedule[i][r][t.order[k]] = 1;
    }
  }
  return {std::move(d), best_f};
}

int compare_objectives_exact(const SystemConfig& cfg, const DebtState& debts,
                             const Decision& a, const Decision& b) {
  check_decision_shape(cfg, a);
  check_decision_shape(cfg, b);
  const Rational fa = exact_objective(cfg, debts, a);
  const Rational fb = exact_objective(cfg, debts, b);
  if (fa < fb) return -1;
  if (fa > fb) return 1;
  return 0;
}

}  // namespace bwshare
