#ifndef BWSHARE_POLICY_HPP_
#define BWSHARE_POLICY_HPP_

#include "bwshare/model.hpp"

namespace bwshare {

// Coefficients of the per-period objective
//   f(b, S) = - sum_{i,r,n} client_weight(i,r,n) * b(i,r,n)
//             + sum_{i != j} transfer_cost(i,j) * [slots i receives from j]
// where client_weight = delivery_debt * delivery_prob and
// transfer_cost(receiver i, giver j) = sharing_debt(i,j) - sharing_debt(j,i).
// Scheduling is rewarded by expected deliveries; realized channel outcomes
// enter only the debt update, never the decision.
struct ObjectiveWeights {
  PerClient<double> client_weight;
  PerPair<double> transfer_cost;  // [receiver][giver], antisymmetric

  static ObjectiveWeights from(const SystemConfig& cfg, const DebtState& debts);
};

// Objective value of a decision under the given debts, accumulated in a
// fixed canonical order (operators, then regions, then clients).
double objective_value(const SystemConfig& cfg, const DebtState& debts,
                       const Decision& d);

// Exact minimizer of the per-period objective over all feasible integer
// decisions. Per region: own slots min(arrivals, T) are cost-free and filled
// first with the highest-weight arrived clients; cross-operator transfers
// are then added one slot at a time along minimum-cost augmenting paths
// (receiver gain minus transfer cost, with rerouting through already-placed
// transfers) while strictly improving. A transfer whose gain exactly equals
// its cost is not taken, so among minimizers the one with the least sharing
// is returned. Ties everywhere break to the lowest operator, region, then
// client index. Arrived clients with zero weight are still scheduled into
// otherwise-unused slots, lowest client index first.
Decision solve_period(const SystemConfig& cfg, const PeriodState& state,
                      const DebtState& debts);

// Largest-debt-first baseline: no cross-operator sharing, each operator
// schedules the min(arrivals, T) arrived clients of largest weight.
// Optimal for the objective restricted to zero cross-operator transfers.
Decision solve_period_no_sharing(const SystemConfig& cfg,
                                 const PeriodState& state,
                                 const DebtState& debts);

// Advances both debt families by one period:
//   delivery_debt  <- max(delivery_debt + requirement - scheduled*delivered, 0)
//   sharing_debt(i,j) <- max(sharing_debt(i,j) + received(i from j)
//                            - received(j from i) - bound(i,j), 0)
// The requirement accrues for every client every period, arrival or not.
DebtState update_debts(const SystemConfig& cfg, const DebtState& debts,
                       const Decision& d, const PeriodState& state);

}  // namespace bwshare

#endif  // BWSHARE_POLICY_HPP_
