#ifndef BWSHARE_ORACLE_HPP_
#define BWSHARE_ORACLE_HPP_

#include <stdexcept>

#include "bwshare/model.hpp"

namespace bwshare {

// Raised when an instance exceeds the enumeration budget. The oracle never
// silently approximates.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  Decision decision;
  double objective;
};

// Ground truth for the per-period optimizer: enumerates every feasible slot
// allocation (all regions jointly) and, for each, the best schedule — for a
// fixed slot count the optimal schedule is the top-weight arrived clients,
// a reduction that is itself property-tested against full subset
// enumeration. With restrict_no_sharing only allocations with zero
// cross-operator entries are enumerated.
//
// Budget: at most 10^7 joint allocation candidates (product over regions of
// feasible per-region allocation counts); BudgetError beyond that.
OracleResult brute_force_optimum(const SystemConfig& cfg, const PeriodState& state,
                                 const DebtState& debts, bool restrict_no_sharing);

// Compares the objective values of two decisions in exact rational
// arithmetic (doubles convert exactly), immune to accumulation order.
// Returns -1, 0 or +1 as objective(a) <, ==, > objective(b).
int compare_objectives_exact(const SystemConfig& cfg, const DebtState& debts,
                             const Decision& a, const Decision& b);

}  // namespace bwshare

#endif  // BWSHARE_ORACLE_HPP_
