#ifndef BWSHARE_METRICS_HPP_
#define BWSHARE_METRICS_HPP_

#include "bwshare/model.hpp"
#include "bwshare/simulator.hpp"

namespace bwshare {

// Finite-horizon slack for the long-run constraints. The theory's constants
// are asymptotic devices with no stated magnitude; 0.01 at a horizon of
// 10^4 periods is the default used by the acceptance checks.
struct Tolerances {
  double xi1 = 0.01;  // timely-throughput slack
  double xi2 = 0.01;  // sharing-balance slack

  void validate() const {
    if (!(xi1 > 0.0) || !(xi2 > 0.0))
      throw ConfigError("tolerances: xi1 and xi2 must be > 0");
  }
};

// Per client: empirical timely throughput >= requirement - xi1.
PerClient<std::uint8_t> throughput_satisfied(const RunRecord& rec,
                                             const SystemConfig& cfg,
                                             const Tolerances& tol);

// Per ordered pair: |net slots exchanged| / horizon <= bound + xi2.
PerPair<std::uint8_t> sharing_satisfied(const RunRecord& rec,
                                        const SystemConfig& cfg,
                                        const Tolerances& tol);

// 100 * (total_with - total_without) / total_without, totals summed over
// every client of every operator. Throws std::domain_error when the
// baseline total is zero.
double improvement_percent(const RunRecord& with_sharing,
                           const RunRecord& without_sharing);

// Sum of squared delivery debts plus squared sharing debts; the quadratic
// drift diagnostic tracked by the stability checks.
double lyapunov_value(const DebtState& debts);

}  // namespace bwshare

#endif  // BWSHARE_METRICS_HPP_
