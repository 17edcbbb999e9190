#ifndef BWSHARE_SIMULATOR_HPP_
#define BWSHARE_SIMULATOR_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bwshare/arrivals.hpp"
#include "bwshare/model.hpp"

namespace bwshare {

enum class PolicyKind { sharing, no_sharing };

struct RunConfig {
  SystemConfig system;
  PerRegion<ArrivalModel> arrivals;
  PolicyKind policy = PolicyKind::sharing;
  std::uint64_t seed = 0;
  bool record_traces = false;  // per-period debt and Lyapunov traces
};

// Aggregates of one closed-loop run over the configured horizon.
struct RunRecord {
  // Empirical timely throughput: delivered-in-period count / horizon.
  PerClient<double> per_client_timely;
  // |slots i received from j - slots j received from i| / horizon, per pair.
  PerPair<double> net_sharing;
  // Mean over periods of all cross-operator slots moved.
  double avg_shared_per_period = 0.0;

  double final_max_delivery_debt = 0.0;
  double final_max_sharing_debt = 0.0;

  // Filled only when record_traces is set; one entry per period, sampled
  // after that period's debt update.
  std::vector<double> max_delivery_debt_trace;
  std::vector<double> max_sharing_debt_trace;
  std::vector<double> lyapunov_trace;
};

// Closed loop for horizon periods: sample arrivals, pre-sample delivery
// coin-flips, solve the selected policy, realize deliveries, update debts.
// Deterministic function of the seed. Coin-flips come from per-client
// sub-streams that the policy never consumes, so sharing and no-sharing
// runs with the same seed face identical arrivals and channels (paired
// comparisons); flips are drawn for every client every period, scheduled
// or not, to keep the streams aligned.
//
// Optional trace sinks receive one CSV row per client-period
// (k,operator,region,client,arrived,scheduled,delivered,delta) and per
// ordered operator pair (k,i,j,sigma,net_shared), debts post-update.
RunRecord run(const RunConfig& rc, std::ostream* client_trace = nullptr,
              std::ostream* pair_trace = nullptr);

}  // namespace bwshare

#endif  // BWSHARE_SIMULATOR_HPP_
