#ifndef BWSHARE_ARRIVALS_HPP_
#define BWSHARE_ARRIVALS_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bwshare/model.hpp"

namespace bwshare {

enum class ArrivalKind {
  bernoulli,        // fresh coin each period
  two_state_markov  // state is last period's indicator; tunable memory
};

// Per-(operator, region) arrival process. All clients of the pair share the
// model but draw from independent streams.
//
// For two_state_markov, `persistence` is the probability of remaining in
// the current state for the symmetric rate-0.5 chain; in general the chain
// is built with memory coefficient lambda = 2*persistence - 1:
//   P(next = 1 | current = s) = rate + lambda * (s - rate)
// which keeps the stationary arrival probability equal to `rate` and makes
// the lag-1 autocorrelation exactly lambda. persistence < 1 keeps the chain
// irreducible; combinations whose transition probabilities leave [0,1]
// (possible only for persistence < 0.5 at extreme rates) are rejected.
struct ArrivalModel {
  ArrivalKind kind = ArrivalKind::bernoulli;
  double rate = 0.0;                    // mean arrivals per period, in [0,1]
  std::optional<double> persistence;    // two_state_markov only, in [0,1)

  double memory() const { return persistence ? 2.0 * *persistence - 1.0 : 0.0; }
  void validate() const;  // throws ConfigError
};

// Stateful per-client chains advanced one period at a time. Chains start
// from their stationary distribution, so the marginal rate holds from the
// first period. Single-owner object; distinct samplers may run concurrently.
class ArrivalSampler {
 public:
  struct Batch {
    PerClient<std::uint8_t> arrivals;
    PerRegion<int> region_arrivals;
  };

  // Requires one model per (operator, region); throws ConfigError otherwise.
  // Per-client streams are derived from `seed` via derive_seed(seed,
  // Stream::arrivals, op, region, client).
  ArrivalSampler(const SystemConfig& cfg, const PerRegion<ArrivalModel>& models,
                 std::uint64_t seed);

  Batch next_period();

 private:
  struct Chain {
    std::mt19937_64 eng;
    std::uint8_t state;
  };
  const SystemConfig* cfg_;
  PerRegion<ArrivalModel> models_;
  PerClient<Chain> chains_;
};

}  // namespace bwshare

#endif  // BWSHARE_ARRIVALS_HPP_
