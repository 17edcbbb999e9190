#ifndef BWSHARE_MODEL_HPP_
#define BWSHARE_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bwshare {

// ---------------------------------------------------------------------------
// Identifiers are dense 0-based integers with stable ordering, so
// "lowest index first" tie-breaking is well-defined everywhere.
// Field shapes:
//   PerClient<T>  — [operator][region][client]
//   PerRegion<T>  — [operator][region]
//   PerPair<T>    — [operator][operator], diagonal unused unless noted
// ---------------------------------------------------------------------------
template <typename T>
using PerClient = std::vector<std::vector<std::vector<T>>>;
template <typename T>
using PerRegion = std::vector<std::vector<T>>;
template <typename T>
using PerPair = std::vector<std::vector<T>>;

// Slots given by one operator to another within a region:
// share[giver][receiver][region]. The diagonal giver==receiver is the
// giver's own use.
using ShareTensor = std::vector<std::vector<std::vector<int>>>;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a decision or state indexes identifiers that do not exist in
// the configuration; distinct from a constraint violation.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Static description of the scenario: operators, regions, clients, the
// period length in slots, per-client channel success probabilities and
// timely-throughput requirements, and per-pair slot-balance bounds.
struct SystemConfig {
  int num_operators = 0;
  int num_regions = 0;
  PerRegion<int> num_clients;        // clients in (operator, region)
  int period_length = 1;             // slots per period
  int horizon = 1;                   // periods per run
  PerClient<double> delivery_prob;   // in [0,1]
  PerClient<double> throughput_req;  // packets per period, >= 0
  PerPair<double> sharing_bound;     // symmetric, >= 0, diagonal ignored
  std::optional<int> sharing_cap;    // per-region cap on cross-operator slots

  int clients(int op, int region) const { return num_clients[op][region]; }
  int total_clients() const;

  // Shaped allocators for fields tied to this configuration.
  template <typename T>
  PerClient<T> client_field(T init) const {
    PerClient<T> f(num_operators);
    for (int i = 0; i < num_operators; ++i) {
      f[i].resize(num_regions);
      for (int r = 0; r < num_regions; ++r)
        f[i][r].assign(static_cast<std::size_t>(num_clients[i][r]), init);
    }
    return f;
  }
  template <typename T>
  PerRegion<T> region_field(T init) const {
    return PerRegion<T>(num_operators,
                        std::vector<T>(static_cast<std::size_t>(num_regions), init));
  }
  template <typename T>
  PerPair<T> pair_field(T init) const {
    return PerPair<T>(num_operators,
                      std::vector<T>(static_cast<std::size_t>(num_operators), init));
  }
  ShareTensor share_tensor() const {
    return ShareTensor(
        num_operators,
        PerRegion<int>(num_operators,
                       std::vector<int>(static_cast<std::size_t>(num_regions), 0)));
  }

  // Throws ConfigError if any invariant is broken (sizes, ranges, symmetry).
  void validate() const;
};

// Everything realized at the start of one period. Delivery coin-flips are
// pre-sampled so no scheduling decision can depend on channel outcomes.
struct PeriodState {
  PerClient<std::uint8_t> arrivals;       // {0,1} per client
  PerRegion<int> region_arrivals;         // sum of arrivals over clients
  PerClient<std::uint8_t> delivery_flip;  // realized channel outcome
};

// Virtual queues carried between periods. All entries stay >= 0; both
// updates clamp at zero. At period 1 everything is exactly zero.
struct DebtState {
  PerClient<double> delivery_debt;  // per client
  PerPair<double> sharing_debt;     // [ower][owed-to], diagonal unused

  static DebtState zero(const SystemConfig& cfg) {
    return DebtState{cfg.client_field<double>(0.0), cfg.pair_field<double>(0.0)};
  }
};

// One period's scheduling indicators and slot allocation.
struct Decision {
  PerClient<std::uint8_t> schedule;  // {0,1} per client
  ShareTensor share;                 // [giver][receiver][region]

  static Decision zero(const SystemConfig& cfg) {
    return Decision{cfg.client_field<std::uint8_t>(0), cfg.share_tensor()};
  }
};

// ---------------------------------------------------------------------------
// Decision feasibility
// ---------------------------------------------------------------------------

enum class Constraint {
  schedule_without_arrival,   // b(i,r,n) <= A(i,r,n)
  schedule_exceeds_slots,     // sum_n b(i,r,n) <= sum_j share(j,i,r)
  negative_share,             // share(j,i,r) >= 0
  giver_slot_budget,          // sum_i share(j,i,r) <= T
  own_use_exceeds_arrivals,   // share(i,i,r) <= A(i,r)
  give_exceeds_spare,         // sum_{i!=j} share(j,i,r) <= max(T - A(j,r), 0)
  receive_exceeds_overflow,   // sum_{j!=i} share(j,i,r) <= max(A(i,r) - T, 0)
  give_exceeds_cap,           // sum_{i!=j} share(j,i,r) <= L
  receive_exceeds_cap,        // sum_{j!=i} share(j,i,r) <= L
};

const char* constraint_name(Constraint c);

struct Violation {
  Constraint constraint;
  int giver = -1;     // operator giving slots (j), where applicable
  int receiver = -1;  // operator receiving slots (i), where applicable
  int region = -1;
  int client = -1;
  std::string describe() const;
};

// Pure function: returns one descriptor per violated constraint, empty iff
// the decision is feasible for the given state. Throws IndexError when the
// decision or state is shaped for a different configuration.
std::vector<Violation> validate_decision(const SystemConfig& cfg,
                                         const PeriodState& state,
                                         const Decision& d);

// Shape checks shared by the validator, policy and simulator.
void check_state_shape(const SystemConfig& cfg, const PeriodState& state);
void check_decision_shape(const SystemConfig& cfg, const Decision& d);
void check_debt_shape(const SystemConfig& cfg, const DebtState& debts);

}  // namespace bwshare

#endif  // BWSHARE_MODEL_HPP_
