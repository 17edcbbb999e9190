#ifndef BWSHARE_EXPERIMENTS_HPP_
#define BWSHARE_EXPERIMENTS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bwshare/metrics.hpp"
#include "bwshare/simulator.hpp"

namespace bwshare {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Scenario family used by the sweep experiments: two operators, two regions,
// uniform clients, channel probability, pair bound, and requirement factor.
// ---------------------------------------------------------------------------

struct ScenarioBase {
  int clients = 10;
  int period_length = 5;
  int horizon = 10000;
  double delivery_prob = 0.99;
  double sharing_bound = 0.001;
  double req_factor = 0.95;  // requirement as a fraction of the arrival rate
  std::optional<int> sharing_cap;
  std::array<std::array<double, 2>, 2> rates{};  // [operator][region]
};

struct ClampEvent {
  int op;
  int region;
  double requested;
  double used;
};

struct BuiltScenario {
  SystemConfig system;
  PerRegion<ArrivalModel> models;
  std::vector<ClampEvent> clamps;
};

// Materializes the scenario. Rates above 1 are clamped to 1 and recorded
// (a client sees at most one packet per period); the requirement uses the
// clamped rate.
BuiltScenario build_scenario(const ScenarioBase& base);

// Mirrored rates: operator 0 gets (low, high), operator 1 (high, low), so
// each operator is lightly loaded in exactly one region.
std::array<std::array<double, 2>, 2> mirrored_rates(double low, double high);

// One paired comparison: sharing and baseline runs on the same seed, hence
// identical arrivals and channel outcomes.
struct PairedOutcome {
  double improvement_percent = 0.0;
  double avg_shared_per_period = 0.0;
  int satisfied_sharing = 0;
  int satisfied_baseline = 0;
  int total_clients = 0;
  double worst_net_sharing = 0.0;
  double max_delivery_debt = 0.0;  // sharing run, end of horizon
  double max_sharing_debt = 0.0;
  bool rate_clamped = false;
};

PairedOutcome run_paired(const BuiltScenario& built, std::uint64_t seed,
                         const Tolerances& tol);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepKind { none, sharing_cap, imbalance, load };

struct ScenarioSpec {
  ScenarioBase base;
  SweepKind sweep = SweepKind::none;

  std::vector<int> cap_grid = {0, 1, 2, 3, 4, 5};  // sharing_cap sweep
  double cap_beta1 = 0.1;  // imbalance the cap sweep runs at

  std::vector<double> beta_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  double scale = 1.0;  // rates are scale*beta1 and scale*(1-beta1)

  std::vector<double> gamma_grid;              // empty -> default_gamma_grid()
  std::vector<int> period_grid = {2, 4, 6, 8};  // load sweep period lengths

  int replications = 10;
  std::uint64_t seed = 1;
  Tolerances tol;
  int parallelism = 0;  // 0 = hardware concurrency

  void validate() const;  // throws ConfigError on an invalid grid
};

struct SweepRow {
  double sweep_value = 0.0;  // cap, beta1 or gamma
  int period_length = 0;     // load sweep only, else the base value
  int replication = 0;
  PairedOutcome outcome;
};

struct ScenarioTable {
  SweepKind kind = SweepKind::none;
  std::vector<SweepRow> rows;  // sorted by (period_length, sweep value, replication)
  std::string csv;
  std::string manifest;  // JSON: resolved spec, seed, version, clamp events
};

// Runs every (sweep point, replication) as a paired comparison; seeds derive
// from the master seed by point and replication index, so the table is
// byte-identical across invocations regardless of the parallelism used.
ScenarioTable run_scenario(const ScenarioSpec& spec);

// ---------------------------------------------------------------------------
// Analytic curve and single-run output
// ---------------------------------------------------------------------------

// CSV "D,gain_percent", one row per deadline grid point.
void emit_fig1(double mu, double rho, const std::vector<double>& d_grid,
               std::ostream& out);

std::vector<double> default_deadline_grid();  // 0.5, 1.0, ..., 10.0
std::vector<double> default_gamma_grid();     // 0.1, 0.2, ..., 2.0

// RunRecord plus the fully resolved configuration as a JSON document.
std::string run_record_json(const RunConfig& rc, const RunRecord& rec,
                            const Tolerances& tol);

}  // namespace bwshare

#endif  // BWSHARE_EXPERIMENTS_HPP_
