#include "bwshare/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "bwshare/policy.hpp"
#include "bwshare/queueing.hpp"
#include "bwshare/rng.hpp"
#include "json_util.hpp"

namespace bwshare {

namespace {

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

void parallel_for(int count, int parallelism, const std::function<void(int)>& fn) {
  int workers = parallelism > 0
                    ? parallelism
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int t = 0; t < count; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int t = next.fetch_add(1); t < count; t = next.fetch_add(1)) fn(t);
    });
  for (auto& th : pool) th.join();
}

const char* sweep_name(SweepKind k) {
  switch (k) {
    case SweepKind::none: return "none";
    case SweepKind::sharing_cap: return "sharing_cap";
    case SweepKind::imbalance: return "imbalance";
    case SweepKind::load: return "load";
  }
  return "unknown";
}

}  // namespace

std::array<std::array<double, 2>, 2> mirrored_rates(double low, double high) {
  return {{{low, high}, {high, low}}};
}

BuiltScenario build_scenario(const ScenarioBase& base) {
  if (base.clients < 1) throw ConfigError("scenario: clients must be >= 1");
  if (base.period_length < 1) throw ConfigError("scenario: period_length must be >= 1");
  if (base.horizon < 1) throw ConfigError("scenario: horizon must be >= 1");
  if (!(base.delivery_prob >= 0.0 && base.delivery_prob <= 1.0))
    throw ConfigError("scenario: delivery_prob outside [0,1]");
  if (base.sharing_bound < 0.0) throw ConfigError("scenario: negative sharing_bound");
  if (base.req_factor < 0.0) throw ConfigError("scenario: negative req_factor");

  BuiltScenario out;
  SystemConfig& cfg = out.system;
  cfg.num_operators = 2;
  cfg.num_regions = 2;
  cfg.num_clients = cfg.region_field<int>(base.clients);
  cfg.period_length = base.period_length;
  cfg.horizon = base.horizon;
  cfg.sharing_cap = base.sharing_cap;
  cfg.delivery_prob = cfg.client_field<double>(base.delivery_prob);
  cfg.throughput_req = cfg.client_field<double>(0.0);
  cfg.sharing_bound = cfg.pair_field<double>(base.sharing_bound);
  for (int i = 0; i < 2; ++i) cfg.sharing_bound[i][i] = 0.0;

  out.models = PerRegion<ArrivalModel>(2, std::vector<ArrivalModel>(2));
  for (int i = 0; i < 2; ++i)
    for (int r = 0; r < 2; ++r) {
      const double requested = base.rates[i][r];
      if (requested < 0.0) throw ConfigError("scenario: negative arrival rate");
      double rate = requested;
      if (rate > 1.0) {
        rate = 1.0;  // one packet per client per period at most
        out.clamps.push_back({i, r, requested, rate});
      }
      out.models[i][r] = ArrivalModel{ArrivalKind::bernoulli, rate, std::nullopt};
      for (int n = 0; n < base.clients; ++n)
        cfg.throughput_req[i][r][n] = base.req_factor * rate;
    }
  cfg.validate();
  return out;
}

PairedOutcome run_paired(const BuiltScenario& built, std::uint64_t seed,
                         const Tolerances& tol) {
  RunConfig rc{built.system, built.models, PolicyKind::sharing, seed, false};
  const RunRecord with_sharing = run(rc);
  rc.policy = PolicyKind::no_sharing;
  const RunRecord baseline = run(rc);

  PairedOutcome o;
  o.improvement_percent = improvement_percent(with_sharing, baseline);
  o.avg_shared_per_period = with_sharing.avg_shared_per_period;
  o.total_clients = built.system.total_clients();
  const auto sat_s = throughput_satisfied(with_sharing, built.system, tol);
  const auto sat_b = throughput_satisfied(baseline, built.system, tol);
  for (int i = 0; i < built.system.num_operators; ++i)
    for (int r = 0; r < built.system.num_regions; ++r)
      for (int n = 0; n < built.system.num_clients[i][r]; ++n) {
        o.satisfied_sharing += sat_s[i][r][n];
        o.satisfied_baseline += sat_b[i][r][n];
      }
  for (int i = 0; i < built.system.num_operators; ++i)
    for (int j = 0; j < built.system.num_operators; ++j)
      if (i != j)
        o.worst_net_sharing = std::max(o.worst_net_sharing, with_sharing.net_sharing[i][j]);
  o.max_delivery_debt = with_sharing.final_max_delivery_debt;
  o.max_sharing_debt = with_sharing.final_max_sharing_debt;
  o.rate_clamped = !built.clamps.empty();
  return o;
}

void ScenarioSpec::validate() const {
  tol.validate();
  if (replications < 1) throw ConfigError("sweep: replications must be >= 1");
  switch (sweep) {
    case SweepKind::none:
      break;
    case SweepKind::sharing_cap:
      if (cap_grid.empty()) throw ConfigError("sweep: empty sharing_cap grid");
      for (int c : cap_grid)
        if (c < 0) throw ConfigError("sweep: negative sharing_cap value");
      if (!(cap_beta1 >= 0.0 && cap_beta1 <= 1.0))
        throw ConfigError("sweep: beta1 outside [0,1]");
      break;
    case SweepKind::imbalance:
      if (beta_grid.empty()) throw ConfigError("sweep: empty imbalance grid");
      for (double b : beta_grid)
        if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("sweep: beta1 outside [0,1]");
      if (!(scale > 0.0)) throw ConfigError("sweep: scale must be > 0");
      break;
    case SweepKind::load: {
      const auto& grid = gamma_grid.empty() ? default_gamma_grid() : gamma_grid;
      for (double g : grid)
        if (!(g > 0.0))
          throw ConfigError("sweep: load values must be > 0 (zero-traffic baseline "
                            "has no defined improvement)");
      if (period_grid.empty()) throw ConfigError("sweep: empty period grid");
      for (int t : period_grid)
        if (t < 1) throw ConfigError("sweep: period_length must be >= 1");
      break;
    }
  }
}

ScenarioTable run_scenario(const ScenarioSpec& spec) {
  spec.validate();

  struct Point {
    double sweep_value;
    int period_length;
    BuiltScenario built;
  };
  std::vector<Point> points;

  switch (spec.sweep) {
    case SweepKind::none: {
      points.push_back({0.0, spec.base.period_length, build_scenario(spec.base)});
      break;
    }
    case SweepKind::sharing_cap: {
      for (int cap : spec.cap_grid) {
        ScenarioBase b = spec.base;
        b.sharing_cap = cap;
        b.rates = mirrored_rates(spec.scale * spec.cap_beta1,
                                 spec.scale * (1.0 - spec.cap_beta1));
        points.push_back({static_cast<double>(cap), b.period_length, build_scenario(b)});
      }
      break;
    }
    case SweepKind::imbalance: {
      for (double beta : spec.beta_grid) {
        ScenarioBase b = spec.base;
        b.rates = mirrored_rates(spec.scale * beta, spec.scale * (1.0 - beta));
        points.push_back({beta, b.period_length, build_scenario(b)});
      }
      break;
    }
    case SweepKind::load: {
      const auto grid = spec.gamma_grid.empty() ? default_gamma_grid() : spec.gamma_grid;
      for (int T : spec.period_grid)
        for (double gamma : grid) {
          ScenarioBase b = spec.base;
          b.period_length = T;
          b.rates = mirrored_rates(0.25 * gamma, 0.75 * gamma);
          points.push_back({gamma, T, build_scenario(b)});
        }
      break;
    }
  }

  ScenarioTable table;
  table.kind = spec.sweep;
  const int reps = spec.replications;
  table.rows.assign(points.size() * static_cast<std::size_t>(reps), SweepRow{});
  parallel_for(static_cast<int>(table.rows.size()), spec.parallelism, [&](int t) {
    const int p = t / reps, rep = t % reps;
    const std::uint64_t seed =
        derive_seed(spec.seed, Stream::replication, static_cast<std::uint64_t>(p),
                    static_cast<std::uint64_t>(rep));
    SweepRow row;
    row.sweep_value = points[static_cast<std::size_t>(p)].sweep_value;
    row.period_length = points[static_cast<std::size_t>(p)].period_length;
    row.replication = rep;
    row.outcome = run_paired(points[static_cast<std::size_t>(p)].built, seed, spec.tol);
    table.rows[static_cast<std::size_t>(t)] = std::move(row);
  });

  // CSV
  std::string csv;
  const char* common =
      "improvement_percent,avg_shared_per_period,satisfied_sharing,"
      "satisfied_baseline,total_clients,worst_net_sharing,max_delivery_debt,"
      "max_sharing_debt";
  switch (spec.sweep) {
    case SweepKind::none: csv = std::string("replication,") + common + "\n"; break;
    case SweepKind::sharing_cap:
      csv = std::string("sharing_cap,replication,") + common + "\n";
      break;
    case SweepKind::imbalance:
      csv = std::string("beta1,replication,") + common + "\n";
      break;
    case SweepKind::load:
      csv = std::string("period_length,gamma,replication,") + common +
            ",rate_clamped\n";
      break;
  }
  for (const SweepRow& row : table.rows) {
    std::string line;
    switch (spec.sweep) {
      case SweepKind::none: break;
      case SweepKind::sharing_cap:
        line += std::to_string(static_cast<int>(row.sweep_value)) + ",";
        break;
      case SweepKind::imbalance: line += fmt(row.sweep_value, 2) + ","; break;
      case SweepKind::load:
        line += std::to_string(row.period_length) + "," + fmt(row.sweep_value, 2) + ",";
        break;
    }
    const PairedOutcome& o = row.outcome;
    line += std::to_string(row.replication) + "," + fmt(o.improvement_percent) + "," +
            fmt(o.avg_shared_per_period) + "," + std::to_string(o.satisfied_sharing) +
            "," + std::to_string(o.satisfied_baseline) + "," +
            std::to_string(o.total_clients) + "," + fmt(o.worst_net_sharing) + "," +
            fmt(o.max_delivery_debt) + "," + fmt(o.max_sharing_debt);
    if (spec.sweep == SweepKind::load)
      line += std::string(",") + (o.rate_clamped ? "1" : "0");
    csv += line + "\n";
  }
  table.csv = std::move(csv);

  // Manifest with the fully resolved configuration.
  nlohmann::json m;
  m["tool"] = "bwshare";
  m["version"] = kVersion;
  m["seed"] = spec.seed;
  m["sweep"] = sweep_name(spec.sweep);
  m["replications"] = reps;
  nlohmann::json jb;
  jb["clients"] = spec.base.clients;
  jb["period_length"] = spec.base.period_length;
  jb["horizon"] = spec.base.horizon;
  jb["delivery_prob"] = spec.base.delivery_prob;
  jb["sharing_bound"] = spec.base.sharing_bound;
  jb["req_factor"] = spec.base.req_factor;
  m["base"] = jb;
  switch (spec.sweep) {
    case SweepKind::none:
      m["rates"] = spec.base.rates;
      if (spec.base.sharing_cap) m["sharing_cap"] = *spec.base.sharing_cap;
      break;
    case SweepKind::sharing_cap:
      m["cap_grid"] = spec.cap_grid;
      m["beta1"] = spec.cap_beta1;
      m["scale"] = spec.scale;
      break;
    case SweepKind::imbalance:
      m["beta_grid"] = spec.beta_grid;
      m["scale"] = spec.scale;
      break;
    case SweepKind::load:
      m["gamma_grid"] = spec.gamma_grid.empty() ? default_gamma_grid() : spec.gamma_grid;
      m["period_grid"] = spec.period_grid;
      break;
  }
  m["tolerances"] = {{"xi1", spec.tol.xi1}, {"xi2", spec.tol.xi2}};
  nlohmann::json clamps = nlohmann::json::array();
  for (std::size_t p = 0; p < points.size(); ++p)
    for (const ClampEvent& c : points[p].built.clamps)
      clamps.push_back({{"sweep_value", points[p].sweep_value},
                        {"period_length", points[p].period_length},
                        {"operator", c.op},
                        {"region", c.region},
                        {"requested_rate", c.requested},
                        {"used_rate", c.used}});
  m["clamped_rates"] = clamps;
  table.manifest = m.dump(2) + "\n";
  return table;
}

void emit_fig1(double mu, double rho, const std::vector<double>& d_grid,
               std::ostream& out) {
  out << "D,gain_percent\n";
  for (double d : d_grid) {
    const double gain = pooling_gain({mu, rho, d});
    out << fmt(d, 4) << ',' << fmt(100.0 * gain) << '\n';
  }
}

std::vector<double> default_deadline_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 20; ++i) g.push_back(0.5 * i);
  return g;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 20; ++i) g.push_back(0.1 * i);
  return g;
}

std::string run_record_json(const RunConfig& rc, const RunRecord& rec,
                            const Tolerances& tol) {
  nlohmann::json j;
  j["tool"] = "bwshare";
  j["version"] = kVersion;
  j["seed"] = rc.seed;
  j["policy"] = rc.policy == PolicyKind::sharing ? "sharing" : "no_sharing";
  j["system"] = detail::system_to_json(rc.system);
  j["arrivals"] = detail::models_to_json(rc.arrivals);
  j["tolerances"] = {{"xi1", tol.xi1}, {"xi2", tol.xi2}};

  nlohmann::json r;
  r["per_client_timely"] = rec.per_client_timely;
  r["net_sharing"] = rec.net_sharing;
  r["avg_shared_per_period"] = rec.avg_shared_per_period;
  r["final_max_delivery_debt"] = rec.final_max_delivery_debt;
  r["final_max_sharing_debt"] = rec.final_max_sharing_debt;
  r["throughput_satisfied"] = throughput_satisfied(rec, rc.system, tol);
  r["sharing_satisfied"] = sharing_satisfied(rec, rc.system, tol);
  if (!rec.lyapunov_trace.empty()) {
    r["lyapunov_final"] = rec.lyapunov_trace.back();
    r["max_delivery_debt_trace_len"] = rec.max_delivery_debt_trace.size();
  }
  j["record"] = r;
  return j.dump(2) + "\n";
}

}  // namespace bwshare
