#include "bwshare/simulator.hpp"

#include <algorithm>
#include <ostream>

#include "bwshare/metrics.hpp"
#include "bwshare/policy.hpp"
#include "bwshare/rng.hpp"

namespace bwshare {

RunRecord run(const RunConfig& rc, std::ostream* client_trace,
              std::ostream* pair_trace) {
  const SystemConfig& cfg = rc.system;
  cfg.validate();

  ArrivalSampler sampler(cfg, rc.arrivals, rc.seed);
  PerClient<std::mt19937_64> channel = cfg.client_field<std::mt19937_64>({});
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        channel[i][r][n].seed(derive_seed(rc.seed, Stream::delivery,
                                          static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(n)));

  DebtState debts = DebtState::zero(cfg);
  PerClient<std::int64_t> delivered_count = cfg.client_field<std::int64_t>(0);
  PerPair<std::int64_t> received_total = cfg.pair_field<std::int64_t>(0);
  std::int64_t cross_slots_total = 0;

  RunRecord rec;
  if (rc.record_traces) {
    rec.max_delivery_debt_trace.reserve(static_cast<std::size_t>(cfg.horizon));
    rec.max_sharing_debt_trace.reserve(static_cast<std::size_t>(cfg.horizon));
    rec.lyapunov_trace.reserve(static_cast<std::size_t>(cfg.horizon));
  }

  if (client_trace)
    *client_trace << "k,operator,region,client,arrived,scheduled,delivered,delta\n";
  if (pair_trace) *pair_trace << "k,i,j,sigma,net_shared\n";

  for (int k = 1; k <= cfg.horizon; ++k) {
    ArrivalSampler::Batch batch = sampler.next_period();
    PeriodState state{std::move(batch.arrivals), std::move(batch.region_arrivals),
                      cfg.client_field<std::uint8_t>(0)};
    for (int i = 0; i < cfg.num_operators; ++i)
      for (int r = 0; r < cfg.num_regions; ++r)
        for (int n = 0; n < cfg.num_clients[i][r]; ++n)
          state.delivery_flip[i][r][n] =
              bernoulli(channel[i][r][n], cfg.delivery_prob[i][r][n]) ? 1 : 0;

    const Decision d = rc.policy == PolicyKind::sharing
                           ? solve_period(cfg, state, debts)
                           : solve_period_no_sharing(cfg, state, debts);

    for (int i = 0; i < cfg.num_operators; ++i)
      for (int r = 0; r < cfg.num_regions; ++r)
        for (int n = 0; n < cfg.num_clients[i][r]; ++n)
          if (d.schedule[i][r][n] && state.delivery_flip[i][r][n])
            ++delivered_count[i][r][n];
    for (int i = 0; i < cfg.num_operators; ++i)
      for (int j = 0; j < cfg.num_operators; ++j) {
        if (i == j) continue;
        for (int r = 0; r < cfg.num_regions; ++r) {
          received_total[i][j] += d.share[j][i][r];
          cross_slots_total += d.share[j][i][r];
        }
      }

    debts = update_debts(cfg, debts, d, state);

    if (rc.record_traces) {
      double max_delta = 0.0, max_sigma = 0.0;
      for (int i = 0; i < cfg.num_operators; ++i) {
        for (int r = 0; r < cfg.num_regions; ++r)
          for (int n = 0; n < cfg.num_clients[i][r]; ++n)
            max_delta = std::max(max_delta, debts.delivery_debt[i][r][n]);
        for (int j = 0; j < cfg.num_operators; ++j)
          if (i != j) max_sigma = std::max(max_sigma, debts.sharing_debt[i][j]);
      }
      rec.max_delivery_debt_trace.push_back(max_delta);
      rec.max_sharing_debt_trace.push_back(max_sigma);
      rec.lyapunov_trace.push_back(lyapunov_value(debts));
    }

    if (client_trace) {
      for (int i = 0; i < cfg.num_operators; ++i)
        for (int r = 0; r < cfg.num_regions; ++r)
          for (int n = 0; n < cfg.num_clients[i][r]; ++n)
            *client_trace << k << ',' << i << ',' << r << ',' << n << ','
                          << int(state.arrivals[i][r][n]) << ','
                          << int(d.schedule[i][r][n]) << ','
                          << (d.schedule[i][r][n] && state.delivery_flip[i][r][n]
                                  ? 1
                                  : 0)
                          << ',' << debts.delivery_debt[i][r][n] << '\n';
    }
    if (pair_trace) {
      for (int i = 0; i < cfg.num_operators; ++i)
        for (int j = 0; j < cfg.num_operators; ++j) {
          if (i == j) continue;
          int net = 0;
          for (int r = 0; r < cfg.num_regions; ++r)
            net += d.share[j][i][r] - d.share[i][j][r];
          *pair_trace << k << ',' << i << ',' << j << ','
                      << debts.sharing_debt[i][j] << ',' << net << '\n';
        }
    }
  }

  const double K = static_cast<double>(cfg.horizon);
  rec.per_client_timely = cfg.client_field<double>(0.0);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        rec.per_client_timely[i][r][n] =
            static_cast<double>(delivered_count[i][r][n]) / K;
  rec.net_sharing = cfg.pair_field<double>(0.0);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int j = 0; j < cfg.num_operators; ++j) {
      if (i == j) continue;
      rec.net_sharing[i][j] =
          static_cast<double>(std::abs(received_total[i][j] - received_total[j][i])) /
          K;
    }
  rec.avg_shared_per_period = static_cast<double>(cross_slots_total) / K;
  for (int i = 0; i < cfg.num_operators; ++i) {
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        rec.final_max_delivery_debt =
            std::max(rec.final_max_delivery_debt, debts.delivery_debt[i][r][n]);
    for (int j = 0; j < cfg.num_operators; ++j)
      if (i != j)
        rec.final_max_sharing_debt =
            std::max(rec.final_max_sharing_debt, debts.sharing_debt[i][j]);
  }
  return rec;
}

}  // namespace bwshare
