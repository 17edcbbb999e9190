#include "bwshare/metrics.hpp"

#include <stdexcept>

namespace bwshare {

namespace {

double total_timely(const RunRecord& rec) {
  double t = 0.0;
  for (const auto& per_op : rec.per_client_timely)
    for (const auto& per_region : per_op)
      for (double v : per_region) t += v;
  return t;
}

}  // namespace

PerClient<std::uint8_t> throughput_satisfied(const RunRecord& rec,
                                             const SystemConfig& cfg,
                                             const Tolerances& tol) {
  tol.validate();
  auto out = cfg.client_field<std::uint8_t>(0);
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r) {
      if (static_cast<int>(rec.per_client_timely.size()) != cfg.num_operators ||
          static_cast<int>(rec.per_client_timely[i].size()) != cfg.num_regions ||
          static_cast<int>(rec.per_client_timely[i][r].size()) !=
              cfg.num_clients[i][r])
        throw IndexError("metrics: record does not match configuration");
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        out[i][r][n] = rec.per_client_timely[i][r][n] >=
                               cfg.throughput_req[i][r][n] - tol.xi1
                           ? 1
                           : 0;
    }
  return out;
}

PerPair<std::uint8_t> sharing_satisfied(const RunRecord& rec,
                                        const SystemConfig& cfg,
                                        const Tolerances& tol) {
  tol.validate();
  if (static_cast<int>(rec.net_sharing.size()) != cfg.num_operators)
    throw IndexError("metrics: record does not match configuration");
  auto out = cfg.pair_field<std::uint8_t>(1);
  for (int i = 0; i < cfg.num_operators; ++i) {
    if (static_cast<int>(rec.net_sharing[i].size()) != cfg.num_operators)
      throw IndexError("metrics: record does not match configuration");
    for (int j = 0; j < cfg.num_operators; ++j) {
      if (i == j) continue;
      out[i][j] =
          rec.net_sharing[i][j] <= cfg.sharing_bound[i][j] + tol.xi2 ? 1 : 0;
    }
  }
  return out;
}

double improvement_percent(const RunRecord& with_sharing,
                           const RunRecord& without_sharing) {
  const double base = total_timely(without_sharing);
  if (base == 0.0)
    throw std::domain_error("metrics: improvement undefined for zero baseline");
  return 100.0 * (total_timely(with_sharing) - base) / base;
}

double lyapunov_value(const DebtState& debts) {
  double v = 0.0;
  for (const auto& per_op : debts.delivery_debt)
    for (const auto& per_region : per_op)
      for (double d : per_region) v += d * d;
  const int ops = static_cast<int>(debts.sharing_debt.size());
  for (int i = 0; i < ops; ++i)
    for (int j = 0; j < ops; ++j)
      if (i != j) v += debts.sharing_debt[i][j] * debts.sharing_debt[i][j];
  return v;
}

}  // namespace bwshare
