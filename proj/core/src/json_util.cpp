#include "json_util.hpp"

namespace bwshare::detail {

using nlohmann::json;

json system_to_json(const SystemConfig& cfg) {
  json j;
  j["operators"] = cfg.num_operators;
  j["regions"] = cfg.num_regions;
  j["clients_per"] = cfg.num_clients;
  j["period_length"] = cfg.period_length;
  j["horizon"] = cfg.horizon;
  j["delivery_prob"] = cfg.delivery_prob;
  j["throughput_req"] = cfg.throughput_req;
  j["sharing_bound"] = cfg.sharing_bound;
  if (cfg.sharing_cap)
    j["sharing_cap"] = *cfg.sharing_cap;
  else
    j["sharing_cap"] = nullptr;
  return j;
}

json models_to_json(const PerRegion<ArrivalModel>& models) {
  json rows = json::array();
  for (const auto& per_op : models) {
    json row = json::array();
    for (const ArrivalModel& m : per_op) {
      json jm;
      jm["kind"] = m.kind == ArrivalKind::bernoulli ? "bernoulli" : "two_state_markov";
      jm["rate"] = m.rate;
      if (m.persistence) jm["persistence"] = *m.persistence;
      row.push_back(jm);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bwshare::detail
