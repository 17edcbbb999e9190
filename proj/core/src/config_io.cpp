#include "bwshare/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bwshare {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& section) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key \"" + it.key() + "\" in section \"" +
                        section + "\"");
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError("config: " + where + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError("config: " + where + " must be an integer");
  return v.get<int>();
}

// number -> uniform; [op][region] -> per pair; [op][region][client] -> exact.
PerClient<double> client_values(const json& v, const SystemConfig& cfg,
                                const std::string& where) {
  if (v.is_number()) return cfg.client_field<double>(v.get<double>());
  if (!v.is_array() || static_cast<int>(v.size()) != cfg.num_operators)
    throw ConfigError("config: " + where + " must be a number or an array per operator");
  PerClient<double> out = cfg.client_field<double>(0.0);
  for (int i = 0; i < cfg.num_operators; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cfg.num_regions)
      throw ConfigError("config: " + where + " region dimension mismatch");
    for (int r = 0; r < cfg.num_regions; ++r) {
      const json& cell = row[static_cast<std::size_t>(r)];
      if (cell.is_number()) {
        for (int n = 0; n < cfg.num_clients[i][r]; ++n)
          out[i][r][n] = cell.get<double>();
      } else if (cell.is_array() &&
                 static_cast<int>(cell.size()) == cfg.num_clients[i][r]) {
        for (int n = 0; n < cfg.num_clients[i][r]; ++n)
          out[i][r][n] = as_number(cell[static_cast<std::size_t>(n)], where);
      } else {
        throw ConfigError("config: " + where + " client dimension mismatch");
      }
    }
  }
  return out;
}

SystemConfig parse_system(const json& sys) {
  require_keys(sys,
               {"operators", "regions", "clients_per", "period_length", "horizon",
                "delivery_prob", "throughput_req", "sharing_bound", "sharing_cap"},
               "system");
  for (const char* key : {"operators", "regions", "clients_per", "period_length",
                          "horizon", "delivery_prob", "throughput_req",
                          "sharing_bound"})
    if (!sys.contains(key))
      throw ConfigError(std::string("config: system is missing \"") + key + "\"");

  SystemConfig cfg;
  cfg.num_operators = as_int(sys["operators"], "system.operators");
  cfg.num_regions = as_int(sys["regions"], "system.regions");
  if (cfg.num_operators < 1 || cfg.num_regions < 1)
    throw ConfigError("config: operators and regions must be >= 1");

  const json& cp = sys["clients_per"];
  if (cp.is_number_integer()) {
    cfg.num_clients = cfg.region_field<int>(cp.get<int>());
  } else if (cp.is_array() && static_cast<int>(cp.size()) == cfg.num_operators) {
    cfg.num_clients = cfg.region_field<int>(0);
    for (int i = 0; i < cfg.num_operators; ++i) {
      const json& row = cp[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != cfg.num_regions)
        throw ConfigError("config: clients_per region dimension mismatch");
      for (int r = 0; r < cfg.num_regions; ++r)
        cfg.num_clients[i][r] = as_int(row[static_cast<std::size_t>(r)],
                                       "system.clients_per");
    }
  } else {
    throw ConfigError("config: clients_per must be an integer or per-operator array");
  }

  cfg.period_length = as_int(sys["period_length"], "system.period_length");
  cfg.horizon = as_int(sys["horizon"], "system.horizon");
  cfg.delivery_prob = client_values(sys["delivery_prob"], cfg, "system.delivery_prob");
  cfg.throughput_req = client_values(sys["throughput_req"], cfg, "system.throughput_req");

  const json& sb = sys["sharing_bound"];
  if (sb.is_number()) {
    cfg.sharing_bound = cfg.pair_field<double>(sb.get<double>());
    for (int i = 0; i < cfg.num_operators; ++i) cfg.sharing_bound[i][i] = 0.0;
  } else if (sb.is_array() && static_cast<int>(sb.size()) == cfg.num_operators) {
    cfg.sharing_bound = cfg.pair_field<double>(0.0);
    for (int i = 0; i < cfg.num_operators; ++i) {
      const json& row = sb[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != cfg.num_operators)
        throw ConfigError("config: sharing_bound must be a square matrix");
      for (int j = 0; j < cfg.num_operators; ++j)
        cfg.sharing_bound[i][j] =
            as_number(row[static_cast<std::size_t>(j)], "system.sharing_bound");
    }
  } else {
    throw ConfigError("config: sharing_bound must be a number or a matrix");
  }

  if (sys.contains("sharing_cap") && !sys["sharing_cap"].is_null())
    cfg.sharing_cap = as_int(sys["sharing_cap"], "system.sharing_cap");

  cfg.validate();
  return cfg;
}

PerRegion<ArrivalModel> parse_arrivals(const json& arr, const SystemConfig& cfg) {
  require_keys(arr, {"kind", "rate", "persistence"}, "arrivals");
  if (!arr.contains("kind") || !arr.contains("rate"))
    throw ConfigError("config: arrivals needs \"kind\" and \"rate\"");

  ArrivalKind kind;
  const std::string k = arr["kind"].get<std::string>();
  if (k == "bernoulli")
    kind = ArrivalKind::bernoulli;
  else if (k == "two_state_markov")
    kind = ArrivalKind::two_state_markov;
  else
    throw ConfigError("config: unknown arrival kind \"" + k + "\"");

  std::optional<double> persistence;
  if (arr.contains("persistence"))
    persistence = as_number(arr["persistence"], "arrivals.persistence");

  PerRegion<double> rates(cfg.num_operators,
                          std::vector<double>(static_cast<std::size_t>(cfg.num_regions)));
  const json& rv = arr["rate"];
  if (rv.is_number()) {
    for (auto& row : rates)
      for (double& x : row) x = rv.get<double>();
  } else if (rv.is_array() && static_cast<int>(rv.size()) == cfg.num_operators) {
    for (int i = 0; i < cfg.num_operators; ++i) {
      const json& row = rv[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != cfg.num_regions)
        throw ConfigError("config: arrivals.rate region dimension mismatch");
      for (int r = 0; r < cfg.num_regions; ++r)
        rates[i][r] = as_number(row[static_cast<std::size_t>(r)], "arrivals.rate");
    }
  } else {
    throw ConfigError("config: arrivals.rate must be a number or [operator][region]");
  }

  PerRegion<ArrivalModel> models(cfg.num_operators,
                                 std::vector<ArrivalModel>(
                                     static_cast<std::size_t>(cfg.num_regions)));
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r) {
      models[i][r] = ArrivalModel{kind, rates[i][r], persistence};
      models[i][r].validate();
    }
  return models;
}

// Sweeps run on the two-operator, two-region family; reduce the parsed
// system back to its scalar base parameters, rejecting anything wider.
ScenarioBase scenario_base_from(const SystemConfig& cfg,
                                const PerRegion<ArrivalModel>& models) {
  if (cfg.num_operators != 2 || cfg.num_regions != 2)
    throw ConfigError("config: sweep requires two operators and two regions");
  ScenarioBase base;
  base.clients = cfg.num_clients[0][0];
  base.period_length = cfg.period_length;
  base.horizon = cfg.horizon;
  base.delivery_prob = cfg.delivery_prob[0][0].empty() ? 0.0 : cfg.delivery_prob[0][0][0];
  base.sharing_bound = cfg.sharing_bound[0][1];
  base.sharing_cap = cfg.sharing_cap;
  for (int i = 0; i < 2; ++i)
    for (int r = 0; r < 2; ++r) {
      if (cfg.num_clients[i][r] != base.clients)
        throw ConfigError("config: sweep requires a uniform client count");
      for (int n = 0; n < cfg.num_clients[i][r]; ++n)
        if (cfg.delivery_prob[i][r][n] != base.delivery_prob)
          throw ConfigError("config: sweep requires a uniform delivery_prob");
      if (models[i][r].kind != ArrivalKind::bernoulli)
        throw ConfigError("config: sweeps use bernoulli arrivals");
      base.rates[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] =
          models[i][r].rate;
    }
  // Requirement factor comes out of the stated requirements; a sweep rescales
  // rates, so it needs the factor, not absolute values.
  const double rate0 = models[0][0].rate;
  base.req_factor = rate0 > 0.0 ? cfg.throughput_req[0][0][0] / rate0 : 0.95;
  return base;
}

ScenarioSpec parse_sweep(const json& sw, const SystemConfig& cfg,
                         const PerRegion<ArrivalModel>& models) {
  require_keys(sw, {"kind", "values", "beta1", "scale", "period_lengths"}, "sweep");
  if (!sw.contains("kind")) throw ConfigError("config: sweep needs \"kind\"");

  ScenarioSpec spec;
  spec.base = scenario_base_from(cfg, models);

  const std::string kind = sw["kind"].get<std::string>();
  if (kind == "sharing_cap") {
    spec.sweep = SweepKind::sharing_cap;
    if (sw.contains("values")) {
      spec.cap_grid.clear();
      for (const json& v : sw["values"]) spec.cap_grid.push_back(as_int(v, "sweep.values"));
    }
    if (sw.contains("beta1")) spec.cap_beta1 = as_number(sw["beta1"], "sweep.beta1");
    if (sw.contains("scale")) spec.scale = as_number(sw["scale"], "sweep.scale");
  } else if (kind == "imbalance") {
    spec.sweep = SweepKind::imbalance;
    if (sw.contains("values")) {
      spec.beta_grid.clear();
      for (const json& v : sw["values"])
        spec.beta_grid.push_back(as_number(v, "sweep.values"));
    }
    if (sw.contains("scale")) spec.scale = as_number(sw["scale"], "sweep.scale");
    if (sw.contains("beta1"))
      throw ConfigError("config: sweep.beta1 is only valid for sharing_cap");
  } else if (kind == "load") {
    spec.sweep = SweepKind::load;
    if (sw.contains("values")) {
      spec.gamma_grid.clear();
      for (const json& v : sw["values"])
        spec.gamma_grid.push_back(as_number(v, "sweep.values"));
    }
    if (sw.contains("period_lengths")) {
      spec.period_grid.clear();
      for (const json& v : sw["period_lengths"])
        spec.period_grid.push_back(as_int(v, "sweep.period_lengths"));
    }
  } else {
    throw ConfigError("config: unknown sweep kind \"" + kind + "\"");
  }
  spec.validate();
  return spec;
}

}  // namespace

LoadedConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(doc, {"system", "arrivals", "policy", "sweep", "tolerances"}, "(top)");
  for (const char* key : {"system", "arrivals"})
    if (!doc.contains(key))
      throw ConfigError(std::string("config: missing section \"") + key + "\"");

  LoadedConfig out;
  out.run.system = parse_system(doc["system"]);
  out.run.arrivals = parse_arrivals(doc["arrivals"], out.run.system);

  if (doc.contains("policy")) {
    const json& pol = doc["policy"];
    require_keys(pol, {"kind"}, "policy");
    if (pol.contains("kind")) {
      const std::string k = pol["kind"].get<std::string>();
      if (k == "sharing")
        out.run.policy = PolicyKind::sharing;
      else if (k == "no_sharing")
        out.run.policy = PolicyKind::no_sharing;
      else
        throw ConfigError("config: unknown policy kind \"" + k + "\"");
    }
  }

  if (doc.contains("tolerances")) {
    const json& tl = doc["tolerances"];
    require_keys(tl, {"xi1", "xi2"}, "tolerances");
    if (tl.contains("xi1")) out.tol.xi1 = as_number(tl["xi1"], "tolerances.xi1");
    if (tl.contains("xi2")) out.tol.xi2 = as_number(tl["xi2"], "tolerances.xi2");
    out.tol.validate();
  }

  if (doc.contains("sweep")) {
    out.sweep = parse_sweep(doc["sweep"], out.run.system, out.run.arrivals);
    out.sweep->tol = out.tol;
  }
  return out;
}

LoadedConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace bwshare
