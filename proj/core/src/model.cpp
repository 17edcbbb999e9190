#include "bwshare/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bwshare {

int SystemConfig::total_clients() const {
  int n = 0;
  for (int i = 0; i < num_operators; ++i)
    for (int r = 0; r < num_regions; ++r) n += num_clients[i][r];
  return n;
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

template <typename T>
void check_client_shape(const SystemConfig& cfg, const PerClient<T>& f,
                        const char* what) {
  if (static_cast<int>(f.size()) != cfg.num_operators)
    throw IndexError(std::string(what) + ": operator count mismatch");
  for (int i = 0; i < cfg.num_operators; ++i) {
    if (static_cast<int>(f[i].size()) != cfg.num_regions)
      throw IndexError(std::string(what) + ": region count mismatch");
    for (int r = 0; r < cfg.num_regions; ++r)
      if (static_cast<int>(f[i][r].size()) != cfg.num_clients[i][r])
        throw IndexError(std::string(what) + ": client count mismatch");
  }
}

}  // namespace

void SystemConfig::validate() const {
  require(num_operators >= 1, "config: at least one operator required");
  require(num_regions >= 1, "config: at least one region required");
  require(period_length >= 1, "config: period_length must be >= 1");
  require(horizon >= 1, "config: horizon must be >= 1");
  require(static_cast<int>(num_clients.size()) == num_operators,
          "config: num_clients shape");
  for (int i = 0; i < num_operators; ++i) {
    require(static_cast<int>(num_clients[i].size()) == num_regions,
            "config: num_clients shape");
    for (int r = 0; r < num_regions; ++r)
      require(num_clients[i][r] >= 0, "config: negative client count");
  }
  try {
    check_client_shape(*this, delivery_prob, "delivery_prob");
    check_client_shape(*this, throughput_req, "throughput_req");
  } catch (const IndexError& e) {
    throw ConfigError(e.what());
  }
  for (int i = 0; i < num_operators; ++i)
    for (int r = 0; r < num_regions; ++r)
      for (int n = 0; n < num_clients[i][r]; ++n) {
        const double p = delivery_prob[i][r][n];
        require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
                "config: delivery_prob outside [0,1]");
        const double q = throughput_req[i][r][n];
        require(std::isfinite(q) && q >= 0.0, "config: negative throughput_req");
      }
  require(static_cast<int>(sharing_bound.size()) == num_operators,
          "config: sharing_bound shape");
  for (int i = 0; i < num_operators; ++i) {
    require(static_cast<int>(sharing_bound[i].size()) == num_operators,
            "config: sharing_bound shape");
    for (int j = 0; j < num_operators; ++j) {
      if (i == j) continue;
      const double z = sharing_bound[i][j];
      require(std::isfinite(z) && z >= 0.0, "config: negative sharing_bound");
      require(sharing_bound[i][j] == sharing_bound[j][i],
              "config: sharing_bound must be symmetric");
    }
  }
  if (sharing_cap) require(*sharing_cap >= 0, "config: negative sharing_cap");
}

void check_state_shape(const SystemConfig& cfg, const PeriodState& state) {
  check_client_shape(cfg, state.arrivals, "arrivals");
  check_client_shape(cfg, state.delivery_flip, "delivery_flip");
  if (static_cast<int>(state.region_arrivals.size()) != cfg.num_operators)
    throw IndexError("region_arrivals: operator count mismatch");
  for (int i = 0; i < cfg.num_operators; ++i)
    if (static_cast<int>(state.region_arrivals[i].size()) != cfg.num_regions)
      throw IndexError("region_arrivals: region count mismatch");
}

void check_decision_shape(const SystemConfig& cfg, const Decision& d) {
  check_client_shape(cfg, d.schedule, "schedule");
  if (static_cast<int>(d.share.size()) != cfg.num_operators)
    throw IndexError("share: giver count mismatch");
  for (int j = 0; j < cfg.num_operators; ++j) {
    if (static_cast<int>(d.share[j].size()) != cfg.num_operators)
      throw IndexError("share: receiver count mismatch");
    for (int i = 0; i < cfg.num_operators; ++i)
      if (static_cast<int>(d.share[j][i].size()) != cfg.num_regions)
        throw IndexError("share: region count mismatch");
  }
}

void check_debt_shape(const SystemConfig& cfg, const DebtState& debts) {
  check_client_shape(cfg, debts.delivery_debt, "delivery_debt");
  if (static_cast<int>(debts.sharing_debt.size()) != cfg.num_operators)
    throw IndexError("sharing_debt: operator count mismatch");
  for (int i = 0; i < cfg.num_operators; ++i)
    if (static_cast<int>(debts.sharing_debt[i].size()) != cfg.num_operators)
      throw IndexError("sharing_debt: operator count mismatch");
}

const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::schedule_without_arrival: return "schedule_without_arrival";
    case Constraint::schedule_exceeds_slots: return "schedule_exceeds_slots";
    case Constraint::negative_share: return "negative_share";
    case Constraint::giver_slot_budget: return "giver_slot_budget";
    case Constraint::own_use_exceeds_arrivals: return "own_use_exceeds_arrivals";
    case Constraint::give_exceeds_spare: return "give_exceeds_spare";
    case Constraint::receive_exceeds_overflow: return "receive_exceeds_overflow";
    case Constraint::give_exceeds_cap: return "give_exceeds_cap";
    case Constraint::receive_exceeds_cap: return "receive_exceeds_cap";
  }
  return "unknown";
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << constraint_name(constraint);
  if (giver >= 0) os << " giver=" << giver;
  if (receiver >= 0) os << " receiver=" << receiver;
  if (region >= 0) os << " region=" << region;
  if (client >= 0) os << " client=" << client;
  return os.str();
}

std::vector<Violation> validate_decision(const SystemConfig& cfg,
                                         const PeriodState& state,
                                         const Decision& d) {
  check_state_shape(cfg, state);
  check_decision_shape(cfg, d);

  const int T = cfg.period_length;
  std::vector<Violation> out;

  for (int i = 0; i < cfg.num_operators; ++i) {
    for (int r = 0; r < cfg.num_regions; ++r) {
      const int arrived = state.region_arrivals[i][r];

      int scheduled = 0;
      for (int n = 0; n < cfg.num_clients[i][r]; ++n) {
        if (d.schedule[i][r][n] > state.arrivals[i][r][n])
          out.push_back({Constraint::schedule_without_arrival, -1, i, r, n});
        scheduled += d.schedule[i][r][n];
      }

      int slots = 0;  // everything given to i in region r, own use included
      for (int j = 0; j < cfg.num_operators; ++j) slots += d.share[j][i][r];
      if (scheduled > slots)
        out.push_back({Constraint::schedule_exceeds_slots, -1, i, r, -1});

      if (d.share[i][i][r] > arrived)
        out.push_back({Constraint::own_use_exceeds_arrivals, i, i, r, -1});

      int received = 0;
      for (int j = 0; j < cfg.num_operators; ++j)
        if (j != i) received += d.share[j][i][r];
      if (received > std::max(arrived - T, 0))
        out.push_back({Constraint::receive_exceeds_overflow, -1, i, r, -1});
      if (cfg.sharing_cap && received > *cfg.sharing_cap)
        out.push_back({Constraint::receive_exceeds_cap, -1, i, r, -1});
    }
  }

  for (int j = 0; j < cfg.num_operators; ++j) {
    for (int r = 0; r < cfg.num_regions; ++r) {
      int total = 0, given = 0;
      for (int i = 0; i < cfg.num_operators; ++i) {
        const int s = d.share[j][i][r];
        if (s < 0) out.push_back({Constraint::negative_share, j, i, r, -1});
        total += s;
        if (i != j) given += s;
      }
      if (total > T) out.push_back({Constraint::giver_slot_budget, j, -1, r, -1});
      if (given > std::max(T - state.region_arrivals[j][r], 0))
        out.push_back({Constraint::give_exceeds_spare, j, -1, r, -1});
      if (cfg.sharing_cap && given > *cfg.sharing_cap)
        out.push_back({Constraint::give_exceeds_cap, j, -1, r, -1});
    }
  }

  return out;
}

}  // namespace bwshare
