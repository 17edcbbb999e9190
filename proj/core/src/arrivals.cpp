#include "bwshare/arrivals.hpp"

#include <cmath>

#include "bwshare/rng.hpp"

namespace bwshare {

void ArrivalModel::validate() const {
  if (!std::isfinite(rate) || rate < 0.0 || rate > 1.0)
    throw ConfigError("arrivals: rate must lie in [0,1]");
  if (kind == ArrivalKind::two_state_markov) {
    if (!persistence) throw ConfigError("arrivals: two_state_markov needs persistence");
    if (!std::isfinite(*persistence) || *persistence < 0.0 || *persistence >= 1.0)
      throw ConfigError("arrivals: persistence must lie in [0,1)");
    const double lam = memory();
    const double p1 = rate + lam * (1.0 - rate);  // stay in arrival state
    const double p0 = rate * (1.0 - lam);         // enter arrival state
    if (p1 < 0.0 || p1 > 1.0 || p0 < 0.0 || p0 > 1.0)
      throw ConfigError("arrivals: persistence incompatible with rate");
  } else if (persistence) {
    throw ConfigError("arrivals: persistence is only valid for two_state_markov");
  }
}

ArrivalSampler::ArrivalSampler(const SystemConfig& cfg,
                               const PerRegion<ArrivalModel>& models,
                               std::uint64_t seed)
    : cfg_(&cfg), models_(models) {
  cfg.validate();
  if (static_cast<int>(models.size()) != cfg.num_operators)
    throw ConfigError("arrivals: missing model for some operator");
  for (int i = 0; i < cfg.num_operators; ++i) {
    if (static_cast<int>(models[i].size()) != cfg.num_regions)
      throw ConfigError("arrivals: missing model for some (operator, region)");
    for (int r = 0; r < cfg.num_regions; ++r) models[i][r].validate();
  }

  chains_ = cfg.client_field<Chain>({});
  for (int i = 0; i < cfg.num_operators; ++i)
    for (int r = 0; r < cfg.num_regions; ++r)
      for (int n = 0; n < cfg.num_clients[i][r]; ++n) {
        Chain& c = chains_[i][r][n];
        c.eng.seed(derive_seed(seed, Stream::arrivals,
                               static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(r),
                               static_cast<std::uint64_t>(n)));
        // stationary start
        c.state = bernoulli(c.eng, models_[i][r].rate) ? 1 : 0;
      }
}

ArrivalSampler::Batch ArrivalSampler::next_period() {
  Batch b{cfg_->client_field<std::uint8_t>(0), cfg_->region_field<int>(0)};
  for (int i = 0; i < cfg_->num_operators; ++i)
    for (int r = 0; r < cfg_->num_regions; ++r) {
      const ArrivalModel& m = models_[i][r];
      for (int n = 0; n < cfg_->num_clients[i][r]; ++n) {
        Chain& c = chains_[i][r][n];
        std::uint8_t a;
        if (m.kind == ArrivalKind::bernoulli) {
          a = bernoulli(c.eng, m.rate) ? 1 : 0;
        } else {
          const double p_next =
              m.rate + m.memory() * (static_cast<double>(c.state) - m.rate);
          a = bernoulli(c.eng, p_next) ? 1 : 0;
        }
        c.state = a;
        b.arrivals[i][r][n] = a;
        b.region_arrivals[i][r] += a;
      }
    }
  return b;
}

}  // namespace bwshare
