#include <doctest.h>

#include <cmath>
#include <vector>

#include "bwshare/arrivals.hpp"
#include "bwshare/model.hpp"

using namespace bwshare;

namespace {

SystemConfig tiny(int ops, int regions, int clients) {
  SystemConfig cfg;
  cfg.num_operators = ops;
  cfg.num_regions = regions;
  cfg.num_clients = cfg.region_field<int>(clients);
  cfg.period_length = 1;
  cfg.horizon = 1;
  cfg.delivery_prob = cfg.client_field<double>(1.0);
  cfg.throughput_req = cfg.client_field<double>(0.0);
  cfg.sharing_bound = cfg.pair_field<double>(0.0);
  return cfg;
}

PerRegion<ArrivalModel> uniform_models(const SystemConfig& cfg, ArrivalModel m) {
  return PerRegion<ArrivalModel>(
      cfg.num_operators,
      std::vector<ArrivalModel>(static_cast<std::size_t>(cfg.num_regions), m));
}

// Lag-1 sample autocorrelation of a 0/1 sequence.
double lag1_autocorr(const std::vector<int>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (int x : xs) mean += x;
  mean /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    den += (xs[k] - mean) * (xs[k] - mean);
    if (k + 1 < xs.size()) num += (xs[k] - mean) * (xs[k + 1] - mean);
  }
  return num / den;
}

std::vector<int> sample_sequence(ArrivalModel m, int periods, std::uint64_t seed) {
  const SystemConfig cfg = tiny(1, 1, 1);
  ArrivalSampler s(cfg, uniform_models(cfg, m), seed);
  std::vector<int> xs;
  xs.reserve(static_cast<std::size_t>(periods));
  for (int k = 0; k < periods; ++k) xs.push_back(s.next_period().arrivals[0][0][0]);
  return xs;
}

}  // namespace

TEST_CASE("degenerate rates") {
  for (int x : sample_sequence({ArrivalKind::bernoulli, 0.0, {}}, 200, 1)) CHECK(x == 0);
  for (int x : sample_sequence({ArrivalKind::bernoulli, 1.0, {}}, 200, 1)) CHECK(x == 1);
  const SystemConfig cfg = tiny(2, 2, 3);
  ArrivalSampler s(cfg, uniform_models(cfg, {ArrivalKind::bernoulli, 0.0, {}}), 9);
  const auto b = s.next_period();
  for (int i = 0; i < 2; ++i)
    for (int r = 0; r < 2; ++r) CHECK(b.region_arrivals[i][r] == 0);
}

TEST_CASE("bernoulli empirical mean matches the rate") {
  const auto xs = sample_sequence({ArrivalKind::bernoulli, 0.3, {}}, 100000, 42);
  double mean = 0.0;
  for (int x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  CHECK(std::abs(mean - 0.3) < 0.01);
}

TEST_CASE("bernoulli periods are uncorrelated") {
  const auto xs = sample_sequence({ArrivalKind::bernoulli, 0.5, {}}, 1000000, 7);
  CHECK(std::abs(lag1_autocorr(xs)) < 0.01);
}

TEST_CASE("markov chain lag-1 autocorrelation at the symmetric rate") {
  // stay-probability p in the symmetric chain gives autocorrelation 2p-1
  const auto xs =
      sample_sequence({ArrivalKind::two_state_markov, 0.5, 0.8}, 1000000, 11);
  CHECK(std::abs(lag1_autocorr(xs) - 0.6) < 0.01);
}

TEST_CASE("markov chain is stationary from the first period") {
  for (double rate : {0.2, 0.5, 0.7}) {
    const auto xs =
        sample_sequence({ArrivalKind::two_state_markov, rate, 0.75}, 10000, 23);
    double mean = 0.0;
    for (int x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    CHECK(std::abs(mean - rate) < 0.035);  // memory shrinks the effective sample
  }
}

TEST_CASE("clients are independent") {
  const SystemConfig cfg = tiny(1, 1, 2);
  ArrivalSampler s(cfg, uniform_models(cfg, {ArrivalKind::bernoulli, 0.5, {}}), 3);
  std::vector<int> a, b;
  for (int k = 0; k < 200000; ++k) {
    const auto batch = s.next_period();
    a.push_back(batch.arrivals[0][0][0]);
    b.push_back(batch.arrivals[0][0][1]);
  }
  double ma = 0.0, mb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ma += a[k];
    mb += b[k];
  }
  ma /= a.size();
  mb /= b.size();
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    cov += (a[k] - ma) * (b[k] - mb);
    va += (a[k] - ma) * (a[k] - ma);
    vb += (b[k] - mb) * (b[k] - mb);
  }
  CHECK(std::abs(cov / std::sqrt(va * vb)) < 0.01);
}

TEST_CASE("same seed reproduces the sequence; streams are per client") {
  const auto a = sample_sequence({ArrivalKind::bernoulli, 0.4, {}}, 500, 77);
  const auto b = sample_sequence({ArrivalKind::bernoulli, 0.4, {}}, 500, 77);
  CHECK(a == b);
  const auto c = sample_sequence({ArrivalKind::bernoulli, 0.4, {}}, 500, 78);
  CHECK(a != c);

  // Adding clients must not perturb an existing client's draws.
  const SystemConfig one = tiny(1, 1, 1);
  const SystemConfig three = tiny(1, 1, 3);
  ArrivalSampler s1(one, uniform_models(one, {ArrivalKind::bernoulli, 0.4, {}}), 77);
  ArrivalSampler s3(three, uniform_models(three, {ArrivalKind::bernoulli, 0.4, {}}), 77);
  for (int k = 0; k < 300; ++k)
    CHECK(s1.next_period().arrivals[0][0][0] == s3.next_period().arrivals[0][0][0]);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS((ArrivalModel{ArrivalKind::bernoulli, 1.2, {}}.validate()),
                  ConfigError);
  CHECK_THROWS_AS((ArrivalModel{ArrivalKind::bernoulli, -0.1, {}}.validate()),
                  ConfigError);
  CHECK_THROWS_AS((ArrivalModel{ArrivalKind::bernoulli, 0.4, 0.5}.validate()),
                  ConfigError);
  CHECK_THROWS_AS((ArrivalModel{ArrivalKind::two_state_markov, 0.4, {}}.validate()),
                  ConfigError);
  CHECK_THROWS_AS((ArrivalModel{ArrivalKind::two_state_markov, 0.4, 1.0}.validate()),
                  ConfigError);
  // anti-persistent chain incompatible with an extreme rate
  CHECK_THROWS_AS((ArrivalModel{ArrivalKind::two_state_markov, 0.9, 0.05}.validate()),
                  ConfigError);
  ArrivalModel ok{ArrivalKind::two_state_markov, 0.5, 0.9};
  CHECK_NOTHROW(ok.validate());

  const SystemConfig cfg = tiny(2, 2, 1);
  PerRegion<ArrivalModel> missing(1);  // one operator short
  CHECK_THROWS_AS(ArrivalSampler(cfg, missing, 1), ConfigError);
}
