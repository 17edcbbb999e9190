#include "bwshare/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bwshare {

namespace {

// Relative half-width of the switchover band around rho = 1 where the raw
// formula is 0/0; inside it the analytic limit is used instead.
constexpr double kUnitIntensityBand = 1e-9;

// Exponents below this saturate e^x to zero; keeps the rho < 1 branch from
// raising spurious underflow while the result saturates to 1 correctly.
constexpr double kExpFloor = -700.0;

void check_params(const QueueParams& p) {
  if (!std::isfinite(p.mu) || !std::isfinite(p.rho) || !std::isfinite(p.deadline))
    throw std::domain_error("queueing: non-finite parameter");
  if (p.mu <= 0.0) throw std::domain_error("queueing: service rate must be > 0");
  if (p.deadline <= 0.0) throw std::domain_error("queueing: deadline must be > 0");
  if (p.rho < 0.0) throw std::domain_error("queueing: intensity must be >= 0");
}

}  // namespace

double success_probability(const QueueParams& p) {
  check_params(p);
  const double md = p.mu * p.deadline;

  if (std::abs(p.rho - 1.0) < kUnitIntensityBand) return md / (1.0 + md);

  double v;
  if (p.rho < 1.0) {
    double x = md * (p.rho - 1.0);  // < 0
    if (x < kExpFloor) x = kExpFloor;
    const double e = std::exp(x);
    v = (1.0 - e) / (1.0 - p.rho * e);
  } else {
    // Multiply numerator and denominator by e^{-x}; stable for large x.
    const double e = std::exp(-md * (p.rho - 1.0));
    v = (e - 1.0) / (e - p.rho);
  }
  return std::clamp(v, 0.0, 1.0);
}

double pooling_gain(const QueueParams& p) {
  const double base = success_probability(p);
  if (base == 0.0)
    throw std::domain_error("queueing: zero baseline success probability");
  const double pooled = success_probability({2.0 * p.mu, p.rho, p.deadline});
  return (pooled - base) / base;
}

}  // namespace bwshare
