#ifndef BWSHARE_QUEUEING_HPP_
#define BWSHARE_QUEUEING_HPP_

namespace bwshare {

// Single-server Markovian queue whose customers renege after a fixed
// deadline. Used for the analytic pooling-gain curve.
struct QueueParams {
  double mu;        // average service rate, > 0
  double rho;       // traffic intensity, >= 0
  double deadline;  // impatience deadline, > 0
};

// Probability that a customer is served within the deadline:
//   (1 - e^{mu*D*(rho-1)}) / (1 - rho * e^{mu*D*(rho-1)})
// with the continuous limit mu*D / (1 + mu*D) at rho = 1. The rho > 1
// branch is evaluated in a rearranged form that cannot overflow.
// Throws std::domain_error on non-finite or out-of-range parameters.
double success_probability(const QueueParams& p);

// Fractional improvement in success probability when two identical queues
// pool arrivals and servers (service rate doubles, intensity unchanged):
//   (P(2*mu, rho, D) - P(mu, rho, D)) / P(mu, rho, D)
// Throws std::domain_error if the baseline probability is zero.
double pooling_gain(const QueueParams& p);

}  // namespace bwshare

#endif  // BWSHARE_QUEUEING_HPP_
