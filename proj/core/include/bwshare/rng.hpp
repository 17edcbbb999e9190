#ifndef BWSHARE_RNG_HPP_
#define BWSHARE_RNG_HPP_

#include <cstdint>
#include <random>

namespace bwshare {

// Stream ids used to split a master seed into independent sub-streams.
// Every stochastic component draws from its own engine seeded by
// derive_seed(master, stream, a, b, c), so adding a client or switching
// policy never perturbs the draws of any other component.
enum class Stream : std::uint64_t {
  arrivals = 1,
  delivery = 2,
  replication = 3,
  fuzz = 4,
};

namespace detail {
// splitmix64 finalizer (Steele, Lea, Flood 2014 mixing constants).
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// Documented split function: fold the stream id and up to three indices
// into the master seed, one mixing round per component.
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t a = 0, std::uint64_t b = 0,
                                    std::uint64_t c = 0) {
  std::uint64_t h = detail::mix64(master ^ static_cast<std::uint64_t>(stream));
  h = detail::mix64(h ^ a);
  h = detail::mix64(h ^ b);
  h = detail::mix64(h ^ c);
  return h;
}

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined behaviour of std::uniform_real_distribution so
// sequences are reproducible across standard libraries.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& eng, double p) {
  return uniform01(eng) < p;
}

}  // namespace bwshare

#endif  // BWSHARE_RNG_HPP_
