#ifndef DI_RNG_HPP
#define DI_RNG_HPP

/** @file
 * Deterministic random utilities.
 *
 * Every stochastic routine in the library takes an explicit 64-bit seed;
 * replica/stream seeds are derived with a SplitMix64 mix so that results
 * are independent of thread count and scheduling.
 */

#include <cstdint>
#include <random>
#include <vector>

namespace di {

/// SplitMix64 finalizer; used both as a seed deriver and a hash mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive the seed for an indexed replica/stream from a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 1));
}

/// Canonical uniform double in [0, 1) with 53 random bits.
inline double canonical(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Sample an index from a pmf by CDF inversion in index order.
int sample_index(const std::vector<double>& pmf, std::mt19937_64& g);

/// Dirichlet(alpha, ..., alpha) draw of the given size (normalized Gammas;
/// for alpha = 1 this is the uniform simplex distribution).
std::vector<double> dirichlet(int size, double alpha, std::mt19937_64& g);

}  // namespace di

#endif  // DI_RNG_HPP
