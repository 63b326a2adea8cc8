#ifndef SEBOOST_CORE_HPP
#define SEBOOST_CORE_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace seboost {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

namespace rng {

// Uniform double in [0, 1) from the top 53 bits of the generator output.
// Avoids std::uniform_real_distribution, whose draw sequence is
// implementation-defined; this mapping is pinned so seeded runs are
// reproducible across toolchains.
inline double canonical(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [-1, 1).
inline double symmetric(std::mt19937_64& gen) {
  return 2.0 * canonical(gen) - 1.0;
}

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(gen()) * n) >> 64);
}

/// In-place Fisher-Yates shuffle driven by bounded().
template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[bounded(gen, i)]);
  }
}

/// k distinct indices drawn uniformly from [0, n), in draw order.
inline std::vector<Index> sample_indices(Index n, Index k,
                                         std::mt19937_64& gen) {
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  std::vector<Index> out(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Index>(bounded(gen, n - i));
    std::swap(pool[i], pool[j]);
    out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace rng

}  // namespace seboost

#endif  // SEBOOST_CORE_HPP
