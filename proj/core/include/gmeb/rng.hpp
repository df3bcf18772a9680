#ifndef GMEB_RNG_HPP
#define GMEB_RNG_HPP

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace gmeb {

// splitmix64 step; used to derive independent per-item seeds so that data
// generation is deterministic under any evaluation order or thread count.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// One deterministic random stream. Streams derived from the same (seed,
// stream) pair always produce the same draws.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}
  RngStream(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }  // [0,1)

  // Integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gaussian();
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace gmeb

#endif  // GMEB_RNG_HPP
