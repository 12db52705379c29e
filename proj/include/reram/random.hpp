#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace reram {

// Reproducibility contract: every random quantity in this library is a pure
// function of a 64-bit seed. Distribution sampling is hand-rolled on top of
// the raw mt19937_64 stream (std::uniform_*_distribution is not portable
// across standard library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1], safe as a log() argument.
  double uniform01_open0() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Unbiased integer on [0, bound) via bitmask rejection.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
    for (;;) {
      std::uint64_t v = eng_() & mask;
      if (v < bound) return v;
    }
  }

  // Standard normal, Box-Muller with one cached deviate.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01_open0();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Distinct values from [0, n), ascending. Floyd's sampling algorithm.
  std::vector<int> sample_subset(int n, int k) {
    std::vector<int> out;
    out.reserve(k);
    for (int j = n - k; j < n; ++j) {
      int t = static_cast<int>(uniform_below(static_cast<std::uint64_t>(j) + 1));
      if (std::find(out.begin(), out.end(), t) != out.end()) {
        out.push_back(j);
      } else {
        out.push_back(t);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Substream seed for one Monte Carlo trial. Depends only on the base seed,
// a caller-chosen stream id, and the trial index, never on thread layout,
// so results are identical for any --jobs value.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t trial) {
  std::uint64_t h = splitmix64(base ^ 0x8f1bbcdcbfa53e0bULL);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ trial);
  return h;
}

}  // namespace reram
