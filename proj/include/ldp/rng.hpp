#ifndef LDP_RNG_HPP
#define LDP_RNG_HPP

#include <cstdint>

namespace ldp {

// Deterministic 64-bit mixing generator (SplitMix64). All sampling in the
// library goes through this generator so that identical seeds give identical
// draws on every platform. Conformance vectors live in the test suite; the
// algorithm is documented in the README.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Unbiased enough for test-instance generation;
  // n is tiny relative to 2^64 everywhere this is used.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Stateless mix of two words, used to derive per-(seed, index) streams.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
  g.next_u64();
  return g.next_u64() ^ b;
}

}  // namespace ldp

#endif  // LDP_RNG_HPP
