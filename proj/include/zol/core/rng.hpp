#pragma once

// Counter-based and sequential pseudorandom helpers. Everything here is
// specified bit-for-bit (splitmix64 finalizer) so that reports reproduce
// across platforms and standard libraries.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace zol {

using Seed = std::uint64_t;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t tag(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Keyed hash over a sequence of words; the building block of every
/// order-independent draw.
class Hasher {
 public:
  explicit constexpr Hasher(Seed seed) noexcept : h_(mix64(seed)) {}
  constexpr Hasher& add(std::uint64_t v) noexcept {
    h_ = mix64(h_ ^ v);
    return *this;
  }
  Hasher& add(std::span<const int> vs) noexcept {
    add(static_cast<std::uint64_t>(vs.size()));
    for (int v : vs) add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    return *this;
  }
  constexpr std::uint64_t value() const noexcept { return h_; }
  /// Uniform in [0,1) with 53 bits of resolution.
  constexpr double uniform() const noexcept {
    return static_cast<double>(h_ >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t h_;
};

inline Seed derive_seed(Seed master, std::initializer_list<std::uint64_t> path) noexcept {
  Hasher h(master);
  for (auto p : path) h.add(p);
  return h.value();
}

/// Sequential generator (splitmix64 stream) with portable bounded draws.
class Rng {
 public:
  explicit Rng(Seed seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  template <class It>
  void shuffle(It first, It last) noexcept {
    auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      auto j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace zol
