#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace sentpair {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view s);

// Per-document seed, so a document's samples do not depend on which worker
// handles it or in what order.
std::uint64_t derive_doc_seed(std::uint64_t global_seed, std::string_view doc_id);

// mt19937_64 with distribution code written out here: the standard library
// distributions are implementation-defined, and the output has to be
// identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform on [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sentpair
