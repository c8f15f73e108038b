#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddinet {

/// Error raised on bad user input (files, ids, config). CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Error raised on numeric failure (NaN/Inf, non-finite loss). CLI maps it to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Hashing. FNV-1a is used for content hashes in manifests and caches and as
// the mixing primitive of the circular fingerprint; it is fixed here so that
// outputs are identical across platforms and standard-library versions.
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t seed = kFnvOffset) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t seed = kFnvOffset) {
  return fnv1a(s.data(), s.size(), seed);
}

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  // Feed the 8 bytes of v through FNV-1a continuing from h.
  return fnv1a(&v, sizeof(v), h);
}

std::string to_hex(std::uint64_t h);

// ---------------------------------------------------------------------------
// Deterministic RNG. All stochastic choices in the project go through
// mt19937_64 seeded explicitly; helper derives independent streams by name.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::string_view stream = {}) {
  return Rng(stream.empty() ? seed : hash_mix(seed, fnv1a(stream)));
}

// String helpers shared by the TSV readers and the config parser.
std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

}  // namespace ddinet
