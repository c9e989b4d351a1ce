#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace samo {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t value) noexcept;

/// Deterministically derives an independent child seed from a parent seed and
/// a stream index.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept;

/// Same as above with a textual purpose label, so that e.g. "sampling" and
/// "training" streams of one round never collide.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view purpose,
                          std::uint64_t stream = 0) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits of the generator.
/// Unlike std::uniform_real_distribution the output is specified exactly.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform integer in [0, n) by rejection (unbiased).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

/// Standard normal draw (Box-Muller on uniform01).
double standard_normal(Rng& rng);

}  // namespace samo
