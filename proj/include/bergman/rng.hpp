#pragma once

#include <cstdint>
#include <random>

namespace bergman {

/// Seeded generator used by every randomised fixture and experiment.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits, identical on every
/// standard library (std::uniform_real_distribution is not).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace bergman
