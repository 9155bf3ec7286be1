#pragma once

#include <cstdint>
#include <random>

#include "latticewave/freqset.hpp"

namespace lw {

// Deterministic source of rational sample points. Coordinates have
// denominator 2^31 (dithered on retry) so that a.e. statements are
// tested off the boundary null set.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  // Uniform rational in [0, 1).
  Rat unit(int dither = 0);

  // Uniform rational point in the box [lo, hi).
  Vec box_point(const Vec& lo, const Vec& hi, int dither = 0);

  // Rational point in s, piece chosen by exact volume weights, position by
  // rejection in the piece bbox. Throws SearchExhausted on a degenerate set.
  Vec set_point(const FrequencySet& s);

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lw
