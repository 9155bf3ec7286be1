#pragma once

#include <string>

#include "latticewave/wavelet.hpp"

namespace lw {

// Deterministic static SVG of a planar set (n = 2): pieces as filled
// polygons, one color per distinct value with a legend. Throws
// DimensionMismatch off the plane.
std::string render_svg(const FrequencySet& s);
std::string render_svg(const PiecewiseWavelet& w);

}  // namespace lw
