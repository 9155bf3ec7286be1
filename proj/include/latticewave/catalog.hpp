#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latticewave/freqset.hpp"

namespace lw {

// Built-in dilation matrices by name: dyadic1d, triadic1d, quincunx,
// dyadic2d.
std::optional<IntMat> catalog_matrix(const std::string& name);

// Built-in wavelet-set fixtures: shannon-set (dyadic1d), journe-set
// (dyadic1d).
std::optional<FrequencySet> catalog_set(const std::string& name);

std::vector<std::string> catalog_matrix_names();
std::vector<std::string> catalog_set_names();

}  // namespace lw
