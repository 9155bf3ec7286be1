#include "latticewave/catalog.hpp"

namespace lw {

namespace {

// One-dimensional interval [lo, hi] as a polytope piece.
Polytope interval(const Rat& lo, const Rat& hi) {
  return Polytope::box(Vec{lo}, Vec{hi});
}

// Coordinates are 2*pi units: the Shannon set [-2pi,-pi] u [pi,2pi] is
// +-[1/2, 1].
FrequencySet shannon() {
  return {1, {interval(Rat(-1), Rat(-1, 2)), interval(Rat(1, 2), Rat(1))}};
}

FrequencySet journe() {
  return {1,
          {interval(Rat(-16, 7), Rat(-2)), interval(Rat(-1, 2), Rat(-2, 7)),
           interval(Rat(2, 7), Rat(1, 2)), interval(Rat(2), Rat(16, 7))}};
}

}  // namespace

std::optional<IntMat> catalog_matrix(const std::string& name) {
  if (name == "dyadic1d") return IntMat{{2}};
  if (name == "triadic1d") return IntMat{{3}};
  if (name == "quincunx") return IntMat{{1, 1}, {1, -1}};
  if (name == "dyadic2d") return IntMat{{2, 0}, {0, 2}};
  return std::nullopt;
}

std::optional<FrequencySet> catalog_set(const std::string& name) {
  if (name == "shannon-set") return shannon();
  if (name == "journe-set") return journe();
  return std::nullopt;
}

std::vector<std::string> catalog_matrix_names() {
  return {"dyadic1d", "triadic1d", "quincunx", "dyadic2d"};
}

std::vector<std::string> catalog_set_names() {
  return {"shannon-set", "journe-set"};
}

}  // namespace lw
