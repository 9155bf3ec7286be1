#pragma once

#include "latticewave/wavelet.hpp"

namespace lw {

struct Conflict {
  IntVec k;
  int ord = 0;  // ord_b(k)
};

// All k != 0 with E intersect (E + k) of positive measure, enumerated over
// the exact bounding-box difference window (outside it E(k) is empty).
// Fully exact; no sampling.
std::vector<Conflict> support_conflicts(const FrequencySet& e,
                                        const DilationMatrix& m);

struct OverlapProfile {
  FrequencySet support;
  std::vector<Conflict> conflicts;
  std::int64_t k_window_radius = 0;
};

OverlapProfile overlap_profile(const PiecewiseWavelet& w);

struct ClassLabel {
  bool finite = false;
  int r = 0;
  std::string str() const { return finite ? "M_" + std::to_string(r) : "M_inf"; }
  bool operator==(const ClassLabel& o) const = default;
};

// Theorem-2.6 classification: M_inf when no conflicts (MSF), otherwise
// M_r with r the minimum conflict order. `verified` is the caller's
// verify_all outcome; classification of non-wavelets is refused.
ClassLabel classify(const PiecewiseWavelet& w, const WaveletReport& verified);
ClassLabel classify(const PiecewiseWavelet& w, long samples,
                    std::uint64_t seed, Exec exec = Exec::Parallel);

// psi in L_r iff every conflict has ord >= r.
bool is_in_Lr(const PiecewiseWavelet& w, int r, const WaveletReport& verified);

}  // namespace lw
