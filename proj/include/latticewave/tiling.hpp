#pragma once

#include "latticewave/freqset.hpp"

namespace lw {

enum class Verdict { Pass, Fail, Inconclusive };

// Parallel kernels evaluate the per-sample multiplicities with OpenMP;
// Serial is the reference implementation the tests compare against.
enum class Exec { Serial, Parallel };

struct Witness {
  Vec point;
  int multiplicity = 0;
  long sample_index = -1;
};

struct TilingReport {
  Verdict translation = Verdict::Inconclusive;
  Verdict dilation = Verdict::Inconclusive;
  bool volume_ok = false;
  std::vector<Witness> witnesses;
  long samples_used = 0;
  JWindow j_window;
  std::int64_t k_window_radius = 0;
  std::string note;

  bool ok() const {
    return translation == Verdict::Pass && dilation == Verdict::Pass;
  }
};

// Theorem-style check that {K + k} covers the torus with multiplicity one:
// exact volume identity vol(K) = 1 plus per-sample exact multiplicity.
TilingReport check_translation_tiling(const FrequencySet& k, long samples,
                                      std::uint64_t seed,
                                      Exec exec = Exec::Parallel);

// Checks that {B^j K} covers the reference shell with multiplicity one.
// Inconclusive when the origin is in the closure of K.
TilingReport check_dilation_tiling(const FrequencySet& k,
                                   const DilationMatrix& m, long samples,
                                   std::uint64_t seed,
                                   Exec exec = Exec::Parallel);

TilingReport verify_wavelet_set(const FrequencySet& k, const DilationMatrix& m,
                                long samples, std::uint64_t seed,
                                Exec exec = Exec::Parallel);

// D = C0 \ B^(-1) C0 with C0 the union of B^(-j)[-1/2,1/2]^n over
// j < contraction_exponent; {B^j D} tiles R^n up to null sets.
FrequencySet build_dilation_tile(const DilationMatrix& m);

}  // namespace lw
