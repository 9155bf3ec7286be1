#pragma once

#include <optional>

#include "latticewave/tiling.hpp"

namespace lw {

// The real number m * 2^(e/2), m rational, e in {0, 1}. Exactly spans
// the constants {0, +-1/sqrt(2), 1} and is closed under the products the
// orthogonality sums need.
struct ExactValue {
  Rat m;
  int e = 0;

  ExactValue times(const ExactValue& o) const {
    int esum = e + o.e;
    return {m * o.m * (esum == 2 ? 2 : 1), esum % 2};
  }
  Rat square() const { return m * m * (e ? 2 : 1); }
  bool is_zero() const { return m == 0; }
  bool operator==(const ExactValue& o) const = default;
};

struct PiecewiseWavelet {
  FrequencySet support;            // pieces pairwise essentially disjoint
  std::vector<ExactValue> values;  // one nonzero value per piece
  DilationMatrix matrix;
};

// psi-hat value at x; nullopt when x touches a piece boundary.
std::optional<ExactValue> value_at(const PiecewiseWavelet& w, const Vec& x);

PiecewiseWavelet indicator_wavelet(const FrequencySet& k,
                                   const DilationMatrix& m);

struct CheckReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Witness> witnesses;
  Rat computed;  // check_norm: the exact squared norm
  long samples_used = 0;
  std::string note;
};

// Plancherel: sum over pieces of volume * value^2 == 1 (exact, n <= 3).
CheckReport check_norm(const PiecewiseWavelet& w);

// sum_j |psi-hat(B^j xi)|^2 == 1 per sampled xi in the reference shell.
CheckReport check_dilation_sum(const PiecewiseWavelet& w, long samples,
                               std::uint64_t seed, Exec exec = Exec::Parallel);

// sum_{j>=0} psi-hat(B^j xi) psi-hat(B^j (xi + q)) == 0 for every q
// outside B Z^n, per sampled xi; the rational and sqrt(2)-rational parts of
// the sum accumulate separately and must both vanish.
CheckReport check_tq_orthogonality(const PiecewiseWavelet& w, long samples,
                                   std::uint64_t seed,
                                   Exec exec = Exec::Parallel);

// sum_k |psi-hat(x + k)|^2 == 1 per sampled x in the torus box.
CheckReport check_periodization(const PiecewiseWavelet& w, long samples,
                                std::uint64_t seed,
                                Exec exec = Exec::Parallel);

struct WaveletReport {
  CheckReport norm, dilation_sum, tq_orthogonality, periodization;
  bool ok() const {
    return norm.verdict == Verdict::Pass &&
           dilation_sum.verdict == Verdict::Pass &&
           tq_orthogonality.verdict == Verdict::Pass &&
           periodization.verdict == Verdict::Pass;
  }
};

WaveletReport verify_all(const PiecewiseWavelet& w, long samples,
                         std::uint64_t seed, Exec exec = Exec::Parallel);

}  // namespace lw
