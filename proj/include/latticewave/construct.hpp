#pragma once

#include <string>

#include "latticewave/wavelet.hpp"

namespace lw {

// Fixed points of the affine maps xi -> B^(-p) xi - alpha (a lattice) and
// xi -> B^(-j) xi - k (one point per j), in 2*pi units.
struct FixedPoints {
  Mat lattice_basis;             // (B^(-p) - I)^(-1); fixed points = basis * Z^n
  std::vector<Vec> g_points;     // (B^(-j) - I)^(-1) k, j in window, j != 0
  std::vector<Vec> limit_points; // {0, -k}
  std::string note;
};

FixedPoints fixed_point_set(const DilationMatrix& m, const IntVec& k, int p,
                            int j_lo, int j_hi);

struct SeedSpec {
  int r = 0;
  IntVec k_r;
  int p = 1;
  Vec y;
  Rat epsilon;
  FrequencySet I;  // the box N_epsilon(y)
};

// Draws y in the annulus 1/4 <= ||y||_inf <= 3/4 avoiding (by exact
// rational comparison) the fixed points, Z^n and B^p Z^n; epsilon starts
// at half the l-inf distance to the nearest excluded point and is halved
// until check_seed passes.
SeedSpec build_seed(const DilationMatrix& m, int r, int p,
                    std::uint64_t rng_seed);

struct SeedCheck {
  bool tau_disjoint = false;  // tau(I) and tau(B^(-p) I) essentially disjoint
  bool d_disjoint = false;    // d(I) and d(I + B^p k) essentially disjoint
  bool a = false;             // S meets no nonzero integer translate of itself
  bool b = false;             // S meets no nonzero dilate of itself
  bool c = false;             // a neighborhood of 0 misses tau(S)
  bool d = false;             // D minus d(S) keeps an interior point
  Rat eps_prime;              // witness half-width for (c)
  FrequencySet interior_box;  // witness box for (d)
  bool ok() const { return tau_disjoint && d_disjoint && a && b && c && d; }
};

SeedCheck check_seed(const DilationMatrix& m, const SeedSpec& seed);

struct ConstructionReport {
  SeedSpec seed;
  FrequencySet W;
  FrequencySet J;  // W minus the seed pair (filled by run_pipeline)
  Rat residual_translation;
  Rat residual_dilation;
  int iterations = 0;
  int piece_count = 0;
  bool exact = false;  // both residuals exactly zero
};

// Grows S to a set W whose integer translates tile the torus and whose
// dilates tile the dilation tile D, keeping S inside W and both tiling
// invariants at every step. Terminates when both residuals drop below
// tolerance; throws NoProgress / MaxIterations otherwise.
ConstructionReport complete_to_wavelet_set(const DilationMatrix& m,
                                           const FrequencySet& s,
                                           const Rat& tolerance,
                                           int max_iter = 500);

// The piecewise-constant wavelet: 1/sqrt(2) on I, B^(-1)I and B^(-1)I + k_r,
// -1/sqrt(2) on I + B k_r, 1 on J = W minus (I union (B^(-1)I + k_r)).
// Requires exact residuals unless allow_inexact.
PiecewiseWavelet assemble_psi_r(const DilationMatrix& m, int r,
                                const ConstructionReport& report,
                                bool allow_inexact = false);

struct PipelineResult {
  ConstructionReport report;
  PiecewiseWavelet psi;
};

// build_seed (p = 1) -> complete_to_wavelet_set -> assemble_psi_r.
PipelineResult run_pipeline(const DilationMatrix& m, int r,
                            std::uint64_t rng_seed, const Rat& tolerance,
                            int max_iter = 500);

}  // namespace lw
