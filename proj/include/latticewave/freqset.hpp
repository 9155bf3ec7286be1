#pragma once

#include "latticewave/lattice.hpp"
#include "latticewave/polytope.hpp"

namespace lw {

// A finite union of pairwise essentially disjoint rational polytopes.
// Coordinates are in 2*pi units: a stored x represents the frequency
// xi = 2*pi*x, so lattice translations are integer shifts and the torus
// T^n = [-pi, pi]^n is the box [-1/2, 1/2]^n.
struct FrequencySet {
  int n = 0;
  std::vector<Polytope> pieces;

  static FrequencySet empty(int n) { return {n, {}}; }
  static FrequencySet torus_box(int n);
  bool is_empty() const { return pieces.empty(); }
};

struct BoundingAnnulus {
  Rat rho_min;  // l-inf distance from the origin to the set
  Rat rho_max;  // l-inf radius of the bounding box
};

enum class Overlap { Disjoint, PositiveMeasureOverlap };

Region member(const FrequencySet& s, const Vec& x);
Rat volume(const FrequencySet& s);

// Image under B^j (exact rational inverse powers for j < 0).
FrequencySet dilate(const FrequencySet& s, const DilationMatrix& m, int j);
FrequencySet translate(const FrequencySet& s, const IntVec& k);
FrequencySet translate(const FrequencySet& s, const Vec& t);

// Positive-measure overlap decided by exact LP; boundary touching is
// Disjoint (all the statements being checked are a.e.).
Overlap intersects(const FrequencySet& s1, const FrequencySet& s2);

FrequencySet intersection(const FrequencySet& s1, const FrequencySet& s2);
FrequencySet difference(const FrequencySet& s1, const FrequencySet& s2);

// s1 together with the part of s2 not already covered (keeps pieces
// essentially disjoint).
FrequencySet disjoint_union(const FrequencySet& s1, const FrequencySet& s2);

// Drops pieces with empty interior and redundant halfspaces.
FrequencySet pruned(const FrequencySet& s);

// Translation projection into the torus box.
FrequencySet tau_projection(const FrequencySet& s);

BoundingAnnulus bounding_annulus(const FrequencySet& s);

// Finite j-window such that B^j x can meet the target annulus only for
// j in [lo, hi], given x in the source annulus. Sound by the contraction
// certificate; requires src.rho_min > 0 and dst.rho_min > 0.
struct JWindow {
  int lo = 0, hi = 0;
};
JWindow dilation_overlap_window(const DilationMatrix& m,
                                const BoundingAnnulus& src,
                                const BoundingAnnulus& dst);

// Dilation projection of s into the tile d (full infinite union equals
// this finite one; throws OriginInClosure when an annulus degenerates).
FrequencySet d_projection(const FrequencySet& s, const FrequencySet& d,
                          const DilationMatrix& m);

// Integer k range such that (bbox(piece) + k) can meet the target box.
std::vector<IntVec> integer_shifts_meeting(const Polytope& piece,
                                           const Vec& target_lo,
                                           const Vec& target_hi);

}  // namespace lw
