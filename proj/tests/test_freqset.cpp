#include <doctest.h>

#include "latticewave/catalog.hpp"
#include "latticewave/errors.hpp"
#include "latticewave/freqset.hpp"

using namespace lw;

namespace {

FrequencySet interval_set(Rat lo, Rat hi) {
  return {1, {Polytope::box(Vec{lo}, Vec{hi})}};
}

DilationMatrix dyadic() { return validate_dilation(*catalog_matrix("dyadic1d")); }
DilationMatrix quincunx() {
  return validate_dilation(*catalog_matrix("quincunx"));
}

}  // namespace

TEST_CASE("dilate scales volume by a^j exactly") {
  FrequencySet s = *catalog_set("shannon-set");
  DilationMatrix m = dyadic();
  CHECK(volume(s) == 1);
  for (int j = -3; j <= 3; ++j) {
    Rat expect = Rat(1);
    for (int t = 0; t < (j < 0 ? -j : j); ++t)
      expect = j > 0 ? Rat(expect * 2) : Rat(expect / 2);
    CHECK(volume(dilate(s, m, j)) == expect);
  }

  DilationMatrix q = quincunx();
  FrequencySet sq = FrequencySet::torus_box(2);
  CHECK(volume(dilate(sq, q, 1)) == 2);
  CHECK(volume(dilate(sq, q, -2)) == Rat(1, 4));
}

TEST_CASE("set algebra: intersection, difference, disjoint union") {
  FrequencySet a = interval_set(Rat(0), Rat(1));
  FrequencySet b = interval_set(Rat(1, 2), Rat(3, 2));
  CHECK(volume(intersection(a, b)) == Rat(1, 2));
  CHECK(volume(difference(a, b)) == Rat(1, 2));
  CHECK(volume(disjoint_union(a, b)) == Rat(3, 2));
  // difference + intersection reconstructs the volume exactly
  CHECK(volume(difference(a, b)) + volume(intersection(a, b)) == volume(a));

  CHECK(intersects(a, b) == Overlap::PositiveMeasureOverlap);
  // boundary touch only
  CHECK(intersects(a, interval_set(Rat(1), Rat(2))) == Overlap::Disjoint);
  CHECK(intersects(a, interval_set(Rat(2), Rat(3))) == Overlap::Disjoint);
}

TEST_CASE("tau projection lands in the torus and preserves volume") {
  // A box straddling several cells: [5/4, 9/4]
  FrequencySet s = interval_set(Rat(5, 4), Rat(9, 4));
  FrequencySet t = tau_projection(s);
  CHECK(volume(t) == 1);  // folds onto the full torus
  for (const auto& p : t.pieces) {
    auto [lo, hi] = p.bbox();
    CHECK(lo[0] >= Rat(-1, 2));
    CHECK(hi[0] <= Rat(1, 2));
  }
  // An in-cell box projects to a translate of itself.
  FrequencySet u = interval_set(Rat(13, 8), Rat(15, 8));
  CHECK(volume(tau_projection(u)) == Rat(1, 4));
  CHECK(member(tau_projection(u), Vec{Rat(-1, 4)}) == Region::Inside);
}

TEST_CASE("bounding annulus of the fixtures") {
  BoundingAnnulus ann = bounding_annulus(*catalog_set("shannon-set"));
  CHECK(ann.rho_min == Rat(1, 2));
  CHECK(ann.rho_max == 1);
  BoundingAnnulus aj = bounding_annulus(*catalog_set("journe-set"));
  CHECK(aj.rho_min == Rat(2, 7));
  CHECK(aj.rho_max == Rat(16, 7));
}

TEST_CASE("dilation overlap window covers the true overlap exponents") {
  DilationMatrix m = dyadic();
  BoundingAnnulus src{Rat(1, 2), Rat(1)}, dst{Rat(1, 4), Rat(1, 2)};
  JWindow w = dilation_overlap_window(m, src, dst);
  // 2^j [1/2,1] meets [1/4,1/2] for j in {-2,-1,0}
  CHECK(w.lo <= -2);
  CHECK(w.hi >= 0);
  FrequencySet s = interval_set(Rat(1, 2), Rat(1));
  FrequencySet d = interval_set(Rat(1, 4), Rat(1, 2));
  for (int j = w.lo - 2; j <= w.hi + 2; ++j) {
    bool inside = j >= w.lo && j <= w.hi;
    if (!inside)
      CHECK(intersects(dilate(s, m, j), d) == Overlap::Disjoint);
  }
}

TEST_CASE("d projection into the dyadic tile is volume-faithful on tiles") {
  DilationMatrix m = dyadic();
  // D for B = 2: +-[1/4, 1/2]
  FrequencySet d{1, {Polytope::box(Vec{Rat(-1, 2)}, Vec{Rat(-1, 4)}),
                     Polytope::box(Vec{Rat(1, 4)}, Vec{Rat(1, 2)})}};
  FrequencySet s = *catalog_set("shannon-set");
  CHECK(volume(d_projection(s, d, m)) == volume(d));
  // A set hitting only positive frequencies covers half of D.
  CHECK(volume(d_projection(interval_set(Rat(1, 2), Rat(1)), d, m)) ==
        Rat(1, 4));
}

TEST_CASE("pruned drops zero-volume pieces") {
  FrequencySet s = interval_set(Rat(0), Rat(1));
  s.pieces.push_back(Polytope::box(Vec{Rat(2)}, Vec{Rat(2)}));
  CHECK(pruned(s).pieces.size() == 1);
}
