#include <doctest.h>

#include <algorithm>

#include "latticewave/errors.hpp"
#include "latticewave/polytope.hpp"

using namespace lw;

namespace {

Polytope triangle() {
  // x >= 0, y >= 0, x + y <= 1
  return Polytope(2, {{{Rat(-1), Rat(0)}, Rat(0)},
                      {{Rat(0), Rat(-1)}, Rat(0)},
                      {{Rat(1), Rat(1)}, Rat(1)}});
}

Polytope tetrahedron() {
  return Polytope(3, {{{Rat(-1), Rat(0), Rat(0)}, Rat(0)},
                      {{Rat(0), Rat(-1), Rat(0)}, Rat(0)},
                      {{Rat(0), Rat(0), Rat(-1)}, Rat(0)},
                      {{Rat(1), Rat(1), Rat(1)}, Rat(1)}});
}

}  // namespace

TEST_CASE("volumes of reference bodies are exact") {
  CHECK(Polytope::box(Vec{Rat(-1, 2)}, Vec{Rat(1, 2)}).volume() == 1);
  CHECK(Polytope::box(Vec{Rat(0), Rat(0)}, Vec{Rat(2), Rat(3, 2)}).volume() ==
        3);
  CHECK(triangle().volume() == Rat(1, 2));
  CHECK(tetrahedron().volume() == Rat(1, 6));
  CHECK(Polytope::box(Vec{Rat(0), Rat(0), Rat(0)},
                      Vec{Rat(1, 3), Rat(1, 3), Rat(1, 3)})
            .volume() == Rat(1, 27));
}

TEST_CASE("membership classifies interior, boundary and exterior") {
  Polytope t = triangle();
  CHECK(t.member({Rat(1, 4), Rat(1, 4)}) == Region::Inside);
  CHECK(t.member({Rat(0), Rat(1, 2)}) == Region::Boundary);
  CHECK(t.member({Rat(1), Rat(1)}) == Region::Outside);
  CHECK(t.has_interior());

  // Degenerate: a segment in the plane has no interior.
  Polytope seg(2, {{{Rat(1), Rat(0)}, Rat(1)},
                   {{Rat(-1), Rat(0)}, Rat(-1)},
                   {{Rat(0), Rat(1)}, Rat(1)},
                   {{Rat(0), Rat(-1)}, Rat(0)}});
  CHECK_FALSE(seg.has_interior());
  CHECK(seg.volume() == 0);
}

TEST_CASE("vertices of the triangle") {
  auto vs = triangle().vertices();
  REQUIRE(vs.size() == 3);
  auto has = [&](Rat x, Rat y) {
    return std::any_of(vs.begin(), vs.end(),
                       [&](const Vec& v) { return v[0] == x && v[1] == y; });
  };
  CHECK(has(0, 0));
  CHECK(has(1, 0));
  CHECK(has(0, 1));
}

TEST_CASE("bbox, chebyshev, min and max l-inf norms") {
  Polytope box = Polytope::box(Vec{Rat(1, 4), Rat(-1)}, Vec{Rat(3, 4), Rat(1)});
  auto [lo, hi] = box.bbox();
  CHECK(lo == Vec{Rat(1, 4), Rat(-1)});
  CHECK(hi == Vec{Rat(3, 4), Rat(1)});
  auto [c, rho] = box.chebyshev();
  CHECK(rho == Rat(1, 4));
  CHECK(c[0] == Rat(1, 2));
  CHECK(box.min_linf() == Rat(1, 4));  // nearest point to 0 is (1/4, 0)
  CHECK(box.max_linf() == 1);
}

TEST_CASE("linear images and translation scale volume correctly") {
  Polytope sq = Polytope::box(Vec{Rat(-1, 2), Rat(-1, 2)},
                              Vec{Rat(1, 2), Rat(1, 2)});
  Mat b = Mat::from_int({{1, 1}, {1, -1}});
  // Image under B^(-1): pass B as the inverse map. |det B^(-1)| = 1/2.
  Polytope diamond = sq.linear_image_by_inverse(b);
  CHECK(diamond.volume() == Rat(1, 2));
  CHECK(diamond.member({Rat(0), Rat(0)}) == Region::Inside);
  CHECK(diamond.member({Rat(1, 2), Rat(0)}) == Region::Boundary);

  Polytope moved = sq.translated(Vec{Rat(5), Rat(-3)});
  CHECK(moved.volume() == 1);
  CHECK(moved.member({Rat(5), Rat(-3)}) == Region::Inside);
}

TEST_CASE("vertex enumeration is capped above n = 3") {
  Polytope p4 = Polytope::box(Vec(4, Rat(0)), Vec(4, Rat(1)));
  CHECK_THROWS_AS(p4.vertices(), DimensionCap);
}
