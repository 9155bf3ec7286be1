#include <doctest.h>

#include "latticewave/errors.hpp"
#include "latticewave/linalg.hpp"

using namespace lw;

TEST_CASE("determinant and inverse, hand-checked 2x2 and 3x3") {
  Mat q = Mat::from_int({{1, 1}, {1, -1}});
  CHECK(q.det() == -2);
  Mat qi = q.inverse();
  CHECK(qi * Vec{Rat(1), Rat(1)} == Vec{Rat(1), Rat(0)});
  CHECK((q * qi).det() == 1);

  Mat t = Mat::from_int({{2, 0, 1}, {0, 3, 0}, {1, 0, 1}});
  CHECK(t.det() == 3);  // 3 * (2*1 - 1*1)
  Mat ti = t.inverse();
  Mat id = t * ti;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(id.at(i, j) == (i == j ? 1 : 0));

  CHECK_THROWS_AS(Mat::from_int({{1, 2}, {2, 4}}).inverse(), SingularMatrix);
}

TEST_CASE("integer powers, including negative") {
  Mat b = Mat::from_int({{2}});
  CHECK(b.pow(5).at(0, 0) == 32);
  CHECK(b.pow(-3).at(0, 0) == Rat(1, 8));
  CHECK(b.pow(0).at(0, 0) == 1);

  Mat q = Mat::from_int({{1, 1}, {1, -1}});
  Mat q2 = q.pow(2);  // B^2 = 2I for the quincunx transpose
  CHECK(q2.at(0, 0) == 2);
  CHECK(q2.at(0, 1) == 0);
  CHECK(q2.at(1, 0) == 0);
  CHECK(q2.at(1, 1) == 2);
  Mat qm2 = q.pow(-2);
  CHECK(qm2.at(0, 0) == Rat(1, 2));
  CHECK(qm2.at(1, 0) == 0);
}

TEST_CASE("max row l1 norm is the l-inf operator norm") {
  Mat q = Mat::from_int({{1, 1}, {1, -1}});
  CHECK(q.max_row_l1() == 2);
  CHECK(q.inverse().max_row_l1() == 1);
  CHECK(q.pow(-2).max_row_l1() == Rat(1, 2));
}
