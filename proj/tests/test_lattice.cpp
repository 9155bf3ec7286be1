#include <doctest.h>

#include <random>
#include <set>

#include "latticewave/catalog.hpp"
#include "latticewave/errors.hpp"
#include "latticewave/lattice.hpp"

using namespace lw;

namespace {

// Brute-force coset oracle: mu ~ nu iff A^(-1)(mu - nu) is integral.
bool same_coset(const DilationMatrix& m, const IntVec& mu, const IntVec& nu) {
  Vec d(m.n);
  for (int i = 0; i < m.n; ++i) d[i] = Rat(mu[i] - nu[i]);
  return is_integral(m.A_rat.inverse() * d);
}

// Oracle for ord_b: divide by B while the result stays integral.
int ord_oracle(const DilationMatrix& m, IntVec k) {
  int r = 0;
  while (true) {
    Vec x = m.B_inv * to_rat_vec(k);
    if (!is_integral(x)) return r;
    k = to_int_vec(x);
    ++r;
  }
}

}  // namespace

TEST_CASE("expansiveness certificates for the catalog") {
  for (const auto& name : catalog_matrix_names()) {
    DilationMatrix m = validate_dilation(*catalog_matrix(name));
    CHECK(m.contraction_norm < 1);
    CHECK(m.residue_norm_bound >= 1);
  }
  CHECK(validate_dilation(*catalog_matrix("dyadic1d")).contraction_exponent ==
        1);
  // Quincunx: ||B^(-1)|| = 1 but B^(-2) = I/2.
  CHECK(validate_dilation(*catalog_matrix("quincunx")).contraction_exponent ==
        2);
}

TEST_CASE("non-expansive and singular matrices are rejected") {
  CHECK_THROWS_AS(validate_dilation({{1}}), SingularOrUnimodular);
  CHECK_THROWS_AS(validate_dilation({{0}}), SingularOrUnimodular);
  CHECK_THROWS_AS(validate_dilation({{1, 0}, {0, 1}}), SingularOrUnimodular);
  // det = 2 but the eigenvalue 1 direction never contracts.
  CHECK_THROWS_AS(validate_dilation({{1, 0}, {0, 2}}), NotExpansive);
}

TEST_CASE("digit sets: cardinality, zero first, distinct cosets") {
  for (const auto& name : catalog_matrix_names()) {
    DilationMatrix m = validate_dilation(*catalog_matrix(name));
    DigitSet d = digit_set(m);
    CHECK(static_cast<std::int64_t>(d.digits.size()) == m.a);
    CHECK(d.digits[0] == IntVec(m.n, 0));
    for (std::size_t i = 0; i < d.digits.size(); ++i)
      for (std::size_t j = i + 1; j < d.digits.size(); ++j)
        CHECK_FALSE(same_coset(m, d.digits[i], d.digits[j]));
  }
  DilationMatrix q = validate_dilation(*catalog_matrix("quincunx"));
  CHECK(digit_set(q).digits == std::vector<IntVec>{{0, 0}, {1, 0}});
}

TEST_CASE("ord_b matches the division oracle and shifts under B") {
  std::mt19937_64 rng(42);
  for (const auto& name : catalog_matrix_names()) {
    DilationMatrix m = validate_dilation(*catalog_matrix(name));
    for (int t = 0; t < 200; ++t) {
      IntVec k(m.n);
      bool zero = true;
      for (auto& ki : k) {
        ki = static_cast<std::int64_t>(rng() % 64) - 32;
        zero = zero && ki == 0;
      }
      if (zero) k[0] = 1;
      CHECK(ord_b(m, k) == ord_oracle(m, k));
      // ord(Bk) = ord(k) + 1
      Vec bk = m.B_rat * to_rat_vec(k);
      CHECK(ord_b(m, to_int_vec(bk)) == ord_b(m, k) + 1);
    }
  }
  DilationMatrix d = validate_dilation(*catalog_matrix("dyadic1d"));
  CHECK_THROWS_AS(ord_b(d, IntVec{0}), ZeroVector);
}

TEST_CASE("character sums: a at zero, exact zero at nonzero digits") {
  for (const auto& name : catalog_matrix_names()) {
    DilationMatrix m = validate_dilation(*catalog_matrix(name));
    DigitSet d = digit_set(m);
    CharacterSum at0 = character_sum(m, d, IntVec(m.n, 0));
    CHECK_FALSE(at0.is_zero);
    REQUIRE(at0.value.has_value());
    CHECK(*at0.value == m.a);
    // nu ranges over the nonzero digits of the transpose system
    DigitSet dt = digit_set(transpose_dilation(m));
    for (std::size_t i = 1; i < dt.digits.size(); ++i)
      CHECK(character_sum(m, d, dt.digits[i]).is_zero);
  }
}

TEST_CASE("choose_kr has the requested order") {
  for (const auto& name : catalog_matrix_names()) {
    DilationMatrix m = validate_dilation(*catalog_matrix(name));
    for (int r = 0; r <= 4; ++r) CHECK(ord_b(m, choose_kr(m, r)) == r);
  }
}
