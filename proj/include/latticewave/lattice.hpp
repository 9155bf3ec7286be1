#pragma once

#include <optional>

#include "latticewave/linalg.hpp"

namespace lw {

// An expansive integer matrix together with its exact expansiveness
// certificate: the smallest m such that B^(-m) contracts in the max
// row l1-norm. B = A^t acts in the frequency domain.
struct DilationMatrix {
  int n = 0;
  IntMat A;
  IntMat B;
  std::int64_t a = 0;  // |det A|
  int contraction_exponent = 0;

  Mat A_rat;
  Mat B_rat;
  Mat B_inv;
  // N = max over 0 <= t < m of ||B^(-t)||, c = ||B^(-m)|| < 1. These bound
  // ||B^(-j)|| <= N * c^floor(j/m) for all j >= 0 and drive every finite
  // truncation window in the geometry modules.
  Rat residue_norm_bound;  // N
  Rat contraction_norm;    // c
};

struct DigitSet {
  std::vector<IntVec> digits;  // exactly |det|, first is 0
};

// Certifies expansiveness by exact rational powering of B^(-1).
// Throws SingularOrUnimodular if |det A| <= 1, NotExpansive if no
// certificate exponent <= max_exponent exists.
DilationMatrix validate_dilation(const IntMat& A, int max_exponent = 64);

// The same dilation with A and B swapped (used for digits of B).
DilationMatrix transpose_dilation(const DilationMatrix& M);

// Canonical digit set: scans the integer points of [0, a)^n in
// lexicographic order, keeping the first representative of each coset
// of A Z^n.
DigitSet digit_set(const DilationMatrix& M);

// max { r >= 0 : k in B^r Z^n }. Throws ZeroVector on k = 0.
int ord_b(const DilationMatrix& M, const IntVec& k);

// Sum over digits mu of e^{-2 pi i <M^{-1} mu, nu>}, decided exactly by
// reducing the sum of roots of unity modulo the cyclotomic polynomial.
struct CharacterSum {
  bool is_zero = false;
  std::optional<Rat> value;  // set when all phases coincide (nu = 0 case)
};
CharacterSum character_sum(const DilationMatrix& M, const DigitSet& digits,
                           const IntVec& nu);

// k_r = B^r * (first nonzero digit of the digit set for B); ord_b(k_r) = r.
IntVec choose_kr(const DilationMatrix& M, int r);

}  // namespace lw
