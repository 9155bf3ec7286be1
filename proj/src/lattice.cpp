#include "latticewave/lattice.hpp"

#include <algorithm>

#include "latticewave/errors.hpp"

namespace lw {

DilationMatrix validate_dilation(const IntMat& A, int max_exponent) {
  int n = static_cast<int>(A.size());
  if (n == 0) throw DimensionMismatch("empty matrix");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != n)
      throw DimensionMismatch("matrix is not square");

  DilationMatrix M;
  M.n = n;
  M.A = A;
  M.B.assign(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M.B[i][j] = A[j][i];

  M.A_rat = Mat::from_int(M.A);
  M.B_rat = Mat::from_int(M.B);

  Rat adet = abs(M.A_rat.det());
  if (adet <= 1)
    throw SingularOrUnimodular("|det A| = " + format_rational(adet) +
                               ", need >= 2");
  M.a = numerator(adet).convert_to<std::int64_t>();

  M.B_inv = M.B_rat.inverse();
  Mat p = Mat::identity(n);
  Rat norm_max = 1;  // ||B^0|| = 1
  for (int m = 1; m <= max_exponent; ++m) {
    p = p * M.B_inv;
    Rat norm = p.max_row_l1();
    if (norm < 1) {
      M.contraction_exponent = m;
      M.residue_norm_bound = norm_max;
      M.contraction_norm = norm;
      return M;
    }
    if (norm > norm_max) norm_max = norm;
  }
  throw NotExpansive("no contraction certificate with exponent <= " +
                     std::to_string(max_exponent) +
                     "; achieved norm = " + format_rational(p.max_row_l1()));
}

DilationMatrix transpose_dilation(const DilationMatrix& M) {
  return validate_dilation(M.B, std::max(64, 2 * M.contraction_exponent));
}

DigitSet digit_set(const DilationMatrix& M) {
  const int n = M.n;
  Mat A_inv = M.A_rat.inverse();
  DigitSet out;
  out.digits.push_back(IntVec(n, 0));

  auto same_coset = [&](const IntVec& z, const IntVec& d) {
    Vec diff(n);
    for (int i = 0; i < n; ++i) diff[i] = z[i] - d[i];
    return is_integral(A_inv * diff);
  };

  // Every coset of A Z^n has a representative in [0, a)^n because
  // a * e_i = A (±adj(A) e_i) lies in A Z^n.
  IntVec z(n, 0);
  const std::int64_t a = M.a;
  while (static_cast<std::int64_t>(out.digits.size()) < a) {
    bool fresh = true;
    for (const auto& d : out.digits)
      if (same_coset(z, d)) {
        fresh = false;
        break;
      }
    if (fresh) out.digits.push_back(z);
    // First coordinate advances fastest, so e.g. (1,0) precedes (0,1).
    int i = 0;
    while (i < n) {
      if (++z[i] < a) break;
      z[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  if (static_cast<std::int64_t>(out.digits.size()) != a)
    throw Error("digit enumeration incomplete");  // cannot happen
  return out;
}

int ord_b(const DilationMatrix& M, const IntVec& k) {
  bool zero = std::all_of(k.begin(), k.end(), [](auto x) { return x == 0; });
  if (zero) throw ZeroVector("ord_b(0) is unbounded");

  // Sound bound: once N * c^q * ||k|| < 1, B^(-qm) k cannot be a nonzero
  // integer vector, so the order is below q * m.
  Rat norm_k = 0;
  for (auto x : k) norm_k = std::max(norm_k, Rat(x < 0 ? -x : x));
  Rat bound = M.residue_norm_bound * norm_k;
  int qmax = 0;
  while (bound >= 1) {
    bound *= M.contraction_norm;
    ++qmax;
  }
  const int rmax = qmax * M.contraction_exponent + M.contraction_exponent;

  Vec x = to_rat_vec(k);
  int r = 0;
  while (r <= rmax) {
    Vec next = M.B_inv * x;
    if (!is_integral(next)) return r;
    x = next;
    ++r;
  }
  throw Error("ord_b exceeded its certified bound");  // cannot happen
}

namespace {

// Integer polynomial helpers for the cyclotomic reduction in character_sum.
using Poly = std::vector<long long>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of p by monic divisor d, returning the remainder.
Poly poly_rem(Poly p, const Poly& d) {
  poly_trim(p);
  while (p.size() >= d.size()) {
    long long c = p.back();
    std::size_t shift = p.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i)
      p[shift + i] -= c * d[i];
    poly_trim(p);
  }
  return p;
}

Poly poly_div_exact(Poly p, const Poly& d) {
  poly_trim(p);
  Poly q(p.size() >= d.size() ? p.size() - d.size() + 1 : 0, 0);
  while (p.size() >= d.size()) {
    long long c = p.back();
    std::size_t shift = p.size() - d.size();
    q[shift] = c;
    for (std::size_t i = 0; i < d.size(); ++i)
      p[shift + i] -= c * d[i];
    poly_trim(p);
  }
  if (!p.empty()) throw Error("inexact polynomial division");
  return q;
}

Poly cyclotomic(int q) {
  // x^q - 1 divided by all proper cyclotomic factors.
  Poly p(q + 1, 0);
  p[0] = -1;
  p[q] = 1;
  for (int d = 1; d < q; ++d)
    if (q % d == 0) p = poly_div_exact(p, cyclotomic(d));
  return p;
}

}  // namespace

CharacterSum character_sum(const DilationMatrix& M, const DigitSet& digits,
                           const IntVec& nu) {
  Mat M_inv = M.A_rat.inverse();
  Vec nu_r = to_rat_vec(nu);

  // Phases <M^{-1} mu, nu> mod 1 as fractions p/q with a common q.
  std::vector<Rat> phases;
  Int q = 1;
  for (const auto& mu : digits.digits) {
    Rat ph = dot(M_inv * to_rat_vec(mu), nu_r);
    ph -= Rat(rat_floor(ph));
    phases.push_back(ph);
    q = lcm(q, denominator(ph));
  }

  bool all_equal =
      std::all_of(phases.begin(), phases.end(),
                  [&](const Rat& p) { return p == phases.front(); });
  CharacterSum out;
  if (all_equal) {
    // Sum = a * e^{-2 pi i phase}; rational exactly when phase is 0 or 1/2.
    out.is_zero = false;
    if (phases.front() == 0)
      out.value = Rat(M.a);
    else if (phases.front() == Rat(1, 2))
      out.value = Rat(-M.a);
    return out;
  }

  long long qi = q.convert_to<long long>();
  Poly counts(qi, 0);
  for (const auto& ph : phases) {
    Int p = numerator(ph) * (q / denominator(ph));
    counts[p.convert_to<long long>() % qi] += 1;
  }
  Poly rem = poly_rem(counts, cyclotomic(static_cast<int>(qi)));
  out.is_zero = rem.empty();
  if (out.is_zero) out.value = Rat(0);
  return out;
}

IntVec choose_kr(const DilationMatrix& M, int r) {
  DilationMatrix Bt = transpose_dilation(M);
  DigitSet d = digit_set(Bt);
  IntVec delta;
  for (const auto& dig : d.digits) {
    if (std::any_of(dig.begin(), dig.end(), [](auto x) { return x != 0; })) {
      delta = dig;
      break;
    }
  }
  Mat Br = M.B_rat.pow(r);
  Vec k = Br * to_rat_vec(delta);
  return to_int_vec(k);
}

}  // namespace lw
