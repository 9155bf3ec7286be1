#include "latticewave/lp.hpp"

#include "latticewave/errors.hpp"

namespace lw {

namespace {

// Dense tableau simplex. Columns: 2n split variables (x = u - v),
// m slacks, m artificials; Bland's rule throughout.
class Tableau {
 public:
  Tableau(const std::vector<Vec>& A, const Vec& b, int n)
      : m_(static_cast<int>(A.size())), n_(n) {
    ncols_ = 2 * n_ + 2 * m_;
    tab_.assign(m_, Vec(ncols_ + 1, Rat(0)));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      Rat sign = b[i] >= 0 ? 1 : -1;
      for (int j = 0; j < n_; ++j) {
        tab_[i][j] = sign * A[i][j];
        tab_[i][n_ + j] = -sign * A[i][j];
      }
      tab_[i][2 * n_ + i] = sign;          // slack
      tab_[i][2 * n_ + m_ + i] = 1;        // artificial
      tab_[i][ncols_] = sign * b[i];
      basis_[i] = 2 * n_ + m_ + i;
    }
  }

  // Maximizes obj (length ncols_). Returns false on unboundedness.
  bool run(const Vec& obj, int col_limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < col_limit; ++j) {
        if (reduced_cost(obj, j) > 0) {
          enter = j;
          break;  // Bland: smallest improving index
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rat ratio = tab_[i][ncols_] / tab_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  Rat objective_value(const Vec& obj) const {
    Rat v = 0;
    for (int i = 0; i < m_; ++i) v += obj[basis_[i]] * tab_[i][ncols_];
    return v;
  }

  // Pivot basic artificials out wherever a real column is available.
  void purge_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < 2 * n_ + m_) continue;
      for (int j = 0; j < 2 * n_ + m_; ++j) {
        if (tab_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Vec solution() const {
    Vec x(n_, Rat(0));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_)
        x[basis_[i]] += tab_[i][ncols_];
      else if (basis_[i] < 2 * n_)
        x[basis_[i] - n_] -= tab_[i][ncols_];
    }
    return x;
  }

  int real_cols() const { return 2 * n_ + m_; }
  int all_cols() const { return ncols_; }

 private:
  Rat reduced_cost(const Vec& obj, int j) const {
    Rat r = obj[j];
    for (int i = 0; i < m_; ++i) {
      if (obj[basis_[i]] != 0 && tab_[i][j] != 0)
        r -= obj[basis_[i]] * tab_[i][j];
    }
    return r;
  }

  void pivot(int row, int col) {
    Rat inv = Rat(1) / tab_[row][col];
    for (int j = 0; j <= ncols_; ++j) tab_[row][j] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      Rat f = tab_[i][col];
      for (int j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  int m_, n_, ncols_;
  std::vector<Vec> tab_;
  std::vector<int> basis_;
};

}  // namespace

LpResult lp_maximize(const std::vector<Vec>& A, const Vec& b, const Vec& c) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(A.size());
  LpResult out;
  if (m == 0) {
    // No constraints: optimum is 0 at the origin iff c == 0, else unbounded.
    out.status = vec_is_zero(c) ? LpStatus::Optimal : LpStatus::Unbounded;
    out.value = 0;
    out.x = Vec(n, Rat(0));
    return out;
  }

  Tableau t(A, b, n);

  Vec phase1(t.all_cols(), Rat(0));
  for (int j = t.real_cols(); j < t.all_cols(); ++j) phase1[j] = -1;
  t.run(phase1, t.all_cols());
  if (t.objective_value(phase1) != 0) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  t.purge_artificials();

  Vec phase2(t.all_cols(), Rat(0));
  for (int j = 0; j < n; ++j) {
    phase2[j] = c[j];
    phase2[n + j] = -c[j];
  }
  if (!t.run(phase2, t.real_cols())) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x = t.solution();
  out.value = dot(c, out.x);
  return out;
}

}  // namespace lw
