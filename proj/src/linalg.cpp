#include "latticewave/linalg.hpp"

#include "latticewave/errors.hpp"

namespace lw {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_int(const IntMat& src) {
  int r = static_cast<int>(src.size());
  int c = r > 0 ? static_cast<int>(src[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(src[i].size()) != c)
      throw DimensionMismatch("ragged integer matrix");
    for (int j = 0; j < c; ++j) m.at(i, j) = src[i][j];
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape");
  Mat out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

Vec Mat::operator*(const Vec& v) const {
  if (cols_ != static_cast<int>(v.size()))
    throw DimensionMismatch("matrix-vector shape");
  Vec out(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix difference shape");
  Mat out(rows_, cols_);
  for (int i = 0; i < rows_ * cols_; ++i) out.a_[i] = a_[i] - o.a_[i];
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Rat Mat::det() const {
  if (rows_ != cols_) throw DimensionMismatch("determinant of non-square");
  Mat m = *this;
  int n = rows_;
  Rat d = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    Rat inv = Rat(1) / m.at(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (m.at(i, col) == 0) continue;
      Rat f = m.at(i, col) * inv;
      for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw DimensionMismatch("inverse of non-square");
  int n = rows_;
  Mat m = *this;
  Mat inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw SingularMatrix("singular matrix in inverse");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Rat f = Rat(1) / m.at(col, col);
    for (int j = 0; j < n; ++j) {
      m.at(col, j) *= f;
      inv.at(col, j) *= f;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || m.at(i, col) == 0) continue;
      Rat g = m.at(i, col);
      for (int j = 0; j < n; ++j) {
        m.at(i, j) -= g * m.at(col, j);
        inv.at(i, j) -= g * inv.at(col, j);
      }
    }
  }
  return inv;
}

Mat Mat::pow(int e) const {
  if (rows_ != cols_) throw DimensionMismatch("power of non-square");
  Mat base = e >= 0 ? *this : inverse();
  int k = e >= 0 ? e : -e;
  Mat out = identity(rows_);
  while (k > 0) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

Rat Mat::max_row_l1() const {
  Rat best = 0;
  for (int i = 0; i < rows_; ++i) {
    Rat s = 0;
    for (int j = 0; j < cols_; ++j) s += abs(at(i, j));
    if (s > best) best = s;
  }
  return best;
}

}  // namespace lw
