#pragma once

#include "latticewave/rational.hpp"

namespace lw {

// Small dense rational matrix; dimensions here never exceed 8.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static Mat identity(int n);
  static Mat from_int(const IntMat& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[i * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[i * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator-(const Mat& o) const;
  Mat transpose() const;
  Rat det() const;
  Mat inverse() const;  // throws SingularMatrix
  Mat pow(int e) const; // negative e inverts first

  // Max row l1-norm (the matrix norm induced by the l-inf vector norm).
  Rat max_row_l1() const;

  bool operator==(const Mat& o) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace lw
