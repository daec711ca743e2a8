#pragma once

#include <optional>
#include <vector>

#include "bolcat/rational.hpp"

namespace bolcat {

using RatVec = std::vector<Rat>;

// Dense exact-rational matrix, row major. Dimensions here stay tiny
// (<= 9 for algebra coefficients, <= 18 for stacked systems).
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0)) {}
  static RatMat identity(int n);
  static RatMat from_rows(const std::vector<RatVec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  RatVec row(int i) const;
  void append_row(const RatVec& r);

  friend RatMat operator*(const RatMat& a, const RatMat& b);
  friend RatMat operator+(const RatMat& a, const RatMat& b);
  friend RatMat operator-(const RatMat& a, const RatMat& b);
  friend bool operator==(const RatMat& a, const RatMat& b) = default;

  bool is_zero() const;

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

RatVec mat_vec(const RatMat& m, const RatVec& v);

// Reduced row echelon form with zero rows dropped; the result is the unique
// canonical basis of the row space (fixed column order), so two subspaces are
// equal iff their rref matrices are identical.
RatMat rref(const RatMat& m);
int rank(const RatMat& m);

// Basis of {x : m x = 0}, rows of the returned matrix (itself in rref).
RatMat nullspace(const RatMat& m);

// Exact solve of A x = b; nullopt if inconsistent. A need not be square.
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

Rat det(const RatMat& m);
std::optional<RatMat> inverse(const RatMat& m);

// Complex-rational matrix; used for the exact layer of the matrix reps.
class CRatMat {
 public:
  CRatMat() : rows_(0), cols_(0) {}
  CRatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static CRatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CRat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const CRat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  friend CRatMat operator*(const CRatMat& a, const CRatMat& b);
  friend CRatMat operator+(const CRatMat& a, const CRatMat& b);
  friend CRatMat operator-(const CRatMat& a, const CRatMat& b);
  friend bool operator==(const CRatMat& a, const CRatMat& b) = default;

  CRatMat scaled(const CRat& s) const;
  bool is_zero() const;
  CRat det() const;  // Gaussian elimination, exact

 private:
  int rows_, cols_;
  std::vector<CRat> a_;
};

}  // namespace bolcat
