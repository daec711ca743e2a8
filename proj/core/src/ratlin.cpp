#include "bolcat/ratlin.hpp"

#include <stdexcept>

namespace bolcat {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return {};
  RatMat m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatVec RatMat::row(int i) const {
  RatVec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

void RatMat::append_row(const RatVec& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = int(r.size());
  if (int(r.size()) != cols_) throw std::invalid_argument("row size mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul shape");
  RatMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatMat operator+(const RatMat& a, const RatMat& b) {
  RatMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

RatMat operator-(const RatMat& a, const RatMat& b) {
  RatMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

bool RatMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

RatVec mat_vec(const RatMat& m, const RatVec& v) {
  if (int(v.size()) != m.cols()) throw std::invalid_argument("matvec shape");
  RatVec r(m.rows(), Rat(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r[i] += m(i, j) * v[j];
  return r;
}

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<int> reduce(RatMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RatMat rref(const RatMat& m) {
  RatMat w = m;
  auto pivots = reduce(w);
  RatMat out(int(pivots.size()), m.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = w(i, j);
  return out;
}

int rank(const RatMat& m) {
  RatMat w = m;
  return int(reduce(w).size());
}

RatMat nullspace(const RatMat& m) {
  RatMat w = m;
  auto pivots = reduce(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    RatVec v(m.cols(), Rat(0));
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w(int(i), c);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return RatMat(0, m.cols());
  return rref(RatMat::from_rows(basis));
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  if (int(b.size()) != a.rows()) throw std::invalid_argument("solve shape");
  RatMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // 0 = 1 row
  RatVec x(a.cols(), Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(int(i), a.cols());
  return x;
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square");
  RatMat w = m;
  Rat d(1);
  int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (w(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      d = -d;
    }
    d *= w(c, c);
    Rat inv = 1 / w(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (w(i, c) == 0) continue;
      Rat f = w(i, c) * inv;
      for (int j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return d;
}

std::optional<RatMat> inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square");
  int n = m.rows();
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = reduce(aug);
  if (int(pivots.size()) != n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

CRatMat CRatMat::identity(int n) {
  CRatMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = CRat(Rat(1));
  return m;
}

CRatMat operator*(const CRatMat& a, const CRatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul shape");
  CRatMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
    }
  return c;
}

CRatMat operator+(const CRatMat& a, const CRatMat& b) {
  CRatMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

CRatMat operator-(const CRatMat& a, const CRatMat& b) {
  CRatMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

CRatMat CRatMat::scaled(const CRat& s) const {
  CRatMat c(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) c(i, j) = s * (*this)(i, j);
  return c;
}

bool CRatMat::is_zero() const {
  for (const auto& z : a_)
    if (!z.is_zero()) return false;
  return true;
}

CRat CRatMat::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det of non-square");
  CRatMat w = *this;
  CRat d{Rat(1)};
  for (int c = 0; c < rows_; ++c) {
    int p = -1;
    for (int i = c; i < rows_; ++i)
      if (!w(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return CRat();
    if (p != c) {
      for (int j = 0; j < cols_; ++j) std::swap(w(p, j), w(c, j));
      d = -d;
    }
    d = d * w(c, c);
    // 1/z = conj(z)/|z|^2
    const CRat& z = w(c, c);
    Rat n2 = z.re * z.re + z.im * z.im;
    CRat zinv{z.re / n2, -z.im / n2};
    for (int i = c + 1; i < rows_; ++i) {
      if (w(i, c).is_zero()) continue;
      CRat f = w(i, c) * zinv;
      for (int j = c; j < cols_; ++j) w(i, j) = w(i, j) - f * w(c, j);
    }
  }
  return d;
}

}  // namespace bolcat
