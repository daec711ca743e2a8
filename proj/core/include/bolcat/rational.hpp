#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bolcat {

// Exact rational scalar. All structure constants, subspace bases and
// involution matrices live over this type; nothing in the exact layer ever
// touches floating point.
using Rat = mpq_class;

Rat parse_rat(std::string_view text);      // "3", "-1/2", "0"
std::string to_string(const Rat& q);       // canonical "p/q" or "p"

inline double to_double(const Rat& q) { return q.get_d(); }

// Gaussian rational a + b*i. Enough complex exactness to verify the matrix
// tables and the rational conjugacy witnesses with residual exactly zero.
struct CRat {
  Rat re, im;

  CRat() : re(0), im(0) {}
  CRat(Rat r) : re(std::move(r)), im(0) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  CRat conj() const { return {re, -im}; }
  std::complex<double> approx() const { return {re.get_d(), im.get_d()}; }

  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CRat operator*(const Rat& s, const CRat& a) { return {s * a.re, s * a.im}; }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
};

std::string to_string(const CRat& z);

// One matrix entry in a catalog file:  (a + b*sqrt2) + (c + d*sqrt2)*i.
// The sqrt2 parts carry the surd witnesses (they are verified numerically and
// flagged; everything else stays exact).
struct SurdEntry {
  Rat a, b, c, d;

  bool exact() const { return b == 0 && d == 0; }
  CRat gauss() const { return {a, c}; }
  std::complex<double> approx() const;
};

// Grammar: term (('+'|'-') term)*, term := rational ['r2'] ['i'], e.g.
// "-1+1i", "1/2r2i", "-1r2". Whitespace-free.
SurdEntry parse_surd(std::string_view text);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bolcat
