#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bolcat/ratlin.hpp"

namespace bolcat::liealg {

// Finite-dimensional real Lie algebra given by exact structure constants.
// Immutable after construction and shared by handle; every operation on
// elements and subspaces is a pure function.
class LieAlgebra {
 public:
  using Ptr = std::shared_ptr<const LieAlgebra>;

  struct BracketEntry {
    int i, j, k;  // 1-based basis indices, [e_i, e_j] has coefficient c on e_k
    Rat c;
  };

  // Builds the full antisymmetric table from the i<j entries and checks for
  // duplicate or diagonal assignments. Jacobi is NOT checked here; that is
  // verify_jacobi's job so corrupted tables can be loaded and reported.
  static Ptr from_table(std::string name, std::vector<std::string> labels,
                        const std::vector<BracketEntry>& entries);

  // Block-diagonal sum; labels become tuples "(e1,0,...)" per factor.
  static Ptr direct_sum(const std::vector<Ptr>& factors);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Coefficients of [e_i, e_j] (0-based here).
  const RatVec& bracket_basis(int i, int j) const { return table_[size_t(i) * dim_ + j]; }

  // Direct-sum structure: offsets_[f] is the coordinate start of factor f.
  const std::vector<Ptr>& factors() const { return factors_; }
  const std::vector<int>& factor_offsets() const { return offsets_; }

 private:
  LieAlgebra() = default;
  std::string name_;
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<RatVec> table_;  // dim*dim vectors of length dim
  std::vector<Ptr> factors_;   // empty for atoms
  std::vector<int> offsets_;
};

struct Element {
  LieAlgebra::Ptr alg;
  RatVec c;

  Element() = default;
  Element(LieAlgebra::Ptr a, RatVec coeffs);
  static Element basis(const LieAlgebra::Ptr& a, int i);  // 0-based
  static Element zero(const LieAlgebra::Ptr& a);

  bool is_zero() const;
  friend Element operator+(const Element& x, const Element& y);
  friend Element operator-(const Element& x, const Element& y);
  friend Element operator*(const Rat& s, const Element& x);
  friend bool operator==(const Element& x, const Element& y);
};

Element bracket(const Element& x, const Element& y);

// Subspace in canonical (reduced row echelon) form; equality of subspaces is
// equality of representations.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(const LieAlgebra::Ptr& a, const std::vector<Element>& gens);
  static Subspace span_rows(const LieAlgebra::Ptr& a, const RatMat& rows);
  static Subspace whole(const LieAlgebra::Ptr& a);
  static Subspace zero(const LieAlgebra::Ptr& a);

  const LieAlgebra::Ptr& algebra() const { return alg_; }
  int rank() const { return basis_.rows(); }
  const RatMat& basis() const { return basis_; }
  Element basis_element(int i) const;

  bool contains(const Element& x) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis_ == b.basis_;
  }

 private:
  LieAlgebra::Ptr alg_;
  RatMat basis_;  // rref, rank() rows x dim cols
};

struct JacobiViolation {
  int i, j, k;  // 0-based basis triple
};

// Exhaustive exact Jacobi check over all basis triples; empty iff the table
// is a Lie algebra.
std::vector<JacobiViolation> verify_jacobi(const LieAlgebra::Ptr& a);

// ad matrix of x acting on coefficients (columns are [x, e_j]).
RatMat ad_matrix(const Element& x);

// Trace form tr(ad x . ad y), exact.
Rat killing_form(const Element& x, const Element& y);

// The normalized quadratic form on sl2(R): trace form / 8, which on the
// standard basis equals l1^2 + l2^2 - l3^2 (and -det of the 2x2 picture).
Rat sl2_normalized_form(const Element& x, const Element& y);

enum class Sl2Class { Zero, Elliptic, Parabolic, Hyperbolic };
Sl2Class classify_sl2_element(const Element& x);
const char* to_string(Sl2Class c);

// Smallest subalgebra containing the generators (bracket-and-span iteration).
Subspace span_closure(const std::vector<Element>& gens);

bool is_subalgebra(const Subspace& s);
// is_ideal with one argument: ideal of the whole algebra. The two-argument
// form checks [ambient, s] subset s with brackets restricted to `ambient`.
bool is_ideal(const Subspace& s);
bool is_ideal(const Subspace& s, const Subspace& ambient);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// [a, b] as a subspace (span of pairwise brackets of basis vectors).
Subspace bracket_space(const Subspace& a, const Subspace& b);

// Projection of a subspace of a direct sum onto one factor, as a subspace of
// that factor's algebra.
Subspace project_factor(const Subspace& s, int factor);

// Parses the algebra header of a catalog file (group/dim/labels/bracket
// lines). Files describing direct sums carry a `factors` line instead; those
// names are returned for the caller to resolve.
struct AlgebraSource {
  std::string name;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<LieAlgebra::BracketEntry> brackets;
  std::vector<std::string> factor_names;

  bool is_product() const { return !factor_names.empty(); }
};
AlgebraSource parse_algebra_text(const std::string& text);
LieAlgebra::Ptr build_algebra(const AlgebraSource& src);  // atoms only

}  // namespace bolcat::liealg
