#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bolcat/liealg.hpp"

namespace bolcat::matrixrep {

using Mat = Eigen::MatrixXcd;

// One irreducible block of a (possibly block-diagonal) matrix realization.
struct RepBlock {
  std::string tag;       // sl2r | so3 | sl2c | su21 | sl3r
  int n = 0;             // matrix size
  int offset = 0;        // first algebra coordinate of this factor
  int count = 0;         // number of algebra coordinates
  bool real_group = false;
  bool projective = false;  // center is +-I and elements are classes mod sign
  std::vector<CRatMat> basis;  // exact matrices of the factor basis
};

// Faithful realization of a catalog algebra as block-diagonal matrices, with
// an exact (Gaussian-rational) layer underneath the numeric one.
class MatrixRep {
 public:
  using Ptr = std::shared_ptr<const MatrixRep>;

  // Resolves by algebra name for the five atoms and factor-wise for sums.
  static Ptr for_algebra(const liealg::LieAlgebra::Ptr& alg);

  const liealg::LieAlgebra::Ptr& algebra() const { return alg_; }
  const std::vector<RepBlock>& blocks() const { return blocks_; }
  int block_count() const { return int(blocks_.size()); }

  std::vector<Mat> rep(const liealg::Element& x) const;
  std::vector<Mat> rep(const std::vector<double>& coeffs) const;
  std::vector<CRatMat> rep_exact(const liealg::Element& x) const;

  // Numeric pullback through the rep (least squares, coefficients snapped to
  // rationals with denominator <= 10^6); residual is relative and measured
  // before snapping.
  liealg::Element pullback(const std::vector<Mat>& m, double* residual = nullptr) const;
  // Raw least-squares coefficients without snapping; returns the residual.
  double pullback_raw(const std::vector<Mat>& m, Eigen::VectorXd& out) const;
  // Exact pullback; nullopt if m is not in the image.
  std::optional<liealg::Element> pullback_exact(const std::vector<CRatMat>& m) const;

 private:
  liealg::LieAlgebra::Ptr alg_;
  std::vector<RepBlock> blocks_;
  Eigen::MatrixXd pullback_lhs_;  // stacked real system, built once
};

struct RepReport {
  bool homomorphism_exact = false;  // residual exactly zero over the table
  bool injective = false;
  double max_residual = 0.0;        // numeric echo of the exact check
  std::vector<std::string> failures;
  bool ok() const { return homomorphism_exact && injective; }
};
RepReport rep_verify(const MatrixRep& r);

// Invariant Hermitian form of the su21 block: the exact solution J of
// rep(x)^*T J + J rep(x) = 0, normalized to J(0,0) = 1.
std::optional<CRatMat> recover_invariant_form(const MatrixRep& r, int block = 0);

// Scaling-and-squaring Pade exponential (Eigen), eigendecomposition log and
// square root for positive-definite self-adjoint input.
Mat mat_exp(const Mat& m);
Mat mat_log_pd(const Mat& m);  // throws std::domain_error off the PD cone
Mat sqrt_pd(const Mat& m);

// Group element: one matrix per rep block. Projective blocks are kept in
// sign-normalized form (first nonzero entry of the first row has positive
// real part, else positive imaginary part).
struct GroupElement {
  MatrixRep::Ptr rep;
  std::vector<Mat> blocks;

  static GroupElement identity(const MatrixRep::Ptr& rep);
  GroupElement normalized() const;
};

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);
GroupElement cartan_tau(const GroupElement& g);  // per block x -> (x^*T)^-1
double max_abs(const GroupElement& g);
// Entry-wise max difference over blocks, relative to max(1, magnitudes),
// after sign normalization.
double distance(const GroupElement& a, const GroupElement& b);
double rel_residual(const Mat& a, const Mat& b);
Mat sign_normalize_block(const Mat& m);

// Determinant drift from 1, max over blocks.
double det_residual(const GroupElement& g);

// Cartan polar factorization x = p k with tau(p) = p^-1 and tau(k) = k.
struct PolarPair {
  GroupElement p, k;
};
PolarPair polar_section(const GroupElement& x);
void polar_block(const Mat& x, Mat& p, Mat& k);

// Adjoint action pulled back through the rep: Ad_g(x) with g rep(x) g^-1.
// Throws if the pullback residual exceeds `max_residual`.
liealg::Element ad_conjugate(const GroupElement& g, const liealg::Element& x,
                             double max_residual = 1e-10);

// Verification of a conjugacy claim Ad_g(element) ~ target. Tries both
// conjugation directions and colinearity with the stored target; the image
// must land in the stated subspace for the claim to count.
struct ConjugacyCheck {
  bool ok = false;
  bool exact = false;      // verified in exact arithmetic
  int direction = 0;       // +1: g x g^-1, -1: g^-1 x g
  double scale = 0.0;      // image = scale * target
  double residual = 0.0;
  bool image_in_space = false;
  std::string detail;
};
ConjugacyCheck verify_conjugacy(const MatrixRep& rep, const std::vector<CRatMat>& g_exact,
                                bool g_is_exact, const std::vector<Mat>& g_numeric,
                                const liealg::Element& element, const liealg::Element& target,
                                const liealg::Subspace& space, double tol = 1e-12);

// Hand-written membership predicates for the stabilizer families that the
// coset reproducers exercise.
struct StabilizerFamily {
  std::string tag;
  int dim = 0;
  std::function<bool(const GroupElement&, double tol)> member;
  std::function<GroupElement(std::mt19937_64&)> sample;
};

// 2x2 families on PSL2(R): unit upper triangular, or positive-diagonal
// triangular.
StabilizerFamily triangular_unipotent(const MatrixRep::Ptr& rep);
StabilizerFamily triangular_positive(const MatrixRep::Ptr& rep);
// 3x3 families on SL3(R).
StabilizerFamily spiral_family(const MatrixRep::Ptr& rep, double d);
StabilizerFamily unipotent3_family(const MatrixRep::Ptr& rep);
// Extracts the spiral parameter t of a member (det route), if the shape fits.
std::optional<double> spiral_parameter(const Mat& g, double d, double tol);
// Families on PSL2(C) x PSL2(R); kind in {5, 6, 8} with parameter r.
StabilizerFamily product_triangular_family(const MatrixRep::Ptr& rep, int kind, double r);
// Maximal compact of a single-tag or product rep.
StabilizerFamily maximal_compact(const MatrixRep::Ptr& rep);

bool compact_block_member(const RepBlock& b, const Mat& m, double tol);
Mat random_compact_block(const RepBlock& b, std::mt19937_64& rng);

bool coset_equal(const GroupElement& x, const GroupElement& y, const StabilizerFamily& h,
                 double tol = 1e-9);

// Fixed decimal format (12 significant digits) for reproducible reports.
std::string format_matrix(const Mat& m);

}  // namespace bolcat::matrixrep
