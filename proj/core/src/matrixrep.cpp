#include "bolcat/matrixrep.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

namespace bolcat::matrixrep {

using liealg::Element;
using liealg::LieAlgebra;
using liealg::Subspace;

namespace {

constexpr double kPi = std::numbers::pi;

// Entries of the atom tables are integers or integer multiples of i.
CRatMat make_block(int n, std::initializer_list<std::pair<int, int>> entries) {
  CRatMat m(n, n);
  int idx = 0;
  for (auto [re, im] : entries) {
    m(idx / n, idx % n) = CRat(Rat(re), Rat(im));
    ++idx;
  }
  return m;
}

struct AtomSpec {
  int n;
  bool real_group;
  bool projective;
  std::vector<CRatMat> basis;
};

const std::map<std::string, AtomSpec>& atom_specs() {
  static const std::map<std::string, AtomSpec> specs = [] {
    std::map<std::string, AtomSpec> s;
    // sl2(R): e1 = diag(1,-1), e2 = offdiag(1,1), e3 = rotation generator.
    s["sl2r"] = AtomSpec{2, true, true,
                         {make_block(2, {{1, 0}, {0, 0}, {0, 0}, {-1, 0}}),
                          make_block(2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}}),
                          make_block(2, {{0, 0}, {1, 0}, {-1, 0}, {0, 0}})}};
    // so3(R) ~ su2(C) with basis {i e1, i e2, e3}.
    s["so3"] = AtomSpec{2, false, true,
                        {make_block(2, {{0, 1}, {0, 0}, {0, 0}, {0, -1}}),
                         make_block(2, {{0, 0}, {0, 1}, {0, 1}, {0, 0}}),
                         make_block(2, {{0, 0}, {1, 0}, {-1, 0}, {0, 0}})}};
    // sl2(C) as a real algebra: {e1, e2, e3, i e1, i e2, i e3}.
    s["sl2c"] = AtomSpec{2, false, true,
                         {make_block(2, {{1, 0}, {0, 0}, {0, 0}, {-1, 0}}),
                          make_block(2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}}),
                          make_block(2, {{0, 0}, {1, 0}, {-1, 0}, {0, 0}}),
                          make_block(2, {{0, 1}, {0, 0}, {0, 0}, {0, -1}}),
                          make_block(2, {{0, 0}, {0, 1}, {0, 1}, {0, 0}}),
                          make_block(2, {{0, 0}, {0, 1}, {0, -1}, {0, 0}})}};
    // su3(C,1).
    s["su21"] = AtomSpec{
        3, false, false,
        {make_block(3, {{0, -1}, {0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {-1, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, -1}, {0, 0}, {0, -1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}, {0, -1}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}, {0, -1}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}, {1, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 0}, {0, -1}, {0, 0}})}};
    // sl3(R).
    s["sl3r"] = AtomSpec{
        3, true, false,
        {make_block(3, {{0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{-1, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}}),
         make_block(3, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}}),
         make_block(3, {{-1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}})}};
    return s;
  }();
  return specs;
}

Mat to_numeric(const CRatMat& m) {
  Mat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).approx();
  return out;
}

double inf_norm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// Best rational approximation with bounded denominator (continued fractions).
// The default bound sits below double precision, so exact rational values
// round-trip and irrational ones keep ~1e-13 accuracy.
Rat snap_rational(double x, long max_den = 1000000000000L) {
  if (!std::isfinite(x)) throw std::domain_error("cannot snap a non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double ip = std::floor(frac);
    if (ip > 1e15) break;
    long a = long(ip);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    double rem = frac - ip;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat r(p1, q1);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

}  // namespace

MatrixRep::Ptr MatrixRep::for_algebra(const LieAlgebra::Ptr& alg) {
  auto rep = std::make_shared<MatrixRep>();
  rep->alg_ = alg;
  std::vector<const LieAlgebra*> atoms;
  std::vector<int> offsets;
  if (alg->factors().empty()) {
    atoms.push_back(alg.get());
    offsets.push_back(0);
  } else {
    for (size_t i = 0; i < alg->factors().size(); ++i) {
      atoms.push_back(alg->factors()[i].get());
      offsets.push_back(alg->factor_offsets()[i]);
    }
  }
  for (size_t i = 0; i < atoms.size(); ++i) {
    auto it = atom_specs().find(atoms[i]->name());
    if (it == atom_specs().end())
      throw std::invalid_argument("no builtin matrix realization for " + atoms[i]->name());
    const AtomSpec& spec = it->second;
    if (int(spec.basis.size()) != atoms[i]->dim())
      throw std::logic_error("realization dimension mismatch for " + atoms[i]->name());
    RepBlock b;
    b.tag = atoms[i]->name();
    b.n = spec.n;
    b.offset = offsets[i];
    b.count = atoms[i]->dim();
    b.real_group = spec.real_group;
    b.projective = spec.projective;
    b.basis = spec.basis;
    rep->blocks_.push_back(std::move(b));
  }
  // Stacked real linear system for pullbacks, one column per coordinate.
  int rows = 0;
  for (const auto& b : rep->blocks_) rows += 2 * b.n * b.n;
  rep->pullback_lhs_ = Eigen::MatrixXd::Zero(rows, alg->dim());
  int base = 0;
  for (const auto& b : rep->blocks_) {
    for (int k = 0; k < b.count; ++k) {
      Mat bm = to_numeric(b.basis[k]);
      for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) {
          rep->pullback_lhs_(base + 2 * (i * b.n + j), b.offset + k) = bm(i, j).real();
          rep->pullback_lhs_(base + 2 * (i * b.n + j) + 1, b.offset + k) = bm(i, j).imag();
        }
    }
    base += 2 * b.n * b.n;
  }
  return rep;
}

std::vector<Mat> MatrixRep::rep(const Element& x) const {
  if (x.alg != alg_) throw std::invalid_argument("element from a different algebra");
  std::vector<double> c(x.c.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = to_double(x.c[i]);
  return rep(c);
}

std::vector<Mat> MatrixRep::rep(const std::vector<double>& coeffs) const {
  if (int(coeffs.size()) != alg_->dim()) throw std::invalid_argument("coefficient length");
  std::vector<Mat> out;
  for (const auto& b : blocks_) {
    Mat m = Mat::Zero(b.n, b.n);
    for (int k = 0; k < b.count; ++k)
      if (coeffs[b.offset + k] != 0.0) m += coeffs[b.offset + k] * to_numeric(b.basis[k]);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<CRatMat> MatrixRep::rep_exact(const Element& x) const {
  if (x.alg != alg_) throw std::invalid_argument("element from a different algebra");
  std::vector<CRatMat> out;
  for (const auto& b : blocks_) {
    CRatMat m(b.n, b.n);
    for (int k = 0; k < b.count; ++k)
      if (x.c[b.offset + k] != 0) m = m + b.basis[k].scaled(CRat(x.c[b.offset + k]));
    out.push_back(std::move(m));
  }
  return out;
}

namespace {
Eigen::VectorXd stack_blocks(const std::vector<RepBlock>& blocks, const std::vector<Mat>& m) {
  int rows = 0;
  for (const auto& b : blocks) rows += 2 * b.n * b.n;
  Eigen::VectorXd v(rows);
  int base = 0;
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const int n = blocks[bi].n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        v(base + 2 * (i * n + j)) = m[bi](i, j).real();
        v(base + 2 * (i * n + j) + 1) = m[bi](i, j).imag();
      }
    base += 2 * n * n;
  }
  return v;
}
}  // namespace

double MatrixRep::pullback_raw(const std::vector<Mat>& m, Eigen::VectorXd& out) const {
  if (int(m.size()) != block_count()) throw std::invalid_argument("block count mismatch");
  Eigen::VectorXd rhs = stack_blocks(blocks_, m);
  out = pullback_lhs_.colPivHouseholderQr().solve(rhs);
  return (pullback_lhs_ * out - rhs).cwiseAbs().maxCoeff() /
         std::max(1.0, rhs.cwiseAbs().maxCoeff());
}

Element MatrixRep::pullback(const std::vector<Mat>& m, double* residual) const {
  Eigen::VectorXd y;
  double res = pullback_raw(m, y);
  if (residual) *residual = res;
  RatVec c(alg_->dim());
  for (int i = 0; i < alg_->dim(); ++i) c[i] = snap_rational(y(i));
  return Element(alg_, std::move(c));
}

std::optional<Element> MatrixRep::pullback_exact(const std::vector<CRatMat>& m) const {
  if (int(m.size()) != block_count()) throw std::invalid_argument("block count mismatch");
  RatMat sys(0, alg_->dim());
  RatVec rhs;
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    const RepBlock& b = blocks_[bi];
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) {
        RatVec re(alg_->dim(), Rat(0)), im(alg_->dim(), Rat(0));
        for (int k = 0; k < b.count; ++k) {
          re[b.offset + k] = b.basis[k](i, j).re;
          im[b.offset + k] = b.basis[k](i, j).im;
        }
        sys.append_row(re);
        rhs.push_back(m[bi](i, j).re);
        sys.append_row(im);
        rhs.push_back(m[bi](i, j).im);
      }
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  // solve() returns some solution of the consistent system; the rep is
  // injective so it is the unique preimage, but re-verify to be safe.
  Element cand(alg_, *sol);
  for (size_t bi = 0; bi < blocks_.size(); ++bi)
    if (!(rep_exact(cand)[bi] == m[bi])) return std::nullopt;
  return cand;
}

RepReport rep_verify(const MatrixRep& r) {
  RepReport report;
  report.homomorphism_exact = true;
  const auto alg = r.algebra();
  const int n = alg->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Element bij(alg, alg->bracket_basis(i, j));
      auto lhs = r.rep_exact(bij);
      auto ri = r.rep_exact(Element::basis(alg, i));
      auto rj = r.rep_exact(Element::basis(alg, j));
      for (size_t b = 0; b < lhs.size(); ++b) {
        CRatMat comm = ri[b] * rj[b] - rj[b] * ri[b];
        CRatMat diff = lhs[b] - comm;
        if (!diff.is_zero()) {
          report.homomorphism_exact = false;
          report.failures.push_back("pair (" + alg->labels()[i] + ", " + alg->labels()[j] +
                                    ") block " + std::to_string(b));
          double worst = 0;
          for (int a = 0; a < diff.rows(); ++a)
            for (int c = 0; c < diff.cols(); ++c)
              worst = std::max(worst, std::abs(diff(a, c).approx()));
          report.max_residual = std::max(report.max_residual, worst);
        }
      }
    }
  // Injectivity: the exact rep matrix has full column rank.
  RatMat sys(0, n);
  for (const auto& b : r.blocks())
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) {
        RatVec re(n, Rat(0)), im(n, Rat(0));
        for (int k = 0; k < b.count; ++k) {
          re[b.offset + k] = b.basis[k](i, j).re;
          im[b.offset + k] = b.basis[k](i, j).im;
        }
        sys.append_row(re);
        sys.append_row(im);
      }
  report.injective = rank(sys) == n;
  if (!report.injective) report.failures.push_back("realization is not injective");
  return report;
}

std::optional<CRatMat> recover_invariant_form(const MatrixRep& r, int block) {
  const RepBlock& b = r.blocks().at(block);
  if (b.n != 3) return std::nullopt;
  // Unknowns: J00, J11, J22, Re/Im J01, Re/Im J02, Re/Im J12 (J Hermitian).
  auto entry = [](int a, int c, int k) -> CRat {
    // coefficient of unknown k in J(a,c)
    auto one = CRat(Rat(1));
    auto i = CRat(Rat(0), Rat(1));
    auto mi = CRat(Rat(0), Rat(-1));
    if (a == c) return (k == a) ? one : CRat();
    int lo = std::min(a, c), hi = std::max(a, c);
    int base = lo == 0 ? (hi == 1 ? 3 : 5) : 7;
    if (k == base) return one;
    if (k == base + 1) return a < c ? i : mi;
    return CRat();
  };
  RatMat sys(0, 9);
  for (const CRatMat& B : b.basis) {
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) {
        RatVec re(9, Rat(0)), im(9, Rat(0));
        for (int k = 0; k < 9; ++k) {
          CRat coef;
          for (int t = 0; t < 3; ++t) {
            coef = coef + B(t, a).conj() * entry(t, c, k);  // (B^*T J)(a,c)
            coef = coef + entry(a, t, k) * B(t, c);          // (J B)(a,c)
          }
          re[k] = coef.re;
          im[k] = coef.im;
        }
        sys.append_row(re);
        sys.append_row(im);
      }
  }
  RatMat ns = nullspace(sys);
  if (ns.rows() != 1) return std::nullopt;
  RatVec u = ns.row(0);
  if (u[0] == 0) return std::nullopt;
  Rat scale = 1 / u[0];
  for (auto& q : u) q *= scale;
  CRatMat J(3, 3);
  J(0, 0) = CRat(u[0]);
  J(1, 1) = CRat(u[1]);
  J(2, 2) = CRat(u[2]);
  J(0, 1) = CRat(u[3], u[4]);
  J(1, 0) = CRat(u[3], -u[4]);
  J(0, 2) = CRat(u[5], u[6]);
  J(2, 0) = CRat(u[5], -u[6]);
  J(1, 2) = CRat(u[7], u[8]);
  J(2, 1) = CRat(u[7], -u[8]);
  return J;
}

Mat mat_exp(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("exp of non-square matrix");
  return m.exp();
}

namespace {
Eigen::SelfAdjointEigenSolver<Mat> pd_eigensolver(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("non-square matrix");
  double scale = std::max(1.0, inf_norm(m));
  if (inf_norm(m - m.adjoint()) > 1e-9 * scale)
    throw std::domain_error("matrix is not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Mat> es((m + Mat(m.adjoint())) / 2.0);
  double lmax = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, lmax))
    throw std::domain_error("matrix is not positive definite");
  return es;
}
}  // namespace

Mat mat_log_pd(const Mat& m) {
  auto es = pd_eigensolver(m);
  Eigen::VectorXd l = es.eigenvalues().array().log();
  return es.eigenvectors() * l.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
         es.eigenvectors().adjoint();
}

Mat sqrt_pd(const Mat& m) {
  auto es = pd_eigensolver(m);
  Eigen::VectorXd l = es.eigenvalues().array().sqrt();
  return es.eigenvectors() * l.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
         es.eigenvectors().adjoint();
}

GroupElement GroupElement::identity(const MatrixRep::Ptr& rep) {
  GroupElement g;
  g.rep = rep;
  for (const auto& b : rep->blocks()) g.blocks.push_back(Mat::Identity(b.n, b.n));
  return g;
}

Mat sign_normalize_block(const Mat& m) {
  for (int j = 0; j < m.cols(); ++j) {
    std::complex<double> z = m(0, j);
    if (std::abs(z) <= 1e-9) continue;
    bool flip = z.real() < -1e-9 || (std::abs(z.real()) <= 1e-9 && z.imag() < 0);
    return flip ? Mat(-m) : m;
  }
  return m;
}

GroupElement GroupElement::normalized() const {
  GroupElement g = *this;
  for (size_t i = 0; i < g.blocks.size(); ++i)
    if (rep->blocks()[i].projective) g.blocks[i] = sign_normalize_block(g.blocks[i]);
  return g;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (a.rep != b.rep) throw std::invalid_argument("group elements of different realizations");
  GroupElement c;
  c.rep = a.rep;
  for (size_t i = 0; i < a.blocks.size(); ++i) c.blocks.push_back(a.blocks[i] * b.blocks[i]);
  return c;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement out;
  out.rep = g.rep;
  for (const auto& b : g.blocks) out.blocks.push_back(b.inverse());
  return out;
}

GroupElement cartan_tau(const GroupElement& g) {
  GroupElement out;
  out.rep = g.rep;
  for (const auto& b : g.blocks) out.blocks.push_back(Mat(b.adjoint()).inverse());
  return out;
}

double max_abs(const GroupElement& g) {
  double m = 0;
  for (const auto& b : g.blocks) m = std::max(m, inf_norm(b));
  return m;
}

double rel_residual(const Mat& a, const Mat& b) {
  double scale = std::max({1.0, inf_norm(a), inf_norm(b)});
  return inf_norm(a - b) / scale;
}

double distance(const GroupElement& a, const GroupElement& b) {
  GroupElement an = a.normalized(), bn = b.normalized();
  double d = 0;
  for (size_t i = 0; i < an.blocks.size(); ++i)
    d = std::max(d, rel_residual(an.blocks[i], bn.blocks[i]));
  return d;
}

double det_residual(const GroupElement& g) {
  double worst = 0;
  for (size_t i = 0; i < g.blocks.size(); ++i) {
    std::complex<double> d = g.blocks[i].determinant();
    double drift = g.rep->blocks()[i].projective ? std::abs(std::abs(d) - 1.0)
                                                 : std::abs(d - std::complex<double>(1, 0));
    worst = std::max(worst, drift);
  }
  return worst;
}

void polar_block(const Mat& x, Mat& p, Mat& k) {
  // p = (x x^*)^(1/2) and k = p^-1 x, computed from the singular value
  // decomposition of x itself so the condition number is not squared.
  Eigen::JacobiSVD<Mat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat u = svd.matrixU(), v = svd.matrixV();
  p = u * svd.singularValues().asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
      u.adjoint();
  k = u * v.adjoint();
}

PolarPair polar_section(const GroupElement& x) {
  PolarPair out;
  out.p.rep = out.k.rep = x.rep;
  for (const auto& b : x.blocks) {
    Mat p, k;
    polar_block(b, p, k);
    out.p.blocks.push_back(std::move(p));
    out.k.blocks.push_back(std::move(k));
  }
  return out;
}

Element ad_conjugate(const GroupElement& g, const Element& x, double max_residual) {
  const MatrixRep& rep = *g.rep;
  auto xb = rep.rep(x);
  std::vector<Mat> img;
  for (size_t i = 0; i < xb.size(); ++i)
    img.push_back(g.blocks[i] * xb[i] * g.blocks[i].inverse());
  double res = 0;
  Element y = rep.pullback(img, &res);
  if (res > max_residual)
    throw std::domain_error("conjugate left the realization image (residual " +
                            std::to_string(res) + ")");
  return y;
}

namespace {

// Solve rep(y) * g = g * rep(x)  (left: y = g x g^-1), or
// g * rep(y) = rep(x) * g       (right: y = g^-1 x g), exactly.
std::optional<Element> exact_conj_solve(const MatrixRep& rep, const std::vector<CRatMat>& g,
                                        const Element& x, bool left) {
  auto xb = rep.rep_exact(x);
  RatMat sys(0, rep.algebra()->dim());
  RatVec rhs;
  const auto& blocks = rep.blocks();
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const RepBlock& b = blocks[bi];
    CRatMat target = left ? g[bi] * xb[bi] : xb[bi] * g[bi];
    // column of unknown y_{offset+k}: B_k g (left) or g B_k (right)
    std::vector<CRatMat> cols;
    for (int k = 0; k < b.count; ++k)
      cols.push_back(left ? b.basis[k] * g[bi] : g[bi] * b.basis[k]);
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) {
        RatVec re(rep.algebra()->dim(), Rat(0)), im(rep.algebra()->dim(), Rat(0));
        for (int k = 0; k < b.count; ++k) {
          re[b.offset + k] = cols[k](i, j).re;
          im[b.offset + k] = cols[k](i, j).im;
        }
        sys.append_row(re);
        rhs.push_back(target(i, j).re);
        sys.append_row(im);
        rhs.push_back(target(i, j).im);
      }
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  return Element(rep.algebra(), *sol);
}

std::optional<Rat> exact_scale(const Element& y, const Element& t) {
  int pivot = -1;
  for (size_t i = 0; i < t.c.size(); ++i)
    if (t.c[i] != 0) {
      pivot = int(i);
      break;
    }
  if (pivot < 0) return std::nullopt;
  Rat s = y.c[pivot] / t.c[pivot];
  for (size_t i = 0; i < t.c.size(); ++i)
    if (y.c[i] != s * t.c[i]) return std::nullopt;
  return s;
}

}  // namespace

ConjugacyCheck verify_conjugacy(const MatrixRep& rep, const std::vector<CRatMat>& g_exact,
                                bool g_is_exact, const std::vector<Mat>& g_numeric,
                                const Element& element, const Element& target,
                                const Subspace& space, double tol) {
  ConjugacyCheck best;
  bool exact_invertible = g_is_exact;
  if (g_is_exact)
    for (const auto& gb : g_exact)
      if (gb.det().is_zero()) exact_invertible = false;
  if (exact_invertible) {
    for (int dir : {+1, -1}) {
      auto y = exact_conj_solve(rep, g_exact, element, dir == +1);
      if (!y) continue;
      ConjugacyCheck c;
      c.exact = true;
      c.direction = dir;
      c.image_in_space = space.contains(*y);
      auto s = exact_scale(*y, target);
      c.ok = c.image_in_space && s.has_value() && *s != 0;
      c.scale = s ? to_double(*s) : 0.0;
      c.residual = 0.0;
      if (c.ok) return c;
      if (!best.ok && (c.image_in_space || best.direction == 0)) best = c;
    }
    if (best.direction != 0) {
      best.detail = "exact conjugate verified in neither direction";
      return best;
    }
  }
  // Numeric route (surd witnesses, or exact solve impossible).
  auto xb = rep.rep(element);
  Eigen::VectorXd tvec(rep.algebra()->dim());
  for (int i = 0; i < rep.algebra()->dim(); ++i) tvec(i) = to_double(target.c[i]);
  Eigen::MatrixXd sbasis(rep.algebra()->dim(), space.rank());
  for (int i = 0; i < rep.algebra()->dim(); ++i)
    for (int j = 0; j < space.rank(); ++j) sbasis(i, j) = to_double(space.basis()(j, i));
  for (int dir : {+1, -1}) {
    std::vector<Mat> img;
    for (size_t bi = 0; bi < g_numeric.size(); ++bi) {
      Mat gb = g_numeric[bi];
      img.push_back(dir == +1 ? Mat(gb * xb[bi] * gb.inverse())
                              : Mat(gb.inverse() * xb[bi] * gb));
    }
    Eigen::VectorXd y;
    double pull_res = rep.pullback_raw(img, y);
    double s = tvec.squaredNorm() > 0 ? y.dot(tvec) / tvec.squaredNorm() : 0.0;
    double colin = (y - s * tvec).cwiseAbs().maxCoeff() / std::max(1.0, y.cwiseAbs().maxCoeff());
    Eigen::VectorXd alpha = sbasis.colPivHouseholderQr().solve(y);
    double inspace = (sbasis * alpha - y).cwiseAbs().maxCoeff() /
                     std::max(1.0, y.cwiseAbs().maxCoeff());
    ConjugacyCheck c;
    c.exact = false;
    c.direction = dir;
    c.scale = s;
    c.residual = std::max({pull_res, colin, inspace});
    c.image_in_space = inspace < tol;
    c.ok = c.residual < tol && std::fabs(s) > tol;
    if (c.ok) return c;
    if (best.direction == 0 || c.residual < best.residual) best = c;
  }
  if (best.detail.empty()) best.detail = "conjugacy residual above tolerance";
  return best;
}

bool compact_block_member(const RepBlock& b, const Mat& m, double tol) {
  double scale = std::max(1.0, inf_norm(m));
  if (inf_norm(Mat(m.adjoint() * m) - Mat::Identity(b.n, b.n)) > tol * scale) return false;
  if (b.real_group && m.imag().cwiseAbs().maxCoeff() > tol * scale) return false;
  return true;
}

Mat random_compact_block(const RepBlock& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  if (b.tag == "sl2r") {
    double t = ang(rng);
    Mat m(2, 2);
    m << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    return m;
  }
  if (b.tag == "so3" || b.tag == "sl2c") {
    // Haar-ish SU(2) via a random unit quaternion.
    std::normal_distribution<double> nd;
    double a = nd(rng), bq = nd(rng), c = nd(rng), d = nd(rng);
    double n = std::sqrt(a * a + bq * bq + c * c + d * d);
    a /= n, bq /= n, c /= n, d /= n;
    Mat m(2, 2);
    m << std::complex<double>(a, bq), std::complex<double>(c, d),
        std::complex<double>(-c, d), std::complex<double>(a, -bq);
    return m;
  }
  if (b.tag == "sl3r") {
    Mat x = Mat::Zero(3, 3);
    double u = ang(rng), v = ang(rng), w = ang(rng);
    x(0, 1) = u, x(1, 0) = -u;
    x(0, 2) = v, x(2, 0) = -v;
    x(1, 2) = w, x(2, 1) = -w;
    return mat_exp(x);
  }
  if (b.tag == "su21") {
    // exp of a random element of the compact part k = <e1,e2,e3,e6>.
    static const int kIdx[4] = {0, 1, 2, 5};
    Mat x = Mat::Zero(3, 3);
    for (int i : kIdx) x += ang(rng) * to_numeric(b.basis[i]);
    return mat_exp(x);
  }
  throw std::logic_error("no compact sampler for block " + b.tag);
}

StabilizerFamily maximal_compact(const MatrixRep::Ptr& rep) {
  StabilizerFamily f;
  f.tag = "maxcompact";
  int d = 0;
  for (const auto& b : rep->blocks()) {
    if (b.tag == "sl2r") d += 1;
    else if (b.tag == "so3" || b.tag == "sl2c") d += 3;
    else d += b.tag == "su21" ? 4 : 3;
  }
  f.dim = d;
  f.member = [rep](const GroupElement& g, double tol) {
    for (size_t i = 0; i < g.blocks.size(); ++i)
      if (!compact_block_member(rep->blocks()[i], g.blocks[i], tol)) return false;
    return true;
  };
  f.sample = [rep](std::mt19937_64& rng) {
    GroupElement g;
    g.rep = rep;
    for (const auto& b : rep->blocks()) g.blocks.push_back(random_compact_block(b, rng));
    return g;
  };
  return f;
}

namespace {
bool real_block(const Mat& m, double tol) {
  return m.imag().cwiseAbs().maxCoeff() <= tol * std::max(1.0, inf_norm(m));
}
}  // namespace

StabilizerFamily triangular_unipotent(const MatrixRep::Ptr& rep) {
  StabilizerFamily f;
  f.tag = "triangular_l1";
  f.dim = 1;
  f.member = [](const GroupElement& g, double tol) {
    Mat m = sign_normalize_block(g.blocks[0]);
    double s = std::max(1.0, inf_norm(m));
    return real_block(m, tol) && std::abs(m(1, 0)) <= tol * s &&
           std::abs(m(0, 0) - 1.0) <= tol * s && std::abs(m(1, 1) - 1.0) <= tol * s;
  };
  f.sample = [rep](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    GroupElement g = GroupElement::identity(rep);
    g.blocks[0](0, 1) = u(rng);
    return g;
  };
  return f;
}

StabilizerFamily triangular_positive(const MatrixRep::Ptr& rep) {
  StabilizerFamily f;
  f.tag = "triangular_lpos";
  f.dim = 2;
  f.member = [](const GroupElement& g, double tol) {
    Mat m = sign_normalize_block(g.blocks[0]);
    double s = std::max(1.0, inf_norm(m));
    return real_block(m, tol) && std::abs(m(1, 0)) <= tol * s && m(0, 0).real() > tol &&
           std::abs(m(0, 0) * m(1, 1) - 1.0) <= tol * s;
  };
  f.sample = [rep](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    GroupElement g = GroupElement::identity(rep);
    double l = std::exp(u(rng) / 2);
    g.blocks[0](0, 0) = l;
    g.blocks[0](1, 1) = 1.0 / l;
    g.blocks[0](0, 1) = u(rng);
    return g;
  };
  return f;
}

std::optional<double> spiral_parameter(const Mat& g, double d, double tol) {
  double s = std::max(1.0, inf_norm(g));
  if (!real_block(g, tol)) return std::nullopt;
  if (std::abs(g(1, 0)) > tol * s || std::abs(g(2, 0)) > tol * s) return std::nullopt;
  double det2 = (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)).real();
  if (det2 <= 0) return std::nullopt;
  double t = std::log(det2) / (2.0 * std::log(d));
  double dt = std::pow(d, t);
  Mat want(2, 2);
  want << dt * std::cos(t), dt * std::sin(t), -dt * std::sin(t), dt * std::cos(t);
  Mat block(2, 2);
  block << g(1, 1), g(1, 2), g(2, 1), g(2, 2);
  if (rel_residual(block, want) > tol) return std::nullopt;
  if (std::abs(g(0, 0) - std::pow(d, -2.0 * t)) > tol * s) return std::nullopt;
  return t;
}

StabilizerFamily spiral_family(const MatrixRep::Ptr& rep, double d) {
  StabilizerFamily f;
  f.tag = "spiral";
  f.dim = 3;
  f.member = [d](const GroupElement& g, double tol) {
    return spiral_parameter(g.blocks[0], d, tol).has_value();
  };
  f.sample = [rep, d](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    double t = u(rng), a = u(rng), b = u(rng);
    GroupElement g = GroupElement::identity(rep);
    Mat& m = g.blocks[0];
    double dt = std::pow(d, t);
    m(0, 0) = std::pow(d, -2 * t);
    m(0, 1) = a;
    m(0, 2) = b;
    m(1, 1) = dt * std::cos(t);
    m(1, 2) = dt * std::sin(t);
    m(2, 1) = -dt * std::sin(t);
    m(2, 2) = dt * std::cos(t);
    return g;
  };
  return f;
}

StabilizerFamily unipotent3_family(const MatrixRep::Ptr& rep) {
  StabilizerFamily f;
  f.tag = "unipotent3";
  f.dim = 3;
  f.member = [](const GroupElement& g, double tol) {
    const Mat& m = g.blocks[0];
    double s = std::max(1.0, inf_norm(m));
    if (!real_block(m, tol)) return false;
    return std::abs(m(1, 0)) <= tol * s && std::abs(m(2, 0)) <= tol * s &&
           std::abs(m(2, 1)) <= tol * s && std::abs(m(0, 0) - 1.0) <= tol * s &&
           std::abs(m(1, 1) - 1.0) <= tol * s && std::abs(m(2, 2) - 1.0) <= tol * s;
  };
  f.sample = [rep](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    GroupElement g = GroupElement::identity(rep);
    g.blocks[0](0, 1) = u(rng);
    g.blocks[0](0, 2) = u(rng);
    g.blocks[0](1, 2) = u(rng);
    return g;
  };
  return f;
}

StabilizerFamily product_triangular_family(const MatrixRep::Ptr& rep, int kind, double r) {
  if (kind != 5 && kind != 6 && kind != 8) throw std::invalid_argument("kind must be 5, 6 or 8");
  StabilizerFamily f;
  f.tag = "family_h" + std::to_string(kind);
  f.dim = 4;
  f.member = [kind, r](const GroupElement& g, double tol) {
    Mat a = sign_normalize_block(g.blocks[0]);
    const Mat& b = g.blocks[1];
    double sa = std::max(1.0, inf_norm(a));
    if (std::abs(a(1, 0)) > tol * sa) return false;
    if (std::abs(a(0, 0) * a(1, 1) - 1.0) > tol * sa) return false;
    if (std::abs(a(0, 0)) <= tol) return false;
    // second component must be a rotation
    double sb = std::max(1.0, inf_norm(b));
    if (!real_block(b, tol)) return false;
    if (inf_norm(Mat(b.adjoint() * b) - Mat::Identity(2, 2)) > tol * sb) return false;
    if (std::abs(b.determinant() - std::complex<double>(1, 0)) > tol * sb) return false;
    // v-range of the diagonal: only h5 at r = 0 constrains it (v real).
    if (kind == 5 && r == 0.0) {
      std::complex<double> a00 = a(0, 0);
      if (std::abs(a00.imag()) > tol * std::abs(a00) || a00.real() <= 0) return false;
    }
    return true;
  };
  f.sample = [rep, kind, r](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    double x = u(rng), y = u(rng);
    std::complex<double> v;
    if (kind == 5) v = std::complex<double>(-x + y, r * x);
    else if (kind == 6) v = std::complex<double>(-x, r * x + y);
    else v = std::complex<double>(y, x);
    GroupElement g = GroupElement::identity(rep);
    g.blocks[0](0, 0) = std::exp(v);
    g.blocks[0](1, 1) = std::exp(-v);
    g.blocks[0](0, 1) = std::complex<double>(u(rng), u(rng));
    Mat rot(2, 2);
    rot << std::cos(y), std::sin(y), -std::sin(y), std::cos(y);
    g.blocks[1] = rot;
    return g;
  };
  return f;
}

bool coset_equal(const GroupElement& x, const GroupElement& y, const StabilizerFamily& h,
                 double tol) {
  return h.member(mul(inverse(y), x), tol);
}

std::string format_matrix(const Mat& m) {
  std::string out = "[";
  char buf[64];
  for (int i = 0; i < m.rows(); ++i) {
    out += i ? "; " : "";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      if (std::abs(m(i, j).imag()) < 1e-14 * std::max(1.0, std::abs(m(i, j)))) {
        std::snprintf(buf, sizeof buf, "%.12g", m(i, j).real());
        out += buf;
      } else {
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", m(i, j).real(), m(i, j).imag());
        out += buf;
      }
    }
  }
  return out + "]";
}

}  // namespace bolcat::matrixrep
