#include "bolcat/loopcore.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bolcat::loopcore {

using liealg::Element;
using liealg::LieAlgebra;
using liealg::Subspace;
using matrixrep::compact_block_member;
using matrixrep::mat_exp;
using matrixrep::polar_block;
using matrixrep::random_compact_block;
using matrixrep::rel_residual;
using matrixrep::sign_normalize_block;
using matrixrep::sqrt_pd;

namespace {

constexpr double kPi = std::numbers::pi;

double rotation_angle(const Mat& k) { return std::atan2(k(0, 1).real(), k(0, 0).real()); }

std::vector<Mat> hom_apply(const MatrixRep& rep, const Loop::Component& comp,
                           const std::vector<Mat>& ks) {
  std::vector<Mat> out;
  switch (comp.hom.kind) {
    case HomSpec::Kind::Trivial:
      for (int f : comp.fiber_blocks) out.push_back(Mat::Identity(rep.blocks()[f].n, rep.blocks()[f].n));
      return out;
    case HomSpec::Kind::Angles: {
      std::vector<double> thetas;
      for (const auto& k : ks) thetas.push_back(rotation_angle(k));
      for (size_t fi = 0; fi < comp.fiber_blocks.size(); ++fi) {
        int f = comp.fiber_blocks[fi];
        Mat x = Mat::Zero(rep.blocks()[f].n, rep.blocks()[f].n);
        for (size_t b = 0; b < thetas.size(); ++b) x += thetas[b] * comp.hom.angle_gens[b][fi];
        out.push_back(mat_exp(x));
      }
      return out;
    }
    case HomSpec::Kind::Su2Cover:
      // the fiber realization is the same 2x2 picture, so the covering map is
      // literally the identity on matrices
      out.push_back(ks.at(0));
      return out;
  }
  throw std::logic_error("unhandled hom kind");
}

GroupElement canonicalize(const Loop& l, const GroupElement& x) {
  GroupElement out = x;
  for (const auto& comp : l.components()) {
    std::vector<Mat> ks;
    for (int b : comp.base_blocks) {
      Mat p, k;
      polar_block(out.blocks[b], p, k);
      out.blocks[b] = p;
      ks.push_back(k);
    }
    if (!comp.fiber_blocks.empty()) {
      auto phis = hom_apply(*l.rep(), comp, ks);
      for (size_t fi = 0; fi < comp.fiber_blocks.size(); ++fi)
        out.blocks[comp.fiber_blocks[fi]] =
            out.blocks[comp.fiber_blocks[fi]] * phis[fi].inverse();
    }
  }
  return out.normalized();
}

void require_same_loop(const LoopPoint& a, const LoopPoint& b) {
  if (a.loop != b.loop) throw std::invalid_argument("points of different loops");
}

std::mt19937_64 seeded(uint64_t seed) { return std::mt19937_64(seed ^ 0x9e3779b97f4a7c15ull); }

}  // namespace

Loop::Ptr Loop::hyperbolic(std::string name, MatrixRep::Ptr rep, Subspace m) {
  auto l = std::make_shared<Loop>();
  l->name_ = std::move(name);
  l->rep_ = std::move(rep);
  l->m_ = std::move(m);
  Component c;
  for (int i = 0; i < l->rep_->block_count(); ++i) c.base_blocks.push_back(i);
  l->comps_.push_back(std::move(c));
  return l;
}

Loop::Ptr Loop::scheerer(std::string name, MatrixRep::Ptr rep, Subspace m,
                         std::vector<int> base_blocks, HomSpec hom) {
  auto l = std::make_shared<Loop>();
  l->name_ = std::move(name);
  l->rep_ = std::move(rep);
  l->m_ = std::move(m);
  Component c;
  c.base_blocks = std::move(base_blocks);
  for (int i = 0; i < l->rep_->block_count(); ++i)
    if (std::find(c.base_blocks.begin(), c.base_blocks.end(), i) == c.base_blocks.end())
      c.fiber_blocks.push_back(i);
  if (c.fiber_blocks.empty()) throw std::invalid_argument("scheerer loop without a fiber");
  if (hom.kind == HomSpec::Kind::Angles) {
    if (hom.angle_gens.size() != c.base_blocks.size())
      throw std::invalid_argument("one angle generator per base block required");
    for (int b : c.base_blocks)
      if (l->rep_->blocks()[b].tag != "sl2r")
        throw std::invalid_argument("angle homs need rotation-type base stabilizers");
  }
  c.hom = std::move(hom);
  l->comps_.push_back(std::move(c));
  // Sampled homomorphism check: phi(k k') = phi(k) phi(k') up to center.
  auto rng = seeded(12);
  for (int it = 0; it < 16; ++it) {
    std::vector<Mat> k1, k2, k12;
    for (int b : l->comps_[0].base_blocks) {
      Mat a = random_compact_block(l->rep_->blocks()[b], rng);
      Mat bm = random_compact_block(l->rep_->blocks()[b], rng);
      k1.push_back(a);
      k2.push_back(bm);
      k12.push_back(a * bm);
    }
    auto p1 = hom_apply(*l->rep_, l->comps_[0], k1);
    auto p2 = hom_apply(*l->rep_, l->comps_[0], k2);
    auto p12 = hom_apply(*l->rep_, l->comps_[0], k12);
    for (size_t f = 0; f < p12.size(); ++f) {
      double d = rel_residual(sign_normalize_block(p12[f]), sign_normalize_block(Mat(p1[f] * p2[f])));
      if (d > 1e-9) throw std::invalid_argument("fiber map is not a homomorphism (residual " +
                                                std::to_string(d) + ")");
    }
  }
  return l;
}

Loop::Ptr Loop::scheerer_extension(std::string name, const Ptr& base,
                                   const LieAlgebra::Ptr& fiber, HomSpec hom) {
  auto alg = LieAlgebra::direct_sum({base->rep()->algebra(), fiber});
  auto rep = MatrixRep::for_algebra(alg);
  int base_dim = base->rep()->algebra()->dim();
  RatMat rows(0, alg->dim());
  for (int i = 0; i < base->tangent().rank(); ++i) {
    RatVec v(alg->dim(), Rat(0));
    for (int j = 0; j < base_dim; ++j) v[j] = base->tangent().basis()(i, j);
    rows.append_row(v);
  }
  for (int j = 0; j < fiber->dim(); ++j) {
    RatVec v(alg->dim(), Rat(0));
    v[base_dim + j] = 1;
    rows.append_row(v);
  }
  std::vector<int> base_blocks;
  for (int i = 0; i < base->rep()->block_count(); ++i) base_blocks.push_back(i);
  return scheerer(std::move(name), rep, Subspace::span_rows(alg, rows), base_blocks,
                  std::move(hom));
}

Loop::Ptr Loop::direct_product(const Ptr& a, const Ptr& b) {
  auto alg = LieAlgebra::direct_sum({a->rep()->algebra(), b->rep()->algebra()});
  auto rep = MatrixRep::for_algebra(alg);
  auto l = std::make_shared<Loop>();
  l->name_ = a->name() + "x" + b->name();
  l->rep_ = rep;
  int da = a->rep()->algebra()->dim();
  RatMat rows(0, alg->dim());
  for (int i = 0; i < a->tangent().rank(); ++i) {
    RatVec v(alg->dim(), Rat(0));
    for (int j = 0; j < da; ++j) v[j] = a->tangent().basis()(i, j);
    rows.append_row(v);
  }
  for (int i = 0; i < b->tangent().rank(); ++i) {
    RatVec v(alg->dim(), Rat(0));
    for (int j = 0; j < b->rep()->algebra()->dim(); ++j) v[da + j] = b->tangent().basis()(i, j);
    rows.append_row(v);
  }
  l->m_ = Subspace::span_rows(alg, rows);
  int block_off = a->rep()->block_count();
  l->comps_ = a->components();
  for (auto comp : b->components()) {
    for (auto& i : comp.base_blocks) i += block_off;
    for (auto& i : comp.fiber_blocks) i += block_off;
    l->comps_.push_back(std::move(comp));
  }
  return l;
}

LoopPoint identity(const Loop::Ptr& l) { return {l, GroupElement::identity(l->rep())}; }

LoopPoint section(const Loop::Ptr& l, const GroupElement& x) {
  return {l, canonicalize(*l, x)};
}

LoopPoint point_from_tangent(const Loop::Ptr& l, const std::vector<double>& coeffs) {
  if (int(coeffs.size()) != l->tangent().rank())
    throw std::invalid_argument("coefficient count != tangent rank");
  std::vector<double> v(l->rep()->algebra()->dim(), 0.0);
  for (int i = 0; i < l->tangent().rank(); ++i)
    for (int j = 0; j < int(v.size()); ++j)
      v[j] += coeffs[i] * to_double(l->tangent().basis()(i, j));
  auto blocks = l->rep()->rep(v);
  GroupElement g;
  g.rep = l->rep();
  for (auto& b : blocks) g.blocks.push_back(mat_exp(b));
  return {l, canonicalize(*l, g)};
}

LoopPoint random_point(const Loop::Ptr& l, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> c(l->tangent().rank());
  for (auto& x : c) x = u(rng);
  return point_from_tangent(l, c);
}

GroupElement random_stabilizer(const Loop::Ptr& l, std::mt19937_64& rng) {
  GroupElement g = GroupElement::identity(l->rep());
  for (const auto& comp : l->components()) {
    std::vector<Mat> ks;
    for (int b : comp.base_blocks) {
      g.blocks[b] = random_compact_block(l->rep()->blocks()[b], rng);
      ks.push_back(g.blocks[b]);
    }
    if (!comp.fiber_blocks.empty()) {
      auto phis = hom_apply(*l->rep(), comp, ks);
      for (size_t fi = 0; fi < comp.fiber_blocks.size(); ++fi)
        g.blocks[comp.fiber_blocks[fi]] = phis[fi];
    }
  }
  return g;
}

bool stabilizer_member(const Loop::Ptr& l, const GroupElement& g, double tol) {
  for (const auto& comp : l->components()) {
    std::vector<Mat> ks;
    for (int b : comp.base_blocks) {
      if (!compact_block_member(l->rep()->blocks()[b], g.blocks[b], tol)) return false;
      ks.push_back(g.blocks[b]);
    }
    if (!comp.fiber_blocks.empty()) {
      auto phis = hom_apply(*l->rep(), comp, ks);
      for (size_t fi = 0; fi < comp.fiber_blocks.size(); ++fi) {
        const Mat& have = g.blocks[comp.fiber_blocks[fi]];
        if (rel_residual(sign_normalize_block(have), sign_normalize_block(phis[fi])) > tol)
          return false;
      }
    }
  }
  return true;
}

LoopPoint loop_mul(const LoopPoint& a, const LoopPoint& b) {
  require_same_loop(a, b);
  return section(a.loop, matrixrep::mul(a.g, b.g));
}

LoopPoint left_divide(const LoopPoint& a, const LoopPoint& b) {
  require_same_loop(a, b);
  return section(a.loop, matrixrep::mul(matrixrep::inverse(a.g), b.g));
}

LoopPoint right_divide(const LoopPoint& b, const LoopPoint& a) {
  require_same_loop(a, b);
  const Loop& l = *a.loop;
  GroupElement out = GroupElement::identity(l.rep());
  for (const auto& comp : l.components()) {
    std::vector<Mat> ks;
    for (int bi : comp.base_blocks) {
      const Mat& pa = a.g.blocks[bi];
      const Mat& pb = b.g.blocks[bi];
      // solve p pa^2 p = pb^2 inside exp m: p = pa^-1 (pa pb^2 pa)^(1/2) pa^-1,
      // with the square root taken from the SVD of pb pa to avoid squaring the
      // condition number ((pb pa)^* (pb pa) = pa pb^2 pa).
      Eigen::JacobiSVD<Mat> svd(pb * pa, Eigen::ComputeFullV);
      Mat v = svd.matrixV();
      Mat root =
          v * svd.singularValues().asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
          v.adjoint();
      Mat pa_inv = pa.inverse();
      Mat px = pa_inv * root * pa_inv;
      out.blocks[bi] = px;
      ks.push_back(pb.inverse() * px * pa);
    }
    if (!comp.fiber_blocks.empty()) {
      auto phis = hom_apply(*l.rep(), comp, ks);
      for (size_t fi = 0; fi < comp.fiber_blocks.size(); ++fi) {
        int f = comp.fiber_blocks[fi];
        out.blocks[f] = b.g.blocks[f] * phis[fi] * a.g.blocks[f].inverse();
      }
    }
  }
  return {a.loop, out.normalized()};
}

LoopPoint loop_inverse(const LoopPoint& x) {
  return section(x.loop, matrixrep::inverse(x.g));
}

double point_distance(const LoopPoint& a, const LoopPoint& b) {
  require_same_loop(a, b);
  return matrixrep::distance(a.g, b.g);
}

bool check_bol(const LoopPoint& a, const LoopPoint& b, const LoopPoint& c, double tol,
               double* residual) {
  LoopPoint lhs = loop_mul(a, loop_mul(b, loop_mul(a, c)));
  LoopPoint rhs = loop_mul(loop_mul(a, loop_mul(b, a)), c);
  double d = point_distance(lhs, rhs);
  if (residual) *residual = d;
  return d <= tol;
}

bool check_bruck(const LoopPoint& x, const LoopPoint& y, double tol, double* residual) {
  LoopPoint lhs = loop_inverse(loop_mul(x, y));
  LoopPoint rhs = loop_mul(loop_inverse(x), loop_inverse(y));
  double d = point_distance(lhs, rhs);
  if (residual) *residual = d;
  return d <= tol;
}

namespace {
SuiteReport run_suite(const Loop::Ptr& l, const char* name, int samples, double tol,
                      uint64_t seed,
                      const std::function<double(std::mt19937_64&)>& one) {
  SuiteReport r;
  r.suite = name;
  r.group = l->name();
  r.samples = samples;
  r.tolerance = tol;
  if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
  auto rng = seeded(seed);
  for (int i = 0; i < samples; ++i) {
    double d = one(rng);
    r.max_residual = std::max(r.max_residual, d);
    if (d > tol && r.witnesses.size() < 5) {
      std::ostringstream os;
      os << name << " sample " << i << " residual " << d;
      r.witnesses.push_back(os.str());
    }
  }
  r.pass = r.max_residual <= tol;
  return r;
}
}  // namespace

SuiteReport bol_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed) {
  return run_suite(l, "bol", samples, tol, seed, [&](std::mt19937_64& rng) {
    double d = 0;
    check_bol(random_point(l, rng), random_point(l, rng), random_point(l, rng), tol, &d);
    return d;
  });
}

SuiteReport bruck_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed) {
  return run_suite(l, "bruck", samples, tol, seed, [&](std::mt19937_64& rng) {
    double d = 0;
    check_bruck(random_point(l, rng), random_point(l, rng), tol, &d);
    return d;
  });
}

SuiteReport division_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed) {
  return run_suite(l, "division", samples, tol, seed, [&](std::mt19937_64& rng) {
    LoopPoint a = random_point(l, rng), b = random_point(l, rng);
    double d1 = point_distance(loop_mul(a, left_divide(a, b)), b);
    double d2 = point_distance(loop_mul(right_divide(b, a), a), b);
    return std::max(d1, d2);
  });
}

SuiteReport alternativity_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed) {
  return run_suite(l, "alternativity", samples, tol, seed, [&](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> c(l->tangent().rank());
    for (auto& x : c) x = u(rng);
    double s = u(rng), t = u(rng);
    auto scaled = [&](double f) {
      std::vector<double> v = c;
      for (auto& x : v) x *= f;
      return point_from_tangent(l, v);
    };
    return point_distance(loop_mul(scaled(s), scaled(t)), scaled(s + t));
  });
}

SuiteReport section_uniqueness(const Loop::Ptr& l, int samples, double tol, uint64_t seed) {
  return run_suite(l, "section_uniqueness", samples, tol, seed, [&](std::mt19937_64& rng) {
    LoopPoint p0 = random_point(l, rng);
    GroupElement h = random_stabilizer(l, rng);
    GroupElement x = matrixrep::mul(p0.g, h);
    LoopPoint p = section(l, x);
    double worst = 0;
    // canonical representative reproduces the sampled one
    worst = std::max(worst, point_distance(p, p0));
    // base blocks stay on the tau(p) = p^-1 slice (Hermitian representatives)
    for (const auto& comp : l->components())
      for (int b : comp.base_blocks)
        worst = std::max(worst, rel_residual(p.g.blocks[b], Mat(p.g.blocks[b].adjoint())));
    // p^-1 x is a stabilizer element
    if (!stabilizer_member(l, matrixrep::mul(matrixrep::inverse(p.g), x), std::max(tol, 1e-7)))
      worst = std::max(worst, 1.0);
    // right stabilizer invariance and idempotence
    GroupElement h2 = random_stabilizer(l, rng);
    worst = std::max(worst, point_distance(section(l, matrixrep::mul(x, h2)), p));
    worst = std::max(worst, point_distance(section(l, p.g), p));
    return worst;
  });
}

std::vector<SuiteReport> full_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed) {
  std::vector<SuiteReport> out;
  out.push_back(bol_suite(l, samples, tol, seed));
  if (l->bruck_expected()) out.push_back(bruck_suite(l, samples, tol, seed + 1));
  out.push_back(division_suite(l, samples, tol, seed + 2));
  out.push_back(alternativity_suite(l, samples, tol, seed + 3));
  out.push_back(section_uniqueness(l, samples, tol, seed + 4));
  return out;
}

void ReproduceReport::check(bool ok, const std::string& what) {
  rows.push_back(std::string(ok ? "[ok]   " : "[FAIL] ") + what);
  if (!ok) pass = false;
}

ReproduceReport reproduce_lemma7(const MatrixRep::Ptr& sl2r_rep) {
  ReproduceReport r;
  r.name = "lemma7";
  auto unipotent = matrixrep::triangular_unipotent(sl2r_rep);
  auto positive = matrixrep::triangular_positive(sl2r_rep);
  Rat prev_norm(0);
  RatMat prev_g;
  for (int k = 1; k <= 8; ++k) {
    Rat step(1);
    for (int i = 0; i < k; ++i) step /= 10;
    Rat c = step - 1;  // c -> -1 from above
    RatMat s(2, 2), g(2, 2);
    s(0, 0) = 1 + c;
    s(0, 1) = c;
    s(1, 0) = c;
    s(1, 1) = (c * c + 1) / (1 + c);
    g(0, 0) = 1 + c;
    g(0, 1) = 1;
    g(1, 0) = c;
    g(1, 1) = 1;
    std::ostringstream tagos;
    tagos << "k=" << k;
    std::string tag = tagos.str();
    r.check(det(s) == 1, tag + " element is in SL2, det = 1 exactly");
    r.check(s(0, 1) == s(1, 0) && s(0, 0) + s(1, 1) >= 2,
            tag + " element lies on the symmetric det-1 sheet (trace >= 2)");
    auto ginv = inverse(g);
    r.check(ginv.has_value() && det(g) == 1, tag + " coset representative is invertible");
    RatMat u = *ginv * s;
    r.check(u(1, 0) == 0 && u(0, 0) == 1 && u(1, 1) == 1,
            tag + " coset membership: g^-1 s is unit upper triangular exactly");
    // numeric echo through the family predicates
    GroupElement ue = GroupElement::identity(sl2r_rep);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) ue.blocks[0](i, j) = to_double(u(i, j));
    r.check(unipotent.member(ue, 1e-9) && positive.member(ue, 1e-9),
            tag + " membership holds for both triangular families");
    Rat norm = s(1, 1);  // the dominant entry
    r.check(k == 1 || norm > prev_norm, tag + " representative norm grows monotonically");
    if (k == 8) r.check(norm > 1000000, tag + " representative norm exceeds 1e6");
    if (k >= 7) {
      Rat gap(0);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          Rat diff = g(i, j) - prev_g(i, j);
          if (diff < 0) diff = -diff;
          if (diff > gap) gap = diff;
        }
      r.check(gap < Rat(1, 10000), tag + " coset family is Cauchy within 1e-4");
    }
    prev_norm = norm;
    prev_g = g;
    std::ostringstream os;
    os << "k=" << k << "  |s(c)| = " << to_double(norm);
    if (k == 1 || k == 8) {
      Mat sn(2, 2), gn(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          sn(i, j) = to_double(s(i, j));
          gn(i, j) = to_double(g(i, j));
        }
      os << "  s(c) = " << matrixrep::format_matrix(sn)
         << "  g(c) = " << matrixrep::format_matrix(gn);
    }
    r.rows.push_back(os.str());
  }
  r.facts["conclusion"] =
      "coset representatives converge while their section images diverge; no "
      "continuous section over the triangular stabilizers contains this sheet";
  return r;
}

ReproduceReport reproduce_prop12(const MatrixRep::Ptr& sl3r_rep, double d) {
  ReproduceReport r;
  r.name = "prop12";
  if (d <= 1) throw std::invalid_argument("the spiral family needs d > 1");
  // exact representative m1 and the coset point g1 (c = 1)
  RatMat m1(3, 3);
  m1(0, 0) = 2, m1(0, 1) = 1, m1(1, 0) = 1, m1(1, 1) = 1, m1(2, 2) = 1;
  r.check(det(m1) == 1, "m1 has det 1 exactly");
  r.check(m1(0, 0) > 0 && m1(0, 0) * m1(1, 1) - m1(0, 1) * m1(1, 0) > 0,
          "m1 is positive definite (leading minors)");
  Mat m1n = Mat::Zero(3, 3), g1 = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m1n(i, j) = to_double(m1(i, j));
  g1 = m1n;  // the coset representative at c = 1 equals m1
  double p = kPi;
  Mat m2 = Mat::Zero(3, 3);
  m2(0, 0) = 2 * std::pow(d, -4 * p);
  m2(0, 1) = m2(1, 0) = std::pow(d, -4 * p);
  m2(1, 1) = (std::pow(d, -4 * p) + std::pow(d, 2 * p)) / 2;
  m2(2, 2) = std::pow(d, 2 * p);
  r.check(std::abs(std::abs(m2.determinant()) - 1.0) < 1e-9, "m2 has det 1");
  {
    Eigen::SelfAdjointEigenSolver<Mat> es(m2);
    r.check(es.eigenvalues().minCoeff() > 0, "m2 is positive definite");
  }
  Mat h1 = g1.inverse() * m1n;
  Mat h2 = g1.inverse() * m2;
  auto t1 = matrixrep::spiral_parameter(h1, d, 1e-9);
  auto t2 = matrixrep::spiral_parameter(h2, d, 1e-6);
  r.check(t1.has_value() && std::abs(*t1) < 1e-9, "m1 lies in the spiral coset at t = 0");
  r.check(t2.has_value() && std::abs(*t2 - 2 * kPi) < 1e-6,
          "m2 lies in the same spiral coset at t = 2*pi");
  r.rows.push_back("m1 = " + matrixrep::format_matrix(m1n));
  r.rows.push_back("m2 = " + matrixrep::format_matrix(m2));
  if (t1 && t2) {
    std::ostringstream os;
    os << "valid spiral parameters in one coset: t = " << *t1 << " and t = " << *t2;
    r.rows.push_back(os.str());
    r.check(std::abs(*t2 - *t1) > 1, "the two parameters are distinct");
  }
  r.check((m1n - m2).cwiseAbs().maxCoeff() > 0.1,
          "the two canonical representatives differ entry-wise by > 0.1");
  // unipotent-stabilizer family: same divergence as the 2x2 case
  auto uni3 = matrixrep::unipotent3_family(sl3r_rep);
  Rat prev_norm(0);
  for (int k = 0; k <= 8; ++k) {
    Rat c(0);
    if (k > 0) {
      Rat step(1);
      for (int i = 0; i < k; ++i) step /= 10;
      c = step - 1;
    }
    RatMat s3(3, 3), gc(3, 3);
    s3(0, 0) = 1 + c, s3(0, 1) = c, s3(1, 0) = c, s3(1, 1) = (c * c + 1) / (c + 1), s3(2, 2) = 1;
    gc(0, 0) = 1 + c, gc(0, 1) = 1, gc(1, 0) = c, gc(1, 1) = 1, gc(2, 2) = 1;
    std::ostringstream tagos;
    tagos << "s3 k=" << k;
    std::string tag = tagos.str();
    if (k == 0) {
      r.check(s3 == RatMat::identity(3), "s3(0) is the identity");
      continue;
    }
    r.check(det(s3) == 1, tag + " det 1 exactly");
    RatMat u = *inverse(gc) * s3;
    GroupElement ue = GroupElement::identity(sl3r_rep);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ue.blocks[0](i, j) = to_double(u(i, j));
    r.check(uni3.member(ue, 1e-9), tag + " lies in the unipotent-stabilizer coset");
    Rat norm = s3(1, 1);
    r.check(k == 1 || norm > prev_norm, tag + " norm grows");
    if (k == 8) r.check(norm > 1000000, tag + " norm exceeds 1e6");
    prev_norm = norm;
  }
  r.facts["spiral"] = "one coset carries two canonical representatives (t = 0 and t = 2*pi)";
  r.facts["unipotent"] = "the unipotent-stabilizer family diverges as c -> -1";
  return r;
}

ReproduceReport reproduce_prop19(const MatrixRep::Ptr& prod_rep, const std::vector<double>& rs) {
  ReproduceReport r;
  r.name = "prop19";
  // exact shape checks of the two representatives
  RatMat a1(2, 2), a2(2, 2), g(2, 2);
  a1(0, 0) = Rat(5, 4), a1(0, 1) = 1, a1(1, 0) = 1, a1(1, 1) = Rat(8, 5);
  a2(0, 0) = 5, a2(0, 1) = 4, a2(1, 0) = 4, a2(1, 1) = Rat(17, 5);
  g(0, 0) = 5, g(0, 1) = 1, g(1, 0) = 4, g(1, 1) = 1;
  r.check(det(g) == 1, "coset representative has det 1 exactly");
  for (auto [m, nm] : {std::pair<RatMat*, const char*>{&a1, "m1"}, {&a2, "m2"}}) {
    r.check(det(*m) == 1, std::string(nm) + " first component has det 1 exactly");
    Rat aa1 = ((*m)(0, 0) + (*m)(1, 1)) / 2;
    Rat aa2 = ((*m)(0, 0) - (*m)(1, 1)) / 2;
    Rat b1 = (*m)(0, 1);
    r.check(aa1 * aa1 - aa2 * aa2 - b1 * b1 == 1,
            std::string(nm) + " satisfies a1^2 - a2^2 - b1^2 - b2^2 = 1 exactly");
    r.check(aa1 >= 1, std::string(nm) + " has a1 >= 1");
  }
  {
    Rat gap = a2(0, 0) - a1(0, 0);
    if (gap < 0) gap = -gap;
    r.check(gap > 1, "the representatives differ entry-wise by more than 1");
  }
  // exact triangularity of g^-1 m_i
  for (auto [m, nm] : {std::pair<RatMat*, const char*>{&a1, "m1"}, {&a2, "m2"}}) {
    RatMat u = *inverse(g) * *m;
    r.check(u(1, 0) == 0, std::string(nm) + ": g^-1 m is upper triangular exactly");
  }
  {
    Mat a1n(2, 2), a2n(2, 2), gn(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a1n(i, j) = to_double(a1(i, j));
        a2n(i, j) = to_double(a2(i, j));
        gn(i, j) = to_double(g(i, j));
      }
    r.rows.push_back("m1 = (" + matrixrep::format_matrix(a1n) + ", 1)");
    r.rows.push_back("m2 = (" + matrixrep::format_matrix(a2n) + ", 1)");
    r.rows.push_back("coset representative = (" + matrixrep::format_matrix(gn) + ", 1)");
  }
  // family memberships
  for (int kind : {5, 6, 8}) {
    for (double rv : rs) {
      auto fam = matrixrep::product_triangular_family(prod_rep, kind, rv);
      for (auto [m, nm] : {std::pair<RatMat*, const char*>{&a1, "m1"}, {&a2, "m2"}}) {
        GroupElement x = GroupElement::identity(prod_rep);
        GroupElement gg = GroupElement::identity(prod_rep);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            x.blocks[0](i, j) = to_double((*m)(i, j));
            gg.blocks[0](i, j) = to_double(g(i, j));
          }
        std::ostringstream os;
        os << nm << " in the family-h" << kind << " coset at r = " << rv;
        r.check(matrixrep::coset_equal(x, gg, fam, 1e-9), os.str());
      }
    }
  }
  r.facts["conclusion"] =
      "one coset of each triangular-times-rotation family carries two distinct "
      "canonical representatives";
  return r;
}

}  // namespace bolcat::loopcore
