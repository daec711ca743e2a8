#include "bolcat/involution.hpp"

#include <stdexcept>

namespace bolcat::involution {

Element Involution::apply(const Element& x) const {
  if (x.alg != alg) throw std::invalid_argument("element from a different algebra");
  return Element(alg, mat_vec(map, x.c));
}

std::string validate_involution(const LieAlgebra::Ptr& alg, const RatMat& map) {
  const int n = alg->dim();
  if (map.rows() != n || map.cols() != n) return "map is not a square matrix of the dimension";
  if (!(map * map == RatMat::identity(n))) return "map does not square to the identity";
  Involution t{alg, map};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Element lhs = t.apply(Element(alg, alg->bracket_basis(i, j)));
      Element rhs = liealg::bracket(t.apply(Element::basis(alg, i)), t.apply(Element::basis(alg, j)));
      if (!(lhs == rhs))
        return "bracket not preserved on pair (" + alg->labels()[i] + ", " + alg->labels()[j] + ")";
    }
  return {};
}

Involution make_involution(const LieAlgebra::Ptr& alg, const RatMat& map) {
  if (auto err = validate_involution(alg, map); !err.empty())
    throw std::invalid_argument("invalid involution on " + alg->name() + ": " + err);
  return {alg, map};
}

EigenSplit eigensplit(const Involution& t) {
  const int n = t.alg->dim();
  RatMat minus_i = t.map - RatMat::identity(n);  // kernel = +1 eigenspace
  RatMat plus_i = t.map + RatMat::identity(n);   // kernel = -1 eigenspace
  return {Subspace::span_rows(t.alg, nullspace(minus_i)),
          Subspace::span_rows(t.alg, nullspace(plus_i))};
}

bool graded_relations_hold(const EigenSplit& s) {
  const Subspace& h = s.plus;
  const Subspace& m = s.minus;
  return h.contains(liealg::bracket_space(h, h)) && m.contains(liealg::bracket_space(h, m)) &&
         h.contains(liealg::bracket_space(m, m));
}

bool is_lie_triple_system(const Subspace& m) {
  for (int i = 0; i < m.rank(); ++i)
    for (int j = 0; j < m.rank(); ++j) {
      Element bij = liealg::bracket(m.basis_element(i), m.basis_element(j));
      for (int k = 0; k < m.rank(); ++k)
        if (!m.contains(liealg::bracket(bij, m.basis_element(k)))) return false;
    }
  return true;
}

BolTriple bol_triple_check(const Subspace& h, const Subspace& m, bool eigensplit_tangent) {
  if (h.algebra() != m.algebra()) throw std::invalid_argument("subspaces of different algebras");
  if (!liealg::is_subalgebra(h))
    throw std::invalid_argument("complement candidate is not a subalgebra");
  BolTriple t;
  t.h = h;
  t.m = m;
  t.complement_ok = liealg::intersect(h, m).rank() == 0 &&
                    h.rank() + m.rank() == h.algebra()->dim();
  t.triple_ok = is_lie_triple_system(m);
  if (m.rank() > 0) {
    std::vector<Element> gens;
    for (int i = 0; i < m.rank(); ++i) gens.push_back(m.basis_element(i));
    t.generates_ok = liealg::span_closure(gens).rank() == m.algebra()->dim();
  } else {
    t.generates_ok = false;
  }
  if (eigensplit_tangent) {
    Subspace mm = liealg::bracket_space(m, m);
    t.msum_ok = liealg::intersect(m, mm).rank() == 0 &&
                liealg::sum(m, mm).rank() == m.algebra()->dim();
  }
  return t;
}

ExclusionReport check_exclusion(const ExclusionWitness& w, const Subspace& h, const Subspace& m,
                                const matrixrep::MatrixRep& rep, double numeric_tol) {
  ExclusionReport r;
  if (w.element.is_zero()) {
    r.detail = "witness element is zero";
    return r;
  }
  if (w.kind == WitnessKind::DirectIntersection) {
    if (!h.contains(w.element)) {
      r.detail = "element is not in h";
      return r;
    }
    if (!m.contains(w.element)) {
      r.detail = "element is not in m";
      return r;
    }
    r.excludes = true;
    r.exact = true;
    return r;
  }
  if (!h.contains(w.element)) {
    r.detail = "conjugacy witness element is not in h";
    return r;
  }
  if (!m.contains(w.target)) {
    r.detail = "stated target is not in m";
    return r;
  }
  auto chk = matrixrep::verify_conjugacy(rep, w.group_exact, w.group_is_exact, w.group_numeric,
                                         w.element, w.target, m, numeric_tol);
  r.excludes = chk.ok;
  r.exact = chk.exact;
  r.numeric_flagged = chk.ok && !chk.exact;
  r.residual = chk.residual;
  r.direction = chk.direction;
  r.scale = chk.scale;
  r.detail = chk.detail;
  return r;
}

}  // namespace bolcat::involution
