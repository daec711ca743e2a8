#include "bolcat/liealg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bolcat::liealg {

namespace {

void require_same_algebra(const Element& x, const Element& y) {
  if (x.alg != y.alg)
    throw std::invalid_argument("elements of different algebras");
}

}  // namespace

LieAlgebra::Ptr LieAlgebra::from_table(std::string name, std::vector<std::string> labels,
                                       const std::vector<BracketEntry>& entries) {
  auto a = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  a->name_ = std::move(name);
  a->dim_ = int(labels.size());
  a->labels_ = std::move(labels);
  const int n = a->dim_;
  if (n <= 0) throw std::invalid_argument("algebra needs a positive dimension");
  a->table_.assign(size_t(n) * n, RatVec(n, Rat(0)));
  for (const auto& e : entries) {
    if (e.i < 1 || e.i > n || e.j < 1 || e.j > n || e.k < 1 || e.k > n)
      throw std::invalid_argument("bracket index out of range in " + a->name_);
    if (e.i == e.j) throw std::invalid_argument("diagonal bracket [e_i,e_i] in " + a->name_);
    int i = e.i - 1, j = e.j - 1, k = e.k - 1;
    a->table_[size_t(i) * n + j][k] += e.c;
    a->table_[size_t(j) * n + i][k] -= e.c;
  }
  return a;
}

LieAlgebra::Ptr LieAlgebra::direct_sum(const std::vector<Ptr>& input) {
  if (input.empty()) throw std::invalid_argument("empty direct sum");
  // Flatten so that factors() always lists atoms.
  std::vector<Ptr> factors;
  for (const auto& f : input) {
    if (f->factors().empty())
      factors.push_back(f);
    else
      factors.insert(factors.end(), f->factors().begin(), f->factors().end());
  }
  if (factors.size() == 1) return factors[0];
  auto a = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  std::string name;
  int n = 0;
  for (const auto& f : factors) {
    if (!name.empty()) name += "_";
    name += f->name();
    a->offsets_.push_back(n);
    n += f->dim();
  }
  a->name_ = name;
  a->dim_ = n;
  a->factors_ = factors;
  for (size_t fi = 0; fi < factors.size(); ++fi) {
    for (const auto& l : factors[fi]->labels()) {
      std::string lab = "(";
      for (size_t g = 0; g < factors.size(); ++g) {
        if (g) lab += ",";
        lab += (g == fi) ? l : "0";
      }
      lab += ")";
      a->labels_.push_back(lab);
    }
  }
  a->table_.assign(size_t(n) * n, RatVec(n, Rat(0)));
  for (size_t fi = 0; fi < factors.size(); ++fi) {
    const auto& f = factors[fi];
    int off = a->offsets_[fi];
    for (int i = 0; i < f->dim(); ++i)
      for (int j = 0; j < f->dim(); ++j) {
        const RatVec& v = f->bracket_basis(i, j);
        RatVec& t = a->table_[size_t(off + i) * n + (off + j)];
        for (int k = 0; k < f->dim(); ++k) t[off + k] = v[k];
      }
  }
  return a;
}

Element::Element(LieAlgebra::Ptr a, RatVec coeffs) : alg(std::move(a)), c(std::move(coeffs)) {
  if (int(c.size()) != alg->dim())
    throw std::invalid_argument("coefficient vector length != algebra dimension");
}

Element Element::basis(const LieAlgebra::Ptr& a, int i) {
  RatVec v(a->dim(), Rat(0));
  v[i] = 1;
  return Element(a, std::move(v));
}

Element Element::zero(const LieAlgebra::Ptr& a) { return Element(a, RatVec(a->dim(), Rat(0))); }

bool Element::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rat& q) { return q == 0; });
}

Element operator+(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  RatVec v(x.c);
  for (size_t i = 0; i < v.size(); ++i) v[i] += y.c[i];
  return Element(x.alg, std::move(v));
}

Element operator-(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  RatVec v(x.c);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= y.c[i];
  return Element(x.alg, std::move(v));
}

Element operator*(const Rat& s, const Element& x) {
  RatVec v(x.c);
  for (auto& q : v) q *= s;
  return Element(x.alg, std::move(v));
}

bool operator==(const Element& x, const Element& y) { return x.alg == y.alg && x.c == y.c; }

Element bracket(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  const int n = x.alg->dim();
  RatVec out(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (x.c[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y.c[j] == 0) continue;
      Rat f = x.c[i] * y.c[j];
      const RatVec& t = x.alg->bracket_basis(i, j);
      for (int k = 0; k < n; ++k)
        if (t[k] != 0) out[k] += f * t[k];
    }
  }
  return Element(x.alg, std::move(out));
}

Subspace Subspace::span(const LieAlgebra::Ptr& a, const std::vector<Element>& gens) {
  RatMat rows(0, a->dim());
  for (const auto& g : gens) {
    if (g.alg != a) throw std::invalid_argument("generator from a different algebra");
    rows.append_row(g.c);
  }
  return span_rows(a, rows);
}

Subspace Subspace::span_rows(const LieAlgebra::Ptr& a, const RatMat& rows) {
  Subspace s;
  s.alg_ = a;
  s.basis_ = rows.rows() ? rref(rows) : RatMat(0, a->dim());
  return s;
}

Subspace Subspace::whole(const LieAlgebra::Ptr& a) {
  return span_rows(a, RatMat::identity(a->dim()));
}

Subspace Subspace::zero(const LieAlgebra::Ptr& a) { return span_rows(a, RatMat(0, a->dim())); }

Element Subspace::basis_element(int i) const { return Element(alg_, basis_.row(i)); }

bool Subspace::contains(const Element& x) const {
  if (x.alg != alg_) throw std::invalid_argument("element from a different algebra");
  RatMat stacked = basis_;
  stacked.append_row(x.c);
  return bolcat::rank(stacked) == rank();
}

bool Subspace::contains(const Subspace& other) const {
  RatMat stacked = basis_;
  for (int i = 0; i < other.rank(); ++i) stacked.append_row(other.basis().row(i));
  return bolcat::rank(stacked) == rank();
}

std::vector<JacobiViolation> verify_jacobi(const LieAlgebra::Ptr& a) {
  std::vector<JacobiViolation> bad;
  const int n = a->dim();
  for (int i = 0; i < n; ++i) {
    Element ei = Element::basis(a, i);
    for (int j = i + 1; j < n; ++j) {
      Element ej = Element::basis(a, j);
      for (int k = j + 1; k < n; ++k) {
        Element ek = Element::basis(a, k);
        Element s = bracket(ei, bracket(ej, ek)) + bracket(ej, bracket(ek, ei)) +
                    bracket(ek, bracket(ei, ej));
        if (!s.is_zero()) bad.push_back({i, j, k});
      }
    }
  }
  return bad;
}

RatMat ad_matrix(const Element& x) {
  const int n = x.alg->dim();
  RatMat m(n, n);
  for (int j = 0; j < n; ++j) {
    Element col = bracket(x, Element::basis(x.alg, j));
    for (int i = 0; i < n; ++i) m(i, j) = col.c[i];
  }
  return m;
}

Rat killing_form(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  RatMat p = ad_matrix(x) * ad_matrix(y);
  Rat tr(0);
  for (int i = 0; i < p.rows(); ++i) tr += p(i, i);
  return tr;
}

namespace {
void require_sl2r(const Element& x) {
  if (x.alg->name() != "sl2r" || x.alg->dim() != 3)
    throw std::invalid_argument("operation defined on sl2r only");
}
}  // namespace

Rat sl2_normalized_form(const Element& x, const Element& y) {
  require_sl2r(x);
  return killing_form(x, y) / 8;
}

Sl2Class classify_sl2_element(const Element& x) {
  require_sl2r(x);
  if (x.is_zero()) return Sl2Class::Zero;
  Rat k = sl2_normalized_form(x, x);
  if (k < 0) return Sl2Class::Elliptic;
  if (k == 0) return Sl2Class::Parabolic;
  return Sl2Class::Hyperbolic;
}

const char* to_string(Sl2Class c) {
  switch (c) {
    case Sl2Class::Zero: return "Zero";
    case Sl2Class::Elliptic: return "Elliptic";
    case Sl2Class::Parabolic: return "Parabolic";
    case Sl2Class::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

Subspace span_closure(const std::vector<Element>& gens) {
  if (gens.empty()) throw std::invalid_argument("span_closure needs generators");
  auto alg = gens[0].alg;
  Subspace cur = Subspace::span(alg, gens);
  for (;;) {
    RatMat rows = cur.basis();
    for (int i = 0; i < cur.rank(); ++i)
      for (int j = i + 1; j < cur.rank(); ++j)
        rows.append_row(bracket(cur.basis_element(i), cur.basis_element(j)).c);
    Subspace next = Subspace::span_rows(alg, rows);
    if (next.rank() == cur.rank()) return cur;
    cur = next;
  }
}

bool is_subalgebra(const Subspace& s) {
  for (int i = 0; i < s.rank(); ++i)
    for (int j = i + 1; j < s.rank(); ++j)
      if (!s.contains(bracket(s.basis_element(i), s.basis_element(j)))) return false;
  return true;
}

bool is_ideal(const Subspace& s) { return is_ideal(s, Subspace::whole(s.algebra())); }

bool is_ideal(const Subspace& s, const Subspace& ambient) {
  for (int i = 0; i < ambient.rank(); ++i)
    for (int j = 0; j < s.rank(); ++j)
      if (!s.contains(bracket(ambient.basis_element(i), s.basis_element(j)))) return false;
  return true;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.algebra() != b.algebra()) throw std::invalid_argument("subspaces of different algebras");
  const int n = a.algebra()->dim();
  // x in a cap b  <=>  x = u^T A = v^T B; solve [A^T | -B^T] null space.
  RatMat sys(n, a.rank() + b.rank());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < a.rank(); ++j) sys(i, j) = a.basis()(j, i);
    for (int j = 0; j < b.rank(); ++j) sys(i, a.rank() + j) = -b.basis()(j, i);
  }
  RatMat ns = nullspace(sys);
  RatMat rows(0, n);
  for (int r = 0; r < ns.rows(); ++r) {
    RatVec x(n, Rat(0));
    for (int j = 0; j < a.rank(); ++j)
      for (int i = 0; i < n; ++i) x[i] += ns(r, j) * a.basis()(j, i);
    rows.append_row(x);
  }
  return Subspace::span_rows(a.algebra(), rows);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.algebra() != b.algebra()) throw std::invalid_argument("subspaces of different algebras");
  RatMat rows = a.basis();
  for (int i = 0; i < b.rank(); ++i) rows.append_row(b.basis().row(i));
  return Subspace::span_rows(a.algebra(), rows);
}

Subspace bracket_space(const Subspace& a, const Subspace& b) {
  RatMat rows(0, a.algebra()->dim());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < b.rank(); ++j)
      rows.append_row(bracket(a.basis_element(i), b.basis_element(j)).c);
  return Subspace::span_rows(a.algebra(), rows);
}

Subspace project_factor(const Subspace& s, int factor) {
  const auto& alg = s.algebra();
  const auto& factors = alg->factors();
  if (factor < 0 || factor >= int(factors.size()))
    throw std::invalid_argument("factor index out of range");
  int off = alg->factor_offsets()[factor];
  int d = factors[factor]->dim();
  RatMat rows(0, d);
  for (int i = 0; i < s.rank(); ++i) {
    RatVec v(d);
    for (int j = 0; j < d; ++j) v[j] = s.basis()(i, off + j);
    rows.append_row(v);
  }
  return Subspace::span_rows(factors[factor], rows);
}

AlgebraSource parse_algebra_text(const std::string& text) {
  AlgebraSource src;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "group") {
      ls >> src.name;
    } else if (key == "dim") {
      ls >> src.dim;
    } else if (key == "labels") {
      std::string l;
      while (ls >> l) src.labels.push_back(l);
    } else if (key == "factors") {
      std::string f;
      while (ls >> f) src.factor_names.push_back(f);
    } else if (key == "bracket") {
      LieAlgebra::BracketEntry e;
      std::string c;
      if (!(ls >> e.i >> e.j >> e.k >> c)) throw ParseError("bad bracket line: " + line);
      e.c = parse_rat(c);
      src.brackets.push_back(e);
    }
  }
  if (src.name.empty()) throw ParseError("algebra text without a group line");
  return src;
}

LieAlgebra::Ptr build_algebra(const AlgebraSource& src) {
  if (src.is_product())
    throw std::invalid_argument("build_algebra cannot resolve factors; use the catalog loader");
  if (src.dim != int(src.labels.size())) throw ParseError(src.name + ": dim != label count");
  return LieAlgebra::from_table(src.name, src.labels, src.brackets);
}

}  // namespace bolcat::liealg
