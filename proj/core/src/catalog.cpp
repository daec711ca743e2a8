#include "bolcat/catalog.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bolcat::catalog {

using involution::ExclusionWitness;
using involution::WitnessKind;
using liealg::Element;
using loopcore::Loop;
using matrixrep::MatrixRep;

Rat ParamLin::eval(const std::map<std::string, Rat>& values) const {
  Rat v = c0;
  for (const auto& [name, c] : coef) {
    auto it = values.find(name);
    if (it == values.end()) throw CatalogError("unbound parameter " + name);
    v += c * it->second;
  }
  return v;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw CatalogError(where + ": " + what);
}

bool is_param_char(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

// term := [sign] [rational] [param], e.g. "-1", "r", "-3/2b", "1+b".
ParamLin parse_paramlin(const std::string& text, const std::string& where) {
  ParamLin out;
  out.c0 = 0;
  size_t pos = 0;
  if (text.empty()) fail(where, "empty coefficient");
  while (pos < text.size()) {
    size_t start = pos;
    if (text[pos] == '+' || text[pos] == '-') ++pos;
    size_t numstart = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
      ++pos;
    Rat coef;
    bool have_num = pos > numstart;
    if (have_num)
      coef = parse_rat(text.substr(start, pos - start));
    else
      coef = text[start] == '-' ? -1 : 1;
    std::string param;
    while (pos < text.size() && is_param_char(text[pos])) param += text[pos++];
    if (param.empty()) {
      if (!have_num) fail(where, "bad coefficient: " + text);
      out.c0 += coef;
    } else {
      out.coef[param] += coef;
    }
  }
  for (auto it = out.coef.begin(); it != out.coef.end();)
    it = it->second == 0 ? out.coef.erase(it) : std::next(it);
  return out;
}

std::string rest_of(std::istringstream& ls) {
  std::string rest;
  std::getline(ls, rest);
  size_t b = rest.find_first_not_of(" \t");
  return b == std::string::npos ? "" : rest.substr(b);
}

}  // namespace

Subspace NamedSpace::instance(const LieAlgebra::Ptr& alg, const std::vector<Rat>& sample) const {
  std::map<std::string, Rat> vals;
  for (size_t i = 0; i < params.size(); ++i) vals[params[i]] = sample.at(i);
  RatMat m(0, alg->dim());
  for (const auto& row : rows) {
    RatVec v;
    for (const auto& e : row) v.push_back(e.eval(vals));
    m.append_row(v);
  }
  return Subspace::span_rows(alg, m);
}

Subspace NamedSpace::constant_instance(const LieAlgebra::Ptr& alg) const {
  if (parametric()) throw CatalogError(name + " is parametric");
  return instance(alg, {});
}

const CatalogEntry& Catalog::entry(const std::string& tag) const {
  for (const auto& e : entries)
    if (e.group_tag == tag) return e;
  throw CatalogError("no catalog entry " + tag);
}

namespace {

struct RawEntry {
  CatalogEntry entry;
  liealg::AlgebraSource algebra_src;
  std::vector<std::array<std::string, 3>> iwasawa;  // (k, a, n) space names
};

RawEntry parse_entry_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open " + path.string());
  RawEntry raw;
  CatalogEntry& e = raw.entry;
  std::string where = path.filename().string();
  std::string line;
  std::vector<std::string> algebra_lines;

  enum class Sec { Top, Space, Involution, Witness, Fact, Triple };
  Sec sec = Sec::Top;
  NamedSpace cur_space;
  NamedInvolution cur_inv;
  std::vector<RatVec> cur_inv_rows;
  NamedWitness cur_wit;
  std::vector<std::vector<std::string>> cur_wit_block;  // textual rows of the open block
  int cur_wit_block_n = 0;
  bool cur_wit_block_id = false;
  MetadataFact cur_fact;
  Triple cur_triple;

  auto close_witness_block = [&]() {
    if (cur_wit_block_n == 0) return;
    CRatMat ge(cur_wit_block_n, cur_wit_block_n);
    matrixrep::Mat gn(cur_wit_block_n, cur_wit_block_n);
    bool exact = true;
    if (cur_wit_block_id) {
      ge = CRatMat::identity(cur_wit_block_n);
      gn = matrixrep::Mat::Identity(cur_wit_block_n, cur_wit_block_n);
    } else {
      if (int(cur_wit_block.size()) != cur_wit_block_n)
        fail(where, "witness block row count mismatch in " + cur_wit.name);
      for (int i = 0; i < cur_wit_block_n; ++i)
        for (int j = 0; j < cur_wit_block_n; ++j) {
          SurdEntry s = parse_surd(cur_wit_block[i][j]);
          if (!s.exact()) exact = false;
          ge(i, j) = s.gauss();
          gn(i, j) = s.approx();
        }
    }
    cur_wit.group_exact.push_back(ge);
    cur_wit.group_numeric.push_back(gn);
    if (!exact) cur_wit.exact = false;
    cur_wit_block.clear();
    cur_wit_block_n = 0;
    cur_wit_block_id = false;
  };

  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;

    if (sec == Sec::Top) {
      if (key == "group" || key == "dim" || key == "labels" || key == "factors" ||
          key == "bracket") {
        algebra_lines.push_back(line);
      } else if (key == "note") {
        e.notes.push_back(rest_of(ls));
      } else if (key == "iwasawa") {
        std::array<std::string, 3> kan;
        if (!(ls >> kan[0] >> kan[1] >> kan[2])) fail(where, "iwasawa needs k a n space names");
        raw.iwasawa.push_back(kan);
      } else if (key == "space") {
        cur_space = NamedSpace{};
        ls >> cur_space.name;
        if (cur_space.name.empty()) fail(where, "space without a name");
        std::vector<std::pair<std::string, std::vector<Rat>>> decls;
        std::string w;
        while (ls >> w) {
          if (w == "subalg") {
            cur_space.subalgebra = true;
          } else if (w == "param") {
            std::string pname;
            if (!(ls >> pname)) fail(where, "param needs a name");
            decls.emplace_back(pname, std::vector<Rat>{});
          } else if (!decls.empty()) {
            decls.back().second.push_back(parse_rat(w));
          } else {
            fail(where, "unknown space attribute " + w);
          }
        }
        cur_space.samples = {{}};
        for (auto& [pname, vals] : decls) {
          if (vals.empty()) fail(where, "param " + pname + " needs sample values");
          cur_space.params.push_back(pname);
          std::vector<std::vector<Rat>> prod;
          for (const auto& s : cur_space.samples)
            for (const Rat& v : vals) {
              auto t = s;
              t.push_back(v);
              prod.push_back(t);
            }
          cur_space.samples = prod;
        }
        if (decls.empty()) cur_space.samples.clear();
        sec = Sec::Space;
      } else if (key == "involution") {
        cur_inv = NamedInvolution{};
        cur_inv_rows.clear();
        ls >> cur_inv.name;
        sec = Sec::Involution;
      } else if (key == "witness") {
        cur_wit = NamedWitness{};
        cur_wit.exact = true;
        ls >> cur_wit.name;
        sec = Sec::Witness;
      } else if (key == "fact") {
        cur_fact = MetadataFact{};
        ls >> cur_fact.id;
        sec = Sec::Fact;
      } else if (key == "triple") {
        cur_triple = Triple{};
        if (!(ls >> cur_triple.m_name >> cur_triple.h_name))
          fail(where, "triple needs m and h names");
        sec = Sec::Triple;
      } else {
        fail(where, "unknown directive " + key);
      }
      continue;
    }

    if (key == "end") {
      switch (sec) {
        case Sec::Space:
          if (cur_space.rows.empty()) fail(where, "space " + cur_space.name + " has no vectors");
          e.spaces[cur_space.name] = cur_space;
          break;
        case Sec::Involution:
          cur_inv.map = RatMat::from_rows(cur_inv_rows);
          e.involutions.push_back(cur_inv);
          break;
        case Sec::Witness:
          close_witness_block();
          e.witnesses[cur_wit.name] = cur_wit;
          break;
        case Sec::Fact:
          e.facts[cur_fact.id] = cur_fact;
          break;
        case Sec::Triple:
          e.triples.push_back(cur_triple);
          break;
        default:
          break;
      }
      sec = Sec::Top;
      continue;
    }

    switch (sec) {
      case Sec::Space: {
        if (key != "vec") fail(where, "space " + cur_space.name + ": expected vec/end");
        std::vector<ParamLin> row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_paramlin(tok, where + ":" + cur_space.name));
        cur_space.rows.push_back(std::move(row));
        break;
      }
      case Sec::Involution: {
        if (key == "plus") {
          ls >> cur_inv.plus_space;
        } else if (key == "minus") {
          ls >> cur_inv.minus_space;
        } else if (key == "cite") {
          cur_inv.cite = rest_of(ls);
        } else if (key == "diag") {
          std::vector<Rat> d;
          std::string tok;
          while (ls >> tok) d.push_back(parse_rat(tok));
          cur_inv_rows.clear();
          for (size_t i = 0; i < d.size(); ++i) {
            RatVec r(d.size(), Rat(0));
            r[i] = d[i];
            cur_inv_rows.push_back(r);
          }
        } else if (key == "row") {
          RatVec r;
          std::string tok;
          while (ls >> tok) r.push_back(parse_rat(tok));
          cur_inv_rows.push_back(r);
        } else {
          fail(where, "involution " + cur_inv.name + ": unknown key " + key);
        }
        break;
      }
      case Sec::Witness: {
        if (key == "element" || key == "target") {
          std::vector<ParamLin> row;
          std::string tok;
          while (ls >> tok) row.push_back(parse_paramlin(tok, where + ":" + cur_wit.name));
          (key == "element" ? cur_wit.element_rows : cur_wit.target_rows).push_back(row);
        } else if (key == "block") {
          close_witness_block();
          ls >> cur_wit_block_n;
        } else if (key == "blockid") {
          close_witness_block();
          ls >> cur_wit_block_n;
          cur_wit_block_id = true;
          close_witness_block();
        } else {
          // a row of the open block; `key` is its first entry
          std::vector<std::string> row{key};
          std::string tok;
          while (ls >> tok) row.push_back(tok);
          if (int(row.size()) != cur_wit_block_n)
            fail(where, "witness " + cur_wit.name + ": row width mismatch");
          cur_wit_block.push_back(row);
        }
        break;
      }
      case Sec::Fact: {
        if (key == "text")
          cur_fact.text = rest_of(ls);
        else if (key == "cite")
          cur_fact.cite = rest_of(ls);
        else
          fail(where, "fact " + cur_fact.id + ": unknown key " + key);
        break;
      }
      case Sec::Triple: {
        if (key == "expect") {
          ls >> cur_triple.expect;
        } else if (key == "witness") {
          std::string w;
          while (ls >> w) cur_triple.witness_names.push_back(w);
        } else if (key == "reproducer") {
          ls >> cur_triple.reproducer;
          std::string w;
          while (ls >> w)
            if (w == "factor") ls >> cur_triple.projection_factor;
        } else if (key == "fact") {
          ls >> cur_triple.fact_id;
        } else if (key == "cite") {
          cur_triple.cite = rest_of(ls);
        } else if (key == "loop") {
          LoopSpec spec;
          std::string kind;
          ls >> kind;
          if (kind == "hyperbolic") {
            spec.kind = LoopSpec::Kind::Hyperbolic;
          } else if (kind == "scheerer") {
            spec.kind = LoopSpec::Kind::Scheerer;
            std::string w;
            while (ls >> w) {
              if (w == "base") continue;
              if (w == "hom") {
                std::string hk;
                ls >> hk;
                if (hk == "trivial")
                  spec.hom = loopcore::HomSpec::Kind::Trivial;
                else if (hk == "angles")
                  spec.hom = loopcore::HomSpec::Kind::Angles;
                else if (hk == "su2cover")
                  spec.hom = loopcore::HomSpec::Kind::Su2Cover;
                else
                  fail(where, "unknown hom kind " + hk);
              } else {
                spec.base_blocks.push_back(std::atoi(w.c_str()));
              }
            }
          } else {
            fail(where, "unknown loop kind " + kind);
          }
          cur_triple.loop = spec;
        } else if (key == "homvec") {
          if (!cur_triple.loop) fail(where, "homvec before loop line");
          std::vector<Rat> v;
          std::string tok;
          while (ls >> tok) v.push_back(parse_rat(tok));
          cur_triple.loop->hom_vectors.push_back(v);
        } else {
          fail(where, "triple " + cur_triple.id() + ": unknown key " + key);
        }
        break;
      }
      default:
        break;
    }
  }
  if (sec != Sec::Top) fail(where, "unterminated section");
  std::string algtext;
  for (const auto& l : algebra_lines) algtext += l + "\n";
  raw.algebra_src = liealg::parse_algebra_text(algtext);
  e.group_tag = raw.algebra_src.name;
  return raw;
}

void validate_entry(CatalogEntry& e, const std::vector<std::array<std::string, 3>>& iwasawa) {
  const std::string where = e.group_tag;
  auto bad = liealg::verify_jacobi(e.algebra);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "Jacobi fails on basis triple (" << e.algebra->labels()[bad[0].i] << ", "
       << e.algebra->labels()[bad[0].j] << ", " << e.algebra->labels()[bad[0].k] << ")";
    fail(where, os.str());
  }
  auto rr = matrixrep::rep_verify(*e.rep);
  if (!rr.ok())
    fail(where, "matrix realization check failed: " +
                    (rr.failures.empty() ? std::string("?") : rr.failures.front()));
  for (const auto& [name, sp] : e.spaces) {
    for (const auto& row : sp.rows)
      if (int(row.size()) != e.algebra->dim()) fail(where, "space " + name + " row width");
    if (sp.subalgebra) {
      auto samples = sp.parametric() ? sp.samples : std::vector<std::vector<Rat>>{{}};
      for (const auto& s : samples)
        if (!liealg::is_subalgebra(sp.instance(e.algebra, s)))
          fail(where, "space " + name + " is not a subalgebra at a sampled parameter");
    }
  }
  for (const auto& inv : e.involutions) {
    if (auto err = involution::validate_involution(e.algebra, inv.map); !err.empty())
      fail(where, "involution " + inv.name + ": " + err);
    auto split = involution::eigensplit({e.algebra, inv.map});
    auto pit = e.spaces.find(inv.plus_space);
    auto mit = e.spaces.find(inv.minus_space);
    if (pit == e.spaces.end() || mit == e.spaces.end())
      fail(where, "involution " + inv.name + " references unknown spaces");
    if (!(split.plus == pit->second.constant_instance(e.algebra)))
      fail(where, "involution " + inv.name + ": fixed space differs from " + inv.plus_space);
    if (!(split.minus == mit->second.constant_instance(e.algebra)))
      fail(where, "involution " + inv.name + ": (-1)-eigenspace differs from " + inv.minus_space);
    if (!involution::graded_relations_hold(split))
      fail(where, "involution " + inv.name + ": graded relations fail");
    if (!involution::is_lie_triple_system(split.minus))
      fail(where, "involution " + inv.name + ": eigenspace is not a Lie triple system");
  }
  for (const auto& [k, a, n] : iwasawa) {
    auto ks = e.spaces.at(k).constant_instance(e.algebra);
    auto as = e.spaces.at(a).constant_instance(e.algebra);
    auto ns = e.spaces.at(n).constant_instance(e.algebra);
    if (liealg::sum(liealg::sum(ks, as), ns).rank() != e.algebra->dim())
      fail(where, "iwasawa parts do not span");
    for (int i = 0; i < as.rank(); ++i)
      for (int j = i + 1; j < as.rank(); ++j)
        if (!liealg::bracket(as.basis_element(i), as.basis_element(j)).is_zero())
          fail(where, "iwasawa a-part is not abelian");
    for (int i = 0; i < ns.rank(); ++i) {
      RatMat ad = liealg::ad_matrix(ns.basis_element(i));
      RatMat p = ad;
      bool nil = false;
      for (int k2 = 1; k2 <= e.algebra->dim(); ++k2) {
        if (p.is_zero()) {
          nil = true;
          break;
        }
        p = p * ad;
      }
      if (!nil) fail(where, "iwasawa n-part basis element is not ad-nilpotent");
    }
    RatMat gram(ks.rank(), ks.rank());
    for (int i = 0; i < ks.rank(); ++i)
      for (int j = 0; j < ks.rank(); ++j)
        gram(i, j) = liealg::killing_form(ks.basis_element(i), ks.basis_element(j));
    for (int lead = 1; lead <= ks.rank(); ++lead) {
      RatMat sub(lead, lead);
      for (int i = 0; i < lead; ++i)
        for (int j = 0; j < lead; ++j) sub(i, j) = gram(i, j);
      Rat d = det(sub);
      bool ok = (lead % 2 == 1) ? d < 0 : d > 0;
      if (!ok) fail(where, "iwasawa k-part is not compact (trace form not negative definite)");
    }
  }
  for (const auto& t : e.triples) {
    if (!e.spaces.count(t.m_name) || !e.spaces.count(t.h_name))
      fail(where, "triple " + t.id() + " references unknown spaces");
    if (t.expect != "loop" && t.expect != "intersection" && t.expect != "conjugacy" &&
        t.expect != "cosetdoubling" && t.expect != "divergence" && t.expect != "metadata")
      fail(where, "triple " + t.id() + " has unknown expectation " + t.expect);
    for (const auto& wn : t.witness_names)
      if (!e.witnesses.count(wn)) fail(where, "triple " + t.id() + " references witness " + wn);
    if (!t.fact_id.empty() && !e.facts.count(t.fact_id))
      fail(where, "triple " + t.id() + " references fact " + t.fact_id);
    if (t.expect == "loop" && !t.loop) fail(where, "triple " + t.id() + " lacks a loop spec");
  }
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("BOLCAT_DATA")) return env;
#ifdef BOLCAT_SOURCE_DATA_DIR
  return std::filesystem::path(BOLCAT_SOURCE_DATA_DIR);
#else
  return "data";
#endif
}

Catalog load_catalog(const std::filesystem::path& dir) {
  std::filesystem::path cdir = dir / "catalog";
  if (!std::filesystem::is_directory(cdir))
    throw CatalogError("no catalog directory at " + cdir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& p : std::filesystem::directory_iterator(cdir))
    if (p.path().extension() == ".cat") files.push_back(p.path());
  if (files.empty()) throw CatalogError("catalog directory " + cdir.string() + " is empty");
  std::sort(files.begin(), files.end());

  std::vector<RawEntry> raws;
  for (const auto& f : files) raws.push_back(parse_entry_file(f));

  std::map<std::string, LieAlgebra::Ptr> built;
  for (auto& r : raws)
    if (!r.algebra_src.is_product())
      built[r.algebra_src.name] = liealg::build_algebra(r.algebra_src);
  for (auto& r : raws)
    if (r.algebra_src.is_product()) {
      std::vector<LieAlgebra::Ptr> fs;
      for (const auto& fn : r.algebra_src.factor_names) {
        auto it = built.find(fn);
        if (it == built.end()) throw CatalogError(r.algebra_src.name + ": unknown factor " + fn);
        fs.push_back(it->second);
      }
      built[r.algebra_src.name] = LieAlgebra::direct_sum(fs);
    }

  Catalog cat;
  for (auto& r : raws) {
    r.entry.algebra = built[r.algebra_src.name];
    r.entry.dim = r.entry.algebra->dim();
    r.entry.rep = MatrixRep::for_algebra(r.entry.algebra);
    validate_entry(r.entry, r.iwasawa);
    cat.entries.push_back(std::move(r.entry));
  }
  std::sort(cat.entries.begin(), cat.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.dim, a.group_tag) < std::tie(b.dim, b.group_tag);
  });
  return cat;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::GlobalBruckLoop: return "GlobalBruckLoop";
    case Status::ExcludedByIntersection: return "ExcludedByIntersection";
    case Status::ExcludedByConjugacy: return "ExcludedByConjugacy";
    case Status::ExcludedByCosetDoubling: return "ExcludedByCosetDoubling";
    case Status::ExcludedByDivergence: return "ExcludedByDivergence";
    case Status::ExcludedByMetadataFact: return "ExcludedByMetadataFact";
  }
  return "?";
}

namespace {

std::vector<std::vector<Rat>> space_samples(const NamedSpace& sp) {
  return sp.parametric() ? sp.samples : std::vector<std::vector<Rat>>{{}};
}

std::map<std::string, Rat> bind_params(const NamedSpace& sp, const std::vector<Rat>& sample) {
  std::map<std::string, Rat> vals;
  for (size_t i = 0; i < sp.params.size(); ++i) vals[sp.params[i]] = sample.at(i);
  return vals;
}

Element eval_vector(const LieAlgebra::Ptr& alg, const std::vector<ParamLin>& row,
                    const std::map<std::string, Rat>& vals) {
  RatVec v;
  for (const auto& p : row) v.push_back(p.eval(vals));
  return Element(alg, v);
}

std::string describe_element(const Element& x) {
  std::string s;
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (x.c[i] != 1) s += bolcat::to_string(x.c[i]) + "*";
    s += x.alg->labels()[i];
  }
  return s.empty() ? "0" : s;
}

bool is_eigensplit_tangent(const CatalogEntry& e, const std::string& m_name) {
  for (const auto& inv : e.involutions)
    if (inv.minus_space == m_name) return true;
  return false;
}

// Exact applicability of the divergence argument: the stabilizer projects
// into the triangular algebra <e1, e2+e3> of an sl2r factor while the
// tangent's projection contains the full <e1, e2> sheet.
bool divergence_applies(const CatalogEntry& e, const Subspace& h, const Subspace& m, int factor) {
  LieAlgebra::Ptr fa;
  Subspace ph, pm;
  if (e.algebra->factors().empty()) {
    if (factor != 0) return false;
    fa = e.algebra;
    ph = h;
    pm = m;
  } else {
    if (factor < 0 || factor >= int(e.algebra->factors().size())) return false;
    fa = e.algebra->factors()[factor];
    ph = liealg::project_factor(h, factor);
    pm = liealg::project_factor(m, factor);
  }
  if (fa->name() != "sl2r") return false;
  RatMat l2rows(0, 3);
  l2rows.append_row({Rat(1), Rat(0), Rat(0)});
  l2rows.append_row({Rat(0), Rat(1), Rat(1)});
  Subspace l2 = Subspace::span_rows(fa, l2rows);
  RatMat mrows(0, 3);
  mrows.append_row({Rat(1), Rat(0), Rat(0)});
  mrows.append_row({Rat(0), Rat(1), Rat(0)});
  Subspace sheet = Subspace::span_rows(fa, mrows);
  return l2.contains(ph) && pm.contains(sheet);
}

struct ReproCache {
  std::map<std::string, bool> results;

  bool run(const std::string& tag, const Catalog& cat) {
    auto it = results.find(tag);
    if (it != results.end()) return it->second;
    if (tag == "lemma7") {
      bool ok = loopcore::reproduce_lemma7(cat.entry("sl2r").rep).pass;
      results[tag] = ok;
      return ok;
    }
    if (tag == "prop12_h2" || tag == "prop12_h3") {
      bool r = loopcore::reproduce_prop12(cat.entry("sl3r").rep).pass;
      results["prop12_h2"] = results["prop12_h3"] = r;
      return r;
    }
    if (tag == "prop19_h5" || tag == "prop19_h6" || tag == "prop19_h8") {
      bool r = loopcore::reproduce_prop19(cat.entry("sl2c_sl2r").rep).pass;
      results["prop19_h5"] = results["prop19_h6"] = results["prop19_h8"] = r;
      return r;
    }
    throw CatalogError("unknown reproducer " + tag);
  }
};

}  // namespace

loopcore::Loop::Ptr build_loop(const CatalogEntry& e, const Triple& t) {
  if (!t.loop) throw CatalogError("triple " + t.id() + " has no loop spec");
  const auto& sp = e.spaces.at(t.m_name);
  Subspace m = sp.constant_instance(e.algebra);
  std::string name = e.group_tag + ":" + t.id();
  if (t.loop->kind == LoopSpec::Kind::Hyperbolic) return Loop::hyperbolic(name, e.rep, m);
  loopcore::HomSpec hom;
  hom.kind = t.loop->hom;
  if (hom.kind == loopcore::HomSpec::Kind::Angles) {
    std::vector<int> fiber_blocks;
    for (int i = 0; i < e.rep->block_count(); ++i)
      if (std::find(t.loop->base_blocks.begin(), t.loop->base_blocks.end(), i) ==
          t.loop->base_blocks.end())
        fiber_blocks.push_back(i);
    for (const auto& hv : t.loop->hom_vectors) {
      std::vector<matrixrep::Mat> gens;
      size_t pos = 0;
      for (int f : fiber_blocks) {
        const auto& b = e.rep->blocks()[f];
        matrixrep::Mat g = matrixrep::Mat::Zero(b.n, b.n);
        for (int k = 0; k < b.count; ++k, ++pos) {
          double c = to_double(hv.at(pos));
          if (c != 0) g += c * e.rep->rep(Element::basis(e.algebra, b.offset + k))[f];
        }
        gens.push_back(g);
      }
      if (pos != hv.size()) throw CatalogError("homvec length mismatch in " + t.id());
      hom.angle_gens.push_back(gens);
    }
  }
  return Loop::scheerer(name, e.rep, m, t.loop->base_blocks, hom);
}

std::vector<Verdict> run_classification(const Catalog& cat, int max_dim,
                                        const ClassifyOptions& opts) {
  if (max_dim > 9) throw CatalogError("max_dim exceeds the catalog range (9)");
  std::vector<Verdict> out;
  ReproCache repro;
  for (const auto& e : cat.entries) {
    if (e.dim > max_dim) continue;
    for (const auto& t : e.triples) {
      const NamedSpace& msp = e.spaces.at(t.m_name);
      const NamedSpace& hsp = e.spaces.at(t.h_name);
      if (msp.parametric())
        throw CatalogError(t.id() + ": parametric tangent spaces unsupported");
      Subspace m = msp.constant_instance(e.algebra);
      auto samples = space_samples(hsp);

      Verdict v;
      v.group = e.group_tag;
      v.dim = e.dim;
      v.triple_id = t.id();
      v.m_name = t.m_name;
      v.h_name = t.h_name;
      v.citation = t.cite;

      for (const auto& s : samples) {
        Subspace h = hsp.instance(e.algebra, s);
        if (h.rank() + m.rank() != e.algebra->dim())
          throw CatalogError(t.id() + ": ranks do not add up to the dimension");
      }

      // 1) exact intersection, uniformly over the parameter samples
      bool all_nontrivial = true;
      Element witness_vec;
      for (const auto& s : samples) {
        Subspace h = hsp.instance(e.algebra, s);
        Subspace cap = liealg::intersect(h, m);
        if (cap.rank() == 0) {
          all_nontrivial = false;
          break;
        }
        if (witness_vec.c.empty()) witness_vec = cap.basis_element(0);
      }

      // verify stored witnesses regardless of which evidence wins
      bool any_numeric = false;
      bool witnesses_ok = !t.witness_names.empty();
      for (const auto& wn : t.witness_names) {
        const NamedWitness& w = e.witnesses.at(wn);
        for (const auto& s : samples) {
          auto vals = bind_params(hsp, s);
          ExclusionWitness ew;
          ew.kind = WitnessKind::ConjugacyWitness;
          ew.element = eval_vector(e.algebra, w.element_rows.at(0), vals);
          ew.target = eval_vector(e.algebra, w.target_rows.at(0), vals);
          ew.group_exact = w.group_exact;
          ew.group_numeric = w.group_numeric;
          ew.group_is_exact = w.exact;
          Subspace h = hsp.instance(e.algebra, s);
          auto rep = involution::check_exclusion(ew, h, m, *e.rep, opts.witness_tol);
          if (!rep.excludes)
            throw CatalogError(t.id() + ": stored witness " + wn + " did not verify: " +
                               rep.detail);
          if (rep.numeric_flagged) any_numeric = true;
        }
      }

      if (all_nontrivial) {
        v.status = Status::ExcludedByIntersection;
        v.evidence = "h cap m contains " + describe_element(witness_vec);
        if (t.expect != "intersection")
          throw CatalogError(t.id() + ": computed intersection evidence but expected " + t.expect);
        out.push_back(v);
        continue;
      }

      if (witnesses_ok) {
        v.status = Status::ExcludedByConjugacy;
        v.evidence = "verified conjugacy witness " + t.witness_names.front() +
                     (any_numeric ? " (numeric)" : " (exact)");
        v.numeric_flagged = any_numeric;
        if (t.expect != "conjugacy")
          throw CatalogError(t.id() + ": witness evidence but expected " + t.expect);
        out.push_back(v);
        continue;
      }

      if (!t.reproducer.empty()) {
        bool is_divergence = t.reproducer == "lemma7" || t.reproducer == "prop12_h3";
        if (t.reproducer == "lemma7") {
          bool applies = true;
          for (const auto& s : samples)
            applies = applies && divergence_applies(e, hsp.instance(e.algebra, s), m,
                                                    std::max(t.projection_factor, 0));
          if (!applies)
            throw CatalogError(t.id() + ": divergence argument does not apply to this triple");
        }
        if (!repro.run(t.reproducer, cat))
          throw CatalogError(t.id() + ": reproducer " + t.reproducer + " failed");
        v.status = is_divergence ? Status::ExcludedByDivergence : Status::ExcludedByCosetDoubling;
        v.evidence = "reproducer " + t.reproducer;
        if ((is_divergence && t.expect != "divergence") ||
            (!is_divergence && t.expect != "cosetdoubling"))
          throw CatalogError(t.id() + ": reproducer evidence but expected " + t.expect);
        out.push_back(v);
        continue;
      }

      if (!t.fact_id.empty()) {
        const auto& f = e.facts.at(t.fact_id);
        v.status = Status::ExcludedByMetadataFact;
        v.evidence = f.text;
        v.citation = f.cite;
        if (t.expect != "metadata")
          throw CatalogError(t.id() + ": metadata evidence but expected " + t.expect);
        out.push_back(v);
        continue;
      }

      if (t.loop) {
        Subspace h = hsp.constant_instance(e.algebra);
        auto bt = involution::bol_triple_check(h, m, is_eigensplit_tangent(e, t.m_name));
        if (!bt.ok()) throw CatalogError(t.id() + ": Bol triple conditions fail");
        auto loop = build_loop(e, t);
        auto reports = loopcore::full_suite(loop, opts.suite_samples, opts.suite_tol, opts.seed);
        for (const auto& r : reports)
          if (!r.pass)
            throw CatalogError(t.id() + ": loop suite " + r.suite + " failed (residual " +
                               std::to_string(r.max_residual) + ")");
        v.status = Status::GlobalBruckLoop;
        v.evidence =
            "Bol triple + property suites (" + std::to_string(opts.suite_samples) + " samples)";
        if (t.expect != "loop")
          throw CatalogError(t.id() + ": loop evidence but expected " + t.expect);
        out.push_back(v);
        continue;
      }

      throw CatalogError(t.id() + ": no evidence established a verdict");
    }
  }
  std::sort(out.begin(), out.end(), [](const Verdict& a, const Verdict& b) {
    return std::tie(a.dim, a.group, a.triple_id) < std::tie(b.dim, b.group, b.triple_id);
  });
  return out;
}

std::string emit_report(const std::vector<Verdict>& verdicts, int max_dim,
                        const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "classify";
    j["max_dim"] = max_dim;
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    nlohmann::ordered_json survivors = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
      nlohmann::ordered_json o;
      o["group"] = v.group;
      o["dim"] = v.dim;
      o["id"] = v.triple_id;
      o["m"] = v.m_name;
      o["h"] = v.h_name;
      o["status"] = to_string(v.status);
      o["evidence"] = v.evidence;
      o["citation"] = v.citation;
      if (v.numeric_flagged) o["numeric"] = true;
      vs.push_back(o);
      if (v.status == Status::GlobalBruckLoop) survivors.push_back(v.group + ":" + v.triple_id);
    }
    j["survivors"] = survivors;
    j["verdicts"] = vs;
    return j.dump(2) + "\n";
  }
  if (format == "text") {
    std::ostringstream os;
    os << "classification up to dimension " << max_dim << "\n";
    int dim = -1;
    for (const auto& v : verdicts) {
      if (v.dim != dim) {
        dim = v.dim;
        os << "\n== dimension " << dim << " ==\n";
      }
      os << "  " << v.group << "  " << v.triple_id << "  " << to_string(v.status);
      if (!v.evidence.empty()) os << "  [" << v.evidence << "]";
      if (!v.citation.empty()) os << "  (" << v.citation << ")";
      os << "\n";
    }
    os << "\nsurviving loops:\n";
    for (const auto& v : verdicts)
      if (v.status == Status::GlobalBruckLoop) os << "  " << v.group << ":" << v.triple_id << "\n";
    return os.str();
  }
  throw CatalogError("unknown report format " + format);
}

namespace {
struct NamedLoopDef {
  const char* name;
  const char* group;
  const char* m;
  const char* h;
};
constexpr NamedLoopDef kNamedLoops[] = {
    {"h2", "sl2r", "m_split", "h_so2"},
    {"h3", "sl2c", "m_cartan", "h_su2"},
    {"sl3r", "sl3r", "m1", "h_so3"},
    {"su21", "su21", "m1", "h1_4"},
    {"h2xh2", "sl2r_sl2r", "m_a", "h_so2so2"},
    {"h2xh2xh2", "sl2r_sl2r_sl2r", "mt1", "h_3so2"},
    {"h3xh2", "sl2c_sl2r", "m_5", "h_m5"},
    {"scheerer_so3", "sl2r_so3", "m_sch", "h_graph"},
};
}  // namespace

loopcore::Loop::Ptr named_loop(const Catalog& cat, const std::string& name) {
  std::string n = name;
  if (n == "h2xh3") n = "h3xh2";  // same loop; the catalog fixes the factor order
  for (const auto& d : kNamedLoops) {
    if (n != d.name) continue;
    const auto& e = cat.entry(d.group);
    for (const auto& t : e.triples)
      if (t.m_name == d.m && t.h_name == d.h) return build_loop(e, t);
    throw CatalogError(std::string("loop triple missing from catalog: ") + d.name);
  }
  throw CatalogError("unknown loop " + name);
}

std::vector<std::string> named_loops() {
  std::vector<std::string> out;
  for (const auto& d : kNamedLoops) out.push_back(d.name);
  return out;
}

}  // namespace bolcat::catalog
