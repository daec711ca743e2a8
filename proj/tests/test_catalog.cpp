#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "test_support.hpp"

using namespace bolcat;
using namespace bolcat::catalog;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::set<std::string> survivors(const std::vector<Verdict>& vs) {
  std::set<std::string> out;
  for (const auto& v : vs)
    if (v.status == Status::GlobalBruckLoop) out.insert(v.group + ":" + v.triple_id);
  return out;
}

}  // namespace

TEST_CASE("catalog loads and carries the full inventory") {
  const auto& cat = test_catalog();
  CHECK(cat.entries.size() == 14);

  // dimensions sorted ascending
  for (size_t i = 1; i < cat.entries.size(); ++i)
    CHECK(cat.entries[i - 1].dim <= cat.entries[i].dim);

  struct Expect {
    const char* group;
    std::vector<const char*> spaces;
    std::vector<const char*> witnesses;
  };
  const std::vector<Expect> expected = {
      {"sl2r", {"m_split", "m_mixed", "h_so2", "h_par", "l2_alg"}, {}},
      {"so3", {"m_c1", "h_so2"}, {}},
      {"sl2c",
       {"m_cartan", "h_su2", "m_tau", "h1", "h2", "h3", "m_conj", "h_sl2r", "w_r", "u1", "v_alg"},
       {"w_g1", "w_g2", "w_g3a", "w_g3b"}},
      {"su21",
       {"m1", "m2", "m5d", "h1_4", "h2_4", "h3_4", "h1_3", "h21_3", "h22_3", "h3_3", "h4_3",
        "h5_3", "h6_3", "a_iw", "n_iw"},
       {"w_e2e1", "w_e6e7"}},
      {"sl3r",
       {"m1", "m2", "m3", "h_so3", "h_so21", "h_gl2", "h2", "h3", "h4", "h5", "h6", "h7", "h8",
        "h9", "h10", "h11", "hbar1", "hbar2", "hbar3", "hbar4"},
       {"w_h5", "w_h6", "w_h2h3"}},
      {"sl2r_sl2r", {"m_a", "m_b", "m_c", "m_swap", "h_inj", "h_ker", "m_sch"}, {"w_par2"}},
      {"sl2c_sl2r",
       {"m_1", "m_2", "m_3", "m_4", "m_5", "m_6", "hp1", "hp2", "hp3", "hp4", "hp5", "hp6", "hp7",
        "hp8", "h_diag", "h_l2l2", "h_k1", "h_w", "m_schc", "m_schr"},
       {"w_g1p", "w_g3p", "w_par2c", "w_m6a", "w_m6b"}},
      {"sl2c_so3", {"mt_1", "m_5L", "h_dso3", "h_wrg", "h_v", "m_sch"}, {"w_g1g"}},
      {"sl2r_sl2r_sl2r", {"mt1", "mt2", "mt3", "mt4", "h_diag", "h_ker3", "m_sch6", "m_sch3"},
       {"w_par3"}},
      {"sl2r_sl2r_so3", {"m_1", "m_2", "m_3", "m_4", "h_18", "m_sch6", "m_sch3"}, {"w_e3f1"}},
      {"sl2r_so3_so3", {"m_1", "m_L3", "h_L3", "m_sch"}, {}},
  };
  for (const auto& ex : expected) {
    const auto& e = cat.entry(ex.group);
    for (const char* s : ex.spaces) {
      INFO(ex.group << " space " << s);
      CHECK(e.spaces.count(s) == 1);
    }
    for (const char* w : ex.witnesses) {
      INFO(ex.group << " witness " << w);
      CHECK(e.witnesses.count(w) == 1);
    }
  }

  // parametric families carry their sample grids
  CHECK(cat.entry("sl3r").spaces.at("h10").samples.size() == 5);
  CHECK(cat.entry("su21").spaces.at("h5_3").samples.size() == 25);
  CHECK(cat.entry("sl2c").spaces.at("w_r").samples.size() == 5);
}

TEST_CASE("load failures are loud and specific") {
  fs::path tmp = fs::temp_directory_path() / "bolcat_test_data";
  fs::remove_all(tmp);

  SUBCASE("missing directory") {
    CHECK_THROWS_WITH_AS(load_catalog(tmp), doctest::Contains("no catalog directory"),
                         CatalogError);
  }

  SUBCASE("empty directory") {
    fs::create_directories(tmp / "catalog");
    CHECK_THROWS_WITH_AS(load_catalog(tmp), doctest::Contains("is empty"), CatalogError);
  }

  SUBCASE("corrupted structure constants name the failing triple") {
    fs::create_directories(tmp / "catalog");
    std::string text = slurp(default_data_dir() / "catalog" / "su21.cat");
    auto pos = text.find("bracket 1 3 2 2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 15, "bracket 1 3 2 -2");
    std::ofstream(tmp / "catalog" / "su21.cat") << text;
    CHECK_THROWS_WITH_AS(load_catalog(tmp), doctest::Contains("Jacobi fails"), CatalogError);
  }

  SUBCASE("a 3-dimensional sign flip slips past Jacobi but not the realization") {
    fs::create_directories(tmp / "catalog");
    std::string text = slurp(default_data_dir() / "catalog" / "sl2r.cat");
    auto pos = text.find("bracket 1 3 2 2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 15, "bracket 1 3 2 -2");
    std::ofstream(tmp / "catalog" / "sl2r.cat") << text;
    CHECK_THROWS_WITH_AS(load_catalog(tmp), doctest::Contains("realization"), CatalogError);
  }

  SUBCASE("an involution that does not match its stated eigenspace") {
    fs::create_directories(tmp / "catalog");
    std::string text = slurp(default_data_dir() / "catalog" / "sl2r.cat");
    auto pos = text.find("minus m_split");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 13, "minus m_mixed");
    std::ofstream(tmp / "catalog" / "sl2r.cat") << text;
    CHECK_THROWS_WITH_AS(load_catalog(tmp), doctest::Contains("differs from"), CatalogError);
  }

  fs::remove_all(tmp);
}

TEST_CASE("classification replays the expected table") {
  const auto& cat = test_catalog();
  ClassifyOptions opts;
  opts.suite_samples = 60;  // smaller suites keep the unit test quick

  SUBCASE("empty below every catalog group") {
    CHECK(run_classification(cat, 0, opts).empty());
  }

  SUBCASE("dimension 3 and 5 agree: the hyperbolic plane loop only") {
    auto v3 = run_classification(cat, 3, opts);
    auto v5 = run_classification(cat, 5, opts);
    CHECK(survivors(v3) == std::set<std::string>{"sl2r:m_split__h_so2"});
    CHECK(survivors(v3) == survivors(v5));
  }

  SUBCASE("dimension 8 adds exactly the two rank-one loops") {
    auto v8 = survivors(run_classification(cat, 8, opts));
    CHECK(v8.count("su21:m1__h1_4") == 1);
    CHECK(v8.count("sl3r:m1__h_so3") == 1);
    auto v6 = survivors(run_classification(cat, 6, opts));
    CHECK(v8.size() == v6.size() + 2);
  }

  SUBCASE("out-of-range request is rejected") {
    CHECK_THROWS_WITH_AS(run_classification(cat, 10, opts), doctest::Contains("max_dim"),
                         CatalogError);
  }

  SUBCASE("deterministic output") {
    auto a = emit_report(run_classification(cat, 6, opts), 6, "json");
    auto b = emit_report(run_classification(cat, 6, opts), 6, "json");
    CHECK(a == b);
  }

  SUBCASE("unknown format") {
    CHECK_THROWS_AS(emit_report({}, 9, "xml"), CatalogError);
  }

  SUBCASE("text report lists dimensions and survivors") {
    auto txt = emit_report(run_classification(cat, 3, opts), 3, "text");
    CHECK(txt.find("dimension 3") != std::string::npos);
    CHECK(txt.find("surviving loops") != std::string::npos);
    CHECK(txt.find("sl2r:m_split__h_so2") != std::string::npos);
  }
}

TEST_CASE("the driver rejects catalogs whose claims do not verify") {
  fs::path tmp = fs::temp_directory_path() / "bolcat_driver_neg";
  fs::remove_all(tmp);
  fs::create_directories(tmp / "catalog");
  ClassifyOptions opts;
  opts.suite_samples = 20;

  SUBCASE("an expectation contradicting the computed evidence") {
    std::string text = slurp(default_data_dir() / "catalog" / "sl2r.cat");
    auto pos = text.find("triple m_split h_hyp\nexpect intersection");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("triple m_split h_hyp\nexpect intersection").size(),
                 "triple m_split h_hyp\nexpect metadata\nfact psl2r_loops");
    std::ofstream(tmp / "catalog" / "sl2r.cat") << text;
    auto cat = load_catalog(tmp);
    CHECK_THROWS_WITH_AS(run_classification(cat, 3, opts),
                         doctest::Contains("intersection evidence but expected"), CatalogError);
  }

  SUBCASE("a witness whose stated target is wrong") {
    std::string text = slurp(default_data_dir() / "catalog" / "sl3r.cat");
    auto pos = text.find("target 0 0 0 0 0 0 0 1");  // w_h5
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("target 0 0 0 0 0 0 0 1").size(), "target 0 0 0 0 1 0 0 0");
    std::ofstream(tmp / "catalog" / "sl3r.cat") << text;
    auto cat = load_catalog(tmp);
    CHECK_THROWS_WITH_AS(run_classification(cat, 8, opts),
                         doctest::Contains("did not verify"), CatalogError);
  }

  fs::remove_all(tmp);
}

TEST_CASE("verdict statuses cover every evidence kind") {
  ClassifyOptions opts;
  opts.suite_samples = 60;
  auto vs = run_classification(test_catalog(), 9, opts);
  std::map<Status, int> counts;
  for (const auto& v : vs) counts[v.status]++;
  CHECK(counts[Status::GlobalBruckLoop] == 17);
  CHECK(counts[Status::ExcludedByIntersection] > 30);
  CHECK(counts[Status::ExcludedByConjugacy] >= 15);
  CHECK(counts[Status::ExcludedByCosetDoubling] == 4);   // spiral + three product families
  CHECK(counts[Status::ExcludedByDivergence] >= 8);
  CHECK(counts[Status::ExcludedByMetadataFact] >= 12);

  SUBCASE("numeric flags appear only on surd witnesses") {
    for (const auto& v : vs) {
      if (v.numeric_flagged) CHECK(v.status == Status::ExcludedByConjugacy);
    }
  }
}

TEST_CASE("every verdict's evidence text is populated") {
  ClassifyOptions opts;
  opts.suite_samples = 60;
  for (const auto& v : run_classification(test_catalog(), 9, opts)) {
    INFO(v.group << " " << v.triple_id);
    CHECK(!v.evidence.empty());
  }
}

TEST_CASE("the shared witness elements lie in every subalgebra they exclude") {
  const auto& e = test_catalog().entry("su21");
  auto a = e.algebra;
  // the compact element excluding both the su2-type and the split 3-dim class
  liealg::Element e2 = basis1(a, 2);
  for (const char* h : {"h1_3", "h21_3"})
    CHECK(e.spaces.at(h).constant_instance(a).contains(e2));
  // the nilpotent element shared by the solvable classes, at every parameter
  liealg::Element e67 = basis1(a, 6) + basis1(a, 7);
  for (const char* h : {"h22_3", "h3_3", "h4_3", "h5_3", "h6_3"}) {
    const auto& sp = e.spaces.at(h);
    auto samples = sp.parametric() ? sp.samples : std::vector<std::vector<Rat>>{{}};
    for (const auto& s : samples) {
      INFO(h);
      CHECK(sp.instance(a, s).contains(e67));
    }
  }
  // and the stated conjugate images lie in the 5-dimensional eigenspace
  auto m5d = e.spaces.at("m5d").constant_instance(a);
  CHECK(m5d.contains(basis1(a, 1)));
  CHECK(m5d.contains(basis1(a, 6) + basis1(a, 8)));
}

TEST_CASE("named loops resolve, including the order alias") {
  const auto& cat = test_catalog();
  for (const auto& n : named_loops()) CHECK(named_loop(cat, n) != nullptr);
  CHECK(named_loop(cat, "h2xh3")->name() == named_loop(cat, "h3xh2")->name());
  CHECK_THROWS_AS(named_loop(cat, "nope"), CatalogError);
}

TEST_CASE("classification matches the shipped golden table byte for byte") {
  ClassifyOptions opts;  // defaults: the same configuration the CLI uses
  auto vs = run_classification(test_catalog(), 9, opts);
  std::string got = emit_report(vs, 9, "json");
  std::string want = slurp(default_data_dir() / "golden" / "classification_dim9.json");
  CHECK(got == want);
}
