#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "bolcat/liealg.hpp"
#include "bolcat/matrixrep.hpp"
#include "test_support.hpp"

using namespace bolcat;
using namespace bolcat::liealg;

namespace {

Element random_element(const LieAlgebra::Ptr& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  RatVec v;
  for (int i = 0; i < a->dim(); ++i) {
    Rat q(num(rng), den(rng));
    q.canonicalize();
    v.push_back(q);
  }
  return Element(a, v);
}

}  // namespace

TEST_CASE("bracket follows the structure constants") {
  auto sl2r = test_algebra("sl2r");
  CHECK(bracket(basis1(sl2r, 1), basis1(sl2r, 2)) == elem(sl2r, {0, 0, 2}));
  CHECK(bracket(basis1(sl2r, 1), basis1(sl2r, 3)) == elem(sl2r, {0, 2, 0}));
  CHECK(bracket(basis1(sl2r, 3), basis1(sl2r, 2)) == elem(sl2r, {2, 0, 0}));

  auto su21 = test_algebra("su21");
  Element e1 = basis1(su21, 1);
  CHECK(bracket(basis1(su21, 3), basis1(su21, 2)) == (Rat(2) * e1));

  SUBCASE("antisymmetry: [x, x] = 0") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 32; ++i) {
      Element x = random_element(su21, rng);
      CHECK(bracket(x, x).is_zero());
    }
  }

  SUBCASE("mismatched algebras are rejected") {
    CHECK_THROWS_AS(bracket(basis1(sl2r, 1), basis1(su21, 1)), std::invalid_argument);
  }
}

TEST_CASE("Jacobi holds on every catalog table and fails when corrupted") {
  for (const auto& e : test_catalog().entries) CHECK(verify_jacobi(e.algebra).empty());

  // flip one sign in the 8-dimensional table: [e1,e3] = -2e2 instead of 2e2
  std::ifstream in(catalog::default_data_dir() / "catalog" / "su21.cat");
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto pos = text.find("bracket 1 3 2 2");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 15, "bracket 1 3 2 -2");
  auto corrupted = build_algebra(parse_algebra_text(text));
  auto bad = verify_jacobi(corrupted);
  REQUIRE(!bad.empty());
  // the report names a triple involving the corrupted pair
  bool names_pair = false;
  for (const auto& v : bad)
    names_pair = names_pair || ((v.i == 0 || v.j == 0 || v.k == 0) &&
                                (v.i == 2 || v.j == 2 || v.k == 2));
  CHECK(names_pair);
}

TEST_CASE("Jacobi identity on random exact elements") {
  std::mt19937_64 rng(11);
  for (const char* tag : {"sl2c", "su21", "sl3r", "sl2c_sl2r"}) {
    auto a = test_algebra(tag);
    for (int i = 0; i < 8; ++i) {
      Element x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
      Element s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                  bracket(z, bracket(x, y));
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("trace form values and ad-invariance") {
  auto sl2r = test_algebra("sl2r");
  CHECK(killing_form(basis1(sl2r, 1), basis1(sl2r, 1)) == 8);
  CHECK(killing_form(basis1(sl2r, 1), Element::zero(sl2r)) == 0);

  Element par = basis1(sl2r, 2) + basis1(sl2r, 3);
  CHECK(sl2_normalized_form(par, par) == 0);

  SUBCASE("normalized form equals l1^2 + l2^2 - l3^2 and -det of the 2x2 picture") {
    std::mt19937_64 rng(3);
    auto rep = test_catalog().entry("sl2r").rep;
    for (int i = 0; i < 32; ++i) {
      Element x = random_element(sl2r, rng);
      Rat expect = x.c[0] * x.c[0] + x.c[1] * x.c[1] - x.c[2] * x.c[2];
      CHECK(sl2_normalized_form(x, x) == expect);
      CHECK(rep->rep_exact(x)[0].det() == CRat(-expect));
    }
  }

  SUBCASE("killing([x,y],z) + killing(y,[x,z]) = 0") {
    std::mt19937_64 rng(5);
    for (const char* tag : {"sl2r", "su21", "sl3r"}) {
      auto a = test_algebra(tag);
      for (int i = 0; i < 8; ++i) {
        Element x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
        CHECK(killing_form(bracket(x, y), z) + killing_form(y, bracket(x, z)) == 0);
      }
    }
  }
}

TEST_CASE("element classification on sl2r") {
  auto sl2r = test_algebra("sl2r");
  CHECK(classify_sl2_element(basis1(sl2r, 3)) == Sl2Class::Elliptic);
  CHECK(classify_sl2_element(basis1(sl2r, 1)) == Sl2Class::Hyperbolic);
  CHECK(classify_sl2_element(basis1(sl2r, 2)) == Sl2Class::Hyperbolic);
  CHECK(classify_sl2_element(basis1(sl2r, 2) + basis1(sl2r, 3)) == Sl2Class::Parabolic);
  CHECK(classify_sl2_element(basis1(sl2r, 1) + basis1(sl2r, 3)) == Sl2Class::Parabolic);
  CHECK(classify_sl2_element(Element::zero(sl2r)) == Sl2Class::Zero);
  CHECK_THROWS_AS(classify_sl2_element(basis1(test_algebra("so3"), 1)), std::invalid_argument);

  SUBCASE("constant on orbits of exact rational conjugation") {
    auto rep = test_catalog().entry("sl2r").rep;
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    for (int i = 0; i < 24; ++i) {
      Element x = random_element(sl2r, rng);
      // unipotent-times-lower conjugator with small rational entries
      matrixrep::GroupElement g = matrixrep::GroupElement::identity(rep);
      double a = double(num(rng)) / den(rng), b = double(num(rng)) / den(rng);
      g.blocks[0](0, 1) = a;
      g.blocks[0] *= [&] {
        matrixrep::Mat l = matrixrep::Mat::Identity(2, 2);
        l(1, 0) = b;
        return l;
      }();
      Element y = matrixrep::ad_conjugate(g, x);
      CHECK(classify_sl2_element(y) == classify_sl2_element(x));
    }
  }
}

TEST_CASE("span closure") {
  auto sl2r = test_algebra("sl2r");
  CHECK(span_closure({basis1(sl2r, 1), basis1(sl2r, 2)}).rank() == 3);

  auto l2 = Subspace::span(sl2r, {basis1(sl2r, 1), basis1(sl2r, 2) + basis1(sl2r, 3)});
  std::vector<Element> gens;
  for (int i = 0; i < l2.rank(); ++i) gens.push_back(l2.basis_element(i));
  CHECK(span_closure(gens) == l2);  // fixed point on a subalgebra

  auto sl3r = test_algebra("sl3r");
  auto m1 = test_catalog().entry("sl3r").spaces.at("m1").constant_instance(sl3r);
  std::vector<Element> mg;
  for (int i = 0; i < m1.rank(); ++i) mg.push_back(m1.basis_element(i));
  CHECK(span_closure(mg).rank() == 8);

  SUBCASE("idempotent and monotone") {
    std::mt19937_64 rng(23);
    auto a = test_algebra("su21");
    for (int i = 0; i < 8; ++i) {
      std::vector<Element> g{random_element(a, rng), random_element(a, rng)};
      Subspace c = span_closure(g);
      std::vector<Element> cg;
      for (int j = 0; j < c.rank(); ++j) cg.push_back(c.basis_element(j));
      CHECK(span_closure(cg) == c);
      CHECK(c.contains(Subspace::span(a, g)));
    }
  }
}

TEST_CASE("subalgebra and ideal predicates") {
  auto sl2r = test_algebra("sl2r");
  auto l2 = Subspace::span(sl2r, {basis1(sl2r, 1), basis1(sl2r, 2) + basis1(sl2r, 3)});
  CHECK(is_subalgebra(l2));
  CHECK(is_ideal(Subspace::whole(sl2r)));

  auto span_e1 = Subspace::span(sl2r, {basis1(sl2r, 1)});
  auto span_par = Subspace::span(sl2r, {basis1(sl2r, 2) + basis1(sl2r, 3)});
  CHECK(!is_ideal(span_e1, l2));
  CHECK(is_ideal(span_par, l2));
}

TEST_CASE("subspace intersection and sums") {
  auto sl2c = test_algebra("sl2c");
  const auto& e = test_catalog().entry("sl2c");
  auto h1 = e.spaces.at("h1").constant_instance(sl2c);
  auto m = e.spaces.at("m_tau").constant_instance(sl2c);
  CHECK(intersect(h1, m).rank() == 0);
  CHECK(intersect(m, m) == m);

  auto sl3r = test_algebra("sl3r");
  const auto& e3 = test_catalog().entry("sl3r");
  auto m3 = e3.spaces.at("m3").constant_instance(sl3r);
  auto hbar2 = e3.spaces.at("hbar2").constant_instance(sl3r);
  auto cap = intersect(m3, hbar2);
  CHECK(cap.rank() == 1);
  CHECK(cap == Subspace::span(sl3r, {basis1(sl3r, 3)}));

  SUBCASE("rank formula") {
    std::mt19937_64 rng(31);
    auto a = test_algebra("su21");
    for (int i = 0; i < 12; ++i) {
      Subspace s1 = Subspace::span(a, {random_element(a, rng), random_element(a, rng),
                                       random_element(a, rng)});
      Subspace s2 = Subspace::span(a, {random_element(a, rng), random_element(a, rng),
                                       random_element(a, rng)});
      CHECK(s1.rank() + s2.rank() - sum(s1, s2).rank() == intersect(s1, s2).rank());
      CHECK(s1.contains(intersect(s1, s2)));
      CHECK(s2.contains(intersect(s1, s2)));
    }
  }
}

TEST_CASE("direct sums") {
  auto sl2r = test_algebra("sl2r");
  auto sum2 = LieAlgebra::direct_sum({sl2r, sl2r});
  CHECK(sum2->dim() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j)
      CHECK(bracket(Element::basis(sum2, i), Element::basis(sum2, j)).is_zero());

  auto mixed = LieAlgebra::direct_sum({test_algebra("sl2c"), test_algebra("so3")});
  CHECK(mixed->dim() == 9);
  CHECK(verify_jacobi(mixed).empty());

  auto triple = LieAlgebra::direct_sum({sum2, test_algebra("so3")});
  CHECK(triple->dim() == 9);
  CHECK(triple->factors().size() == 3);  // nested sums flatten to atoms
}

TEST_CASE("algebra text parsing") {
  auto src = parse_algebra_text("group tiny\ndim 2\nlabels a b\nbracket 1 2 1 1/2\n");
  auto a = build_algebra(src);
  CHECK(a->dim() == 2);
  CHECK(bracket(Element::basis(a, 0), Element::basis(a, 1)) ==
        (Rat(1, 2) * Element::basis(a, 0)));
  CHECK_THROWS_AS(parse_algebra_text("dim 3\n"), ParseError);
}
