#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bolcat/loopcore.hpp"
#include "test_support.hpp"

using namespace bolcat;
using namespace bolcat::loopcore;
using matrixrep::GroupElement;
using matrixrep::Mat;

namespace {

Loop::Ptr h2() {
  static Loop::Ptr l = catalog::named_loop(test_catalog(), "h2");
  return l;
}

Loop::Ptr scheerer_so3() {
  static Loop::Ptr l = catalog::named_loop(test_catalog(), "scheerer_so3");
  return l;
}

}  // namespace

TEST_CASE("identity axioms") {
  auto l = h2();
  std::mt19937_64 rng(1);
  LoopPoint e = identity(l);
  for (int i = 0; i < 20; ++i) {
    LoopPoint x = random_point(l, rng);
    CHECK(point_distance(loop_mul(e, x), x) < 1e-12);
    CHECK(point_distance(loop_mul(x, e), x) < 1e-12);
    CHECK(point_distance(left_divide(x, x), e) < 1e-11);
  }
}

TEST_CASE("multiplication matches the closed-form polar factor") {
  auto l = h2();
  LoopPoint a = point_from_tangent(l, {1, 0});  // exp(e1)
  LoopPoint b = point_from_tangent(l, {0, 1});  // exp(e2)
  LoopPoint ab = loop_mul(a, b);
  Mat prod = a.g.blocks[0] * b.g.blocks[0];
  Mat M = prod * prod.adjoint();
  Mat expect = (M + Mat::Identity(2, 2)) / std::sqrt(M.trace().real() + 2.0);
  CHECK(matrixrep::rel_residual(ab.g.blocks[0], expect) < 1e-12);
}

TEST_CASE("one-parameter subsets multiply additively") {
  auto cat = test_catalog();
  auto sl3r_loop = catalog::named_loop(cat, "sl3r");
  // a tangent direction concentrated on a single coordinate of m
  std::vector<double> dir(sl3r_loop->tangent().rank(), 0.0);
  dir[0] = 1.0;
  auto at = [&](double t) {
    auto v = dir;
    for (auto& c : v) c *= t;
    return point_from_tangent(sl3r_loop, v);
  };
  CHECK(point_distance(loop_mul(at(0.7), at(0.5)), at(1.2)) < 1e-11);
}

TEST_CASE("divisions solve their defining equations") {
  std::mt19937_64 rng(3);
  for (const char* name : {"h2", "h3", "su21", "h3xh2"}) {
    auto l = catalog::named_loop(test_catalog(), name);
    for (int i = 0; i < 100; ++i) {
      LoopPoint a = random_point(l, rng), b = random_point(l, rng);
      CHECK(point_distance(loop_mul(a, left_divide(a, b)), b) < 1e-9);
      CHECK(point_distance(loop_mul(right_divide(b, a), a), b) < 1e-9);
    }
  }
}

TEST_CASE("Bol identity degenerates correctly at the identity") {
  auto l = h2();
  std::mt19937_64 rng(5);
  LoopPoint e = identity(l);
  for (int i = 0; i < 10; ++i) {
    LoopPoint a = random_point(l, rng), c = random_point(l, rng);
    double r = 0;
    CHECK(check_bol(a, e, a, 1e-12, &r));
    CHECK(check_bol(e, a, c, 1e-12, &r));
  }
}

TEST_CASE("Bruck identity holds on hyperbolic loops and at the identity") {
  auto l = h2();
  std::mt19937_64 rng(7);
  LoopPoint e = identity(l);
  LoopPoint y = random_point(l, rng);
  double r = 0;
  CHECK(check_bruck(e, y, 1e-12, &r));
  auto rep = bruck_suite(l, 200, 1e-9, 1);
  CHECK(rep.pass);
}

TEST_CASE("suites pass on the named loops at moderate sample counts") {
  std::mt19937_64 rng(11);
  for (const char* name : {"h2", "h3", "h2xh2"}) {
    auto l = catalog::named_loop(test_catalog(), name);
    for (const auto& rep : full_suite(l, 150, 1e-8, 42)) {
      INFO(l->name() << " " << rep.suite << " residual " << rep.max_residual);
      CHECK(rep.pass);
    }
  }

  SUBCASE("sample counts below one are rejected") {
    CHECK_THROWS_AS(bol_suite(h2(), 0, 1e-8, 0), std::invalid_argument);
  }
}

TEST_CASE("scheerer extension structure") {
  auto l = scheerer_so3();
  std::mt19937_64 rng(13);

  SUBCASE("identity is the pair of identities") {
    LoopPoint e = identity(l);
    CHECK(matrixrep::rel_residual(e.g.blocks[0], Mat::Identity(2, 2)) == 0.0);
    CHECK(matrixrep::rel_residual(e.g.blocks[1], Mat::Identity(2, 2)) == 0.0);
  }

  SUBCASE("Bol passes; divisions pass; the fiber makes Bruck inapplicable") {
    CHECK(!l->bruck_expected());
    CHECK(bol_suite(l, 500, 1e-8, 3).pass);
    CHECK(division_suite(l, 200, 1e-8, 4).pass);
    CHECK(section_uniqueness(l, 200, 1e-8, 5).pass);
  }

  SUBCASE("trivial hom multiplies componentwise against the base loop") {
    auto base = h2();
    auto trivial = Loop::scheerer_extension("h2_x_so3_group", base, test_algebra("so3"),
                                            HomSpec{HomSpec::Kind::Trivial, {}});
    for (int i = 0; i < 100; ++i) {
      LoopPoint x = random_point(trivial, rng), y = random_point(trivial, rng);
      LoopPoint xy = loop_mul(x, y);
      // base component multiplies as in the base loop
      LoopPoint bx{base, {base->rep(), {x.g.blocks[0]}}};
      LoopPoint by{base, {base->rep(), {y.g.blocks[0]}}};
      LoopPoint bxy = loop_mul(bx, by);
      CHECK(matrixrep::rel_residual(xy.g.blocks[0], bxy.g.blocks[0]) < 1e-10);
      // fiber multiplies as in the group (up to sign)
      Mat f = matrixrep::sign_normalize_block(Mat(x.g.blocks[1] * y.g.blocks[1]));
      CHECK(matrixrep::rel_residual(matrixrep::sign_normalize_block(xy.g.blocks[1]), f) < 1e-10);
    }
    CHECK(bol_suite(trivial, 200, 1e-8, 6).pass);
  }

  SUBCASE("a non-homomorphism is rejected") {
    // two non-commuting angle generators on a single base circle cannot occur,
    // but a malformed generator count is caught up front
    HomSpec bad;
    bad.kind = HomSpec::Kind::Angles;
    CHECK_THROWS_AS(Loop::scheerer_extension("bad", h2(), test_algebra("so3"), bad),
                    std::invalid_argument);
  }
}

TEST_CASE("direct products multiply componentwise") {
  auto a = h2();
  auto prod = Loop::direct_product(a, a);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    LoopPoint x = random_point(prod, rng), y = random_point(prod, rng);
    LoopPoint xy = loop_mul(x, y);
    for (int b = 0; b < 2; ++b) {
      LoopPoint cx{a, {a->rep(), {x.g.blocks[b]}}};
      LoopPoint cy{a, {a->rep(), {y.g.blocks[b]}}};
      CHECK(matrixrep::rel_residual(xy.g.blocks[b], loop_mul(cx, cy).g.blocks[0]) < 1e-10);
    }
  }
  CHECK(bol_suite(prod, 200, 1e-8, 19).pass);
  CHECK(prod->bruck_expected());

  SUBCASE("product with a scheerer extension keeps the fiber structure") {
    auto mixed = Loop::direct_product(a, scheerer_so3());
    CHECK(!mixed->bruck_expected());
    CHECK(bol_suite(mixed, 150, 1e-8, 23).pass);
  }
}

TEST_CASE("section uniqueness on stabilizer inputs") {
  auto l = catalog::named_loop(test_catalog(), "sl3r");
  std::mt19937_64 rng(29);
  GroupElement h = random_stabilizer(l, rng);
  LoopPoint p = section(l, h);
  CHECK(point_distance(p, identity(l)) < 1e-10);
  CHECK(section_uniqueness(l, 300, 1e-8, 31).pass);
}

TEST_CASE("divergent coset family") {
  auto r = reproduce_lemma7(test_catalog().entry("sl2r").rep);
  INFO([&] {
    std::string all;
    for (const auto& row : r.rows) all += row + "\n";
    return all;
  }());
  CHECK(r.pass);
}

TEST_CASE("spiral-coset duplication and unipotent divergence") {
  for (double d : {2.0, 3.0}) {
    auto r = reproduce_prop12(test_catalog().entry("sl3r").rep, d);
    CHECK(r.pass);
  }
  CHECK_THROWS_AS(reproduce_prop12(test_catalog().entry("sl3r").rep, 1.0),
                  std::invalid_argument);
}

TEST_CASE("product-family coset duplication") {
  auto r = reproduce_prop19(test_catalog().entry("sl2c_sl2r").rep);
  CHECK(r.pass);
  auto r2 = reproduce_prop19(test_catalog().entry("sl2c_sl2r").rep, {1.0 / 2, 3.0});
  CHECK(r2.pass);
}

TEST_CASE("points of different loops do not mix") {
  std::mt19937_64 rng(37);
  auto a = h2();
  auto b = catalog::named_loop(test_catalog(), "h3");
  LoopPoint x = random_point(a, rng), y = random_point(b, rng);
  CHECK_THROWS_AS(loop_mul(x, y), std::invalid_argument);
}
