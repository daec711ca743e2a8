#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bolcat/involution.hpp"
#include "bolcat/matrixrep.hpp"

namespace bolcat::loopcore {

using matrixrep::GroupElement;
using matrixrep::Mat;
using matrixrep::MatrixRep;

// How the stabilizer's compact part acts on the fiber of a Scheerer
// extension.
struct HomSpec {
  enum class Kind { Trivial, Angles, Su2Cover };
  Kind kind = Kind::Trivial;
  // Angles: one generator per base block (each base block contributes one
  // rotation angle); angle_gens[b][f] is the matrix of the generator in
  // fiber block f. The generators must commute.
  std::vector<std::vector<Mat>> angle_gens;
};

// A loop realized by a global section: every block is either polar-sectioned
// (base; canonical representatives in exp m) or a group fiber glued to its
// base through a homomorphism of the stabilizer. Direct products concatenate
// components.
class Loop {
 public:
  using Ptr = std::shared_ptr<const Loop>;

  struct Component {
    std::vector<int> base_blocks;
    std::vector<int> fiber_blocks;
    HomSpec hom;
  };

  // Bruck loop of hyperbolic type: canonical coset representatives via the
  // Cartan polar factorization, blockwise.
  static Ptr hyperbolic(std::string name, MatrixRep::Ptr rep, liealg::Subspace m);
  // Scheerer extension inside an already-built product realization; base
  // blocks are sectioned, the remaining blocks form the fiber.
  static Ptr scheerer(std::string name, MatrixRep::Ptr rep, liealg::Subspace m,
                      std::vector<int> base_blocks, HomSpec hom);
  // Scheerer extension of `fiber` by the (hyperbolic) base loop.
  static Ptr scheerer_extension(std::string name, const Ptr& base,
                                const liealg::LieAlgebra::Ptr& fiber, HomSpec hom);
  static Ptr direct_product(const Ptr& a, const Ptr& b);

  const std::string& name() const { return name_; }
  const MatrixRep::Ptr& rep() const { return rep_; }
  const liealg::Subspace& tangent() const { return m_; }
  const std::vector<Component>& components() const { return comps_; }

  // The automorphic inverse identity holds on Bruck loops of hyperbolic type
  // and their direct products; an extension with a nonabelian group fiber
  // contains that group as a subloop and cannot satisfy it.
  bool bruck_expected() const {
    for (const auto& c : comps_)
      if (!c.fiber_blocks.empty()) return false;
    return true;
  }

 private:
  std::string name_;
  MatrixRep::Ptr rep_;
  liealg::Subspace m_;
  std::vector<Component> comps_;
};

struct LoopPoint {
  Loop::Ptr loop;
  GroupElement g;  // canonical representative
};

LoopPoint identity(const Loop::Ptr& l);
// Canonical representative of the coset of x (the section).
LoopPoint section(const Loop::Ptr& l, const GroupElement& x);
// exp of the tangent element with the given coefficients in the m-basis.
LoopPoint point_from_tangent(const Loop::Ptr& l, const std::vector<double>& coeffs);
LoopPoint random_point(const Loop::Ptr& l, std::mt19937_64& rng);
GroupElement random_stabilizer(const Loop::Ptr& l, std::mt19937_64& rng);
bool stabilizer_member(const Loop::Ptr& l, const GroupElement& g, double tol);

LoopPoint loop_mul(const LoopPoint& a, const LoopPoint& b);
LoopPoint left_divide(const LoopPoint& a, const LoopPoint& b);   // a \ b
LoopPoint right_divide(const LoopPoint& b, const LoopPoint& a);  // b / a
LoopPoint loop_inverse(const LoopPoint& x);
double point_distance(const LoopPoint& a, const LoopPoint& b);

bool check_bol(const LoopPoint& a, const LoopPoint& b, const LoopPoint& c, double tol,
               double* residual = nullptr);
bool check_bruck(const LoopPoint& x, const LoopPoint& y, double tol, double* residual = nullptr);

struct SuiteReport {
  std::string suite;
  std::string group;
  int samples = 0;
  double tolerance = 0;
  double max_residual = 0;
  bool pass = false;
  std::vector<std::string> witnesses;  // descriptions of failures, if any
};

SuiteReport bol_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed);
SuiteReport bruck_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed);
SuiteReport division_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed);
SuiteReport alternativity_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed);
SuiteReport section_uniqueness(const Loop::Ptr& l, int samples, double tol, uint64_t seed);
std::vector<SuiteReport> full_suite(const Loop::Ptr& l, int samples, double tol, uint64_t seed);

// Machine-checkable cores of the non-existence arguments. Each report is a
// table of verified facts; pass = every one of them held.
struct ReproduceReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> rows;
  std::map<std::string, std::string> facts;

  void check(bool ok, const std::string& what);
};

// Divergent coset family in PSL2(R) against both triangular stabilizers.
ReproduceReport reproduce_lemma7(const MatrixRep::Ptr& sl2r_rep);
// Duplicate representatives in a spiral-stabilizer coset of SL3(R), and the
// divergent unipotent-stabilizer family.
ReproduceReport reproduce_prop12(const MatrixRep::Ptr& sl3r_rep, double d = 2.0);
// Duplicate representatives in the product-group cosets for the three
// triangular-times-rotation families.
ReproduceReport reproduce_prop19(const MatrixRep::Ptr& prod_rep,
                                 const std::vector<double>& rs = {0, 1, -1, 2});

}  // namespace bolcat::loopcore
