#pragma once

#include <optional>
#include <string>

#include "bolcat/liealg.hpp"
#include "bolcat/matrixrep.hpp"

namespace bolcat::involution {

using liealg::Element;
using liealg::LieAlgebra;
using liealg::Subspace;

// Involutive automorphism given as an exact matrix on coefficients.
struct Involution {
  LieAlgebra::Ptr alg;
  RatMat map;

  Element apply(const Element& x) const;
};

// Empty string when `map` squares to the identity and preserves every basis
// bracket; otherwise a description of the first failed condition.
std::string validate_involution(const LieAlgebra::Ptr& alg, const RatMat& map);
Involution make_involution(const LieAlgebra::Ptr& alg, const RatMat& map);  // throws

struct EigenSplit {
  Subspace plus;   // h, the fixed subalgebra
  Subspace minus;  // m
};
EigenSplit eigensplit(const Involution& t);

// Verifies the graded relations [h,h] in h, [h,m] in m, [m,m] in h exactly.
bool graded_relations_hold(const EigenSplit& s);

bool is_lie_triple_system(const Subspace& m);

struct BolTriple {
  Subspace h, m;
  bool complement_ok = false;  // h cap m = 0 and ranks add to dim
  bool triple_ok = false;      // [[m,m],m] in m
  bool generates_ok = false;   // span closure of m is the whole algebra
  // g = m (+) [m,m]; only checked for eigensplit tangents.
  std::optional<bool> msum_ok;

  bool ok() const {
    return complement_ok && triple_ok && generates_ok && msum_ok.value_or(true);
  }
};
// `eigensplit_tangent` additionally runs the m (+) [m,m] decomposition check.
// Throws when h is not a subalgebra.
BolTriple bol_triple_check(const Subspace& h, const Subspace& m, bool eigensplit_tangent = false);

enum class WitnessKind { DirectIntersection, ConjugacyWitness };

// Exact or surd-valued evidence that a pair (h, m) cannot carry a loop:
// either a nonzero element of h cap m, or a group element conjugating an
// h-element into m.
struct ExclusionWitness {
  WitnessKind kind;
  Element element;
  Element target;                       // stated image, in m
  std::vector<CRatMat> group_exact;     // per rep block
  std::vector<matrixrep::Mat> group_numeric;
  bool group_is_exact = false;
};

struct ExclusionReport {
  bool excludes = false;
  bool exact = false;
  bool numeric_flagged = false;  // verified in floating point only (surd witness)
  double residual = 0.0;
  int direction = 0;
  double scale = 0.0;
  std::string detail;
};

// True (with report) iff the witness proves the pair carries no loop. Never
// passes silently: every stated condition is re-verified here.
ExclusionReport check_exclusion(const ExclusionWitness& w, const Subspace& h, const Subspace& m,
                                const matrixrep::MatrixRep& rep, double numeric_tol = 1e-12);

}  // namespace bolcat::involution
