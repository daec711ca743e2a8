#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bolcat/involution.hpp"
#include "bolcat/loopcore.hpp"

namespace bolcat::catalog {

using liealg::LieAlgebra;
using liealg::Subspace;

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A coefficient-entry linear in the declared parameters: c0 + sum_i ci * p_i.
struct ParamLin {
  Rat c0;
  std::map<std::string, Rat> coef;

  Rat eval(const std::map<std::string, Rat>& values) const;
  bool constant() const { return coef.empty(); }
};

struct NamedSpace {
  std::string name;
  std::vector<std::vector<ParamLin>> rows;
  std::vector<std::string> params;          // declared parameter names
  std::vector<std::vector<Rat>> samples;    // sampled parameter tuples
  bool subalgebra = false;                  // validated against is_subalgebra

  bool parametric() const { return !params.empty(); }
  Subspace instance(const LieAlgebra::Ptr& alg, const std::vector<Rat>& sample) const;
  Subspace constant_instance(const LieAlgebra::Ptr& alg) const;
};

struct NamedInvolution {
  std::string name;
  RatMat map;
  std::string plus_space, minus_space;
  std::string cite;
};

struct NamedWitness {
  std::string name;
  std::vector<std::vector<ParamLin>> element_rows;  // single row; params of the h it excludes
  std::vector<std::vector<ParamLin>> target_rows;
  std::vector<CRatMat> group_exact;     // valid when exact
  std::vector<matrixrep::Mat> group_numeric;
  bool exact = false;
};

struct MetadataFact {
  std::string id;
  std::string text;
  std::string cite;
};

struct LoopSpec {
  enum class Kind { Hyperbolic, Scheerer };
  Kind kind = Kind::Hyperbolic;
  std::vector<int> base_blocks;                  // scheerer only
  loopcore::HomSpec::Kind hom = loopcore::HomSpec::Kind::Trivial;
  std::vector<std::vector<Rat>> hom_vectors;     // fiber coordinates, one per base block
};

struct Triple {
  std::string m_name, h_name;
  std::string expect;  // loop | intersection | conjugacy | cosetdoubling | divergence | metadata
  std::vector<std::string> witness_names;
  std::string reproducer;   // lemma7 | prop12_h2 | prop12_h3 | prop19_h5 | prop19_h6 | prop19_h8
  int projection_factor = -1;  // factor carrying the divergence argument
  std::string fact_id;
  std::optional<LoopSpec> loop;
  std::string cite;

  std::string id() const { return m_name + "__" + h_name; }
};

struct CatalogEntry {
  std::string group_tag;
  int dim = 0;
  LieAlgebra::Ptr algebra;
  matrixrep::MatrixRep::Ptr rep;
  std::map<std::string, NamedSpace> spaces;
  std::vector<NamedInvolution> involutions;
  std::map<std::string, NamedWitness> witnesses;
  std::map<std::string, MetadataFact> facts;
  std::vector<Triple> triples;
  std::vector<std::string> notes;
};

struct Catalog {
  std::vector<CatalogEntry> entries;  // sorted by (dim, group_tag)

  const CatalogEntry& entry(const std::string& tag) const;
};

// Parses and validates every entry: Jacobi, realization, involutions and
// their stated eigensplits, subalgebra property of candidate stabilizers
// (at all parameter samples), witness verification, and the Iwasawa facts
// recorded per entry. Any failure throws CatalogError naming the entry and
// the check.
Catalog load_catalog(const std::filesystem::path& dir);
std::filesystem::path default_data_dir();

enum class Status {
  GlobalBruckLoop,
  ExcludedByIntersection,
  ExcludedByConjugacy,
  ExcludedByCosetDoubling,
  ExcludedByDivergence,
  ExcludedByMetadataFact,
};
const char* to_string(Status s);

struct Verdict {
  std::string group;
  int dim = 0;
  std::string triple_id;
  std::string m_name, h_name;
  Status status;
  std::string evidence;
  std::string citation;
  bool numeric_flagged = false;
};

struct ClassifyOptions {
  uint64_t seed = 0;
  int suite_samples = 200;
  double suite_tol = 1e-8;
  double witness_tol = 1e-12;
};

// Replays the classification for all catalog groups of dimension <= max_dim.
// Surviving triples must pass the Bol-triple conditions and the loop property
// suites; every exclusion carries verified evidence or a citation. A triple
// whose stated expectation cannot be established throws CatalogError.
std::vector<Verdict> run_classification(const Catalog& cat, int max_dim,
                                        const ClassifyOptions& opts = {});

std::string emit_report(const std::vector<Verdict>& verdicts, int max_dim,
                        const std::string& format);  // "json" or "text"

// Constructs the loop of a surviving triple (used by the driver and the CLI).
loopcore::Loop::Ptr build_loop(const CatalogEntry& e, const Triple& t);

// Named loops for the CLI / acceptance suites.
loopcore::Loop::Ptr named_loop(const Catalog& cat, const std::string& name);
std::vector<std::string> named_loops();

}  // namespace bolcat::catalog
