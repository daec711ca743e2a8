// bolcat: verify the Lie algebra tables, run the loop property suites,
// reproduce the coset counterexamples, and replay the classification.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "bolcat/catalog.hpp"

namespace {

using namespace bolcat;

int kExitOk = 0;
int kExitVerifyFail = 1;
int kExitConfig = 2;

struct CommonOpts {
  std::string data;
  std::string format = "text";
  std::string out;
};

void write_out(const CommonOpts& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
}

std::filesystem::path data_dir(const CommonOpts& c) {
  return c.data.empty() ? catalog::default_data_dir() : std::filesystem::path(c.data);
}

nlohmann::ordered_json suite_json(const loopcore::SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["group"] = r.group;
  j["samples"] = r.samples;
  j["tolerance"] = r.tolerance;
  j["max_residual"] = r.max_residual;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["witnesses"] = r.witnesses;
  return j;
}

int cmd_verify_tables(const CommonOpts& c) {
  catalog::Catalog cat;
  try {
    cat = catalog::load_catalog(data_dir(c));
  } catch (const catalog::CatalogError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    // distinguish IO problems from verification failures
    std::string msg = e.what();
    if (msg.find("no catalog directory") != std::string::npos ||
        msg.find("is empty") != std::string::npos || msg.find("cannot open") != std::string::npos)
      return kExitConfig;
    return kExitVerifyFail;
  }
  std::ostringstream os;
  os << "all tables verified: " << cat.entries.size() << " groups\n";
  for (const auto& e : cat.entries) {
    os << "  " << e.group_tag << " (dim " << e.dim << "): Jacobi exact, realization exact, "
       << e.involutions.size() << " involutions, " << e.spaces.size() << " spaces";
    if (e.group_tag == "su21") {
      if (auto J = matrixrep::recover_invariant_form(*e.rep))
        os << ", invariant form diag(" << to_string((*J)(0, 0)) << "," << to_string((*J)(1, 1))
           << "," << to_string((*J)(2, 2)) << ")";
    }
    os << "\n";
  }
  write_out(c, os.str());
  return kExitOk;
}

int cmd_loop_suite(const CommonOpts& c, const std::string& group, int samples, double tol,
                   uint64_t seed) {
  auto cat = catalog::load_catalog(data_dir(c));
  auto loop = catalog::named_loop(cat, group);
  auto reports = loopcore::full_suite(loop, samples, tol, seed);
  bool pass = true;
  if (c.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      j.push_back(suite_json(r));
      pass = pass && r.pass;
    }
    write_out(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& r : reports) {
      os << (r.pass ? "[pass] " : "[FAIL] ") << r.group << " " << r.suite << "  samples "
         << r.samples << "  tol " << r.tolerance << "  max residual " << r.max_residual << "\n";
      pass = pass && r.pass;
    }
    write_out(c, os.str());
  }
  return pass ? kExitOk : kExitVerifyFail;
}

int cmd_reproduce(const CommonOpts& c, const std::string& which, double d,
                  const std::vector<double>& rs) {
  auto cat = catalog::load_catalog(data_dir(c));
  loopcore::ReproduceReport r;
  if (which == "lemma7")
    r = loopcore::reproduce_lemma7(cat.entry("sl2r").rep);
  else if (which == "prop12")
    r = loopcore::reproduce_prop12(cat.entry("sl3r").rep, d);
  else if (which == "prop19")
    r = loopcore::reproduce_prop19(cat.entry("sl2c_sl2r").rep,
                                   rs.empty() ? std::vector<double>{0, 1, -1, 2} : rs);
  else {
    std::cerr << "unknown reproducer " << which << " (expected lemma7|prop12|prop19)\n";
    return kExitConfig;
  }
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["rows"] = r.rows;
    j["facts"] = r.facts;
    write_out(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << r.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
    for (const auto& row : r.rows) os << "  " << row << "\n";
    for (const auto& [k, v] : r.facts) os << "  " << k << ": " << v << "\n";
    write_out(c, os.str());
  }
  return r.pass ? kExitOk : kExitVerifyFail;
}

int cmd_classify(const CommonOpts& c, int max_dim, uint64_t seed, int samples, double tol) {
  auto cat = catalog::load_catalog(data_dir(c));
  catalog::ClassifyOptions opts;
  opts.seed = seed;
  opts.suite_samples = samples;
  opts.suite_tol = tol;
  auto verdicts = catalog::run_classification(cat, max_dim, opts);
  write_out(c, catalog::emit_report(verdicts, max_dim, c.format));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification tool for Bol loop sections in low-dimensional semisimple groups"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts common;
  app.add_option("--data", common.data, "catalog data directory");
  app.add_option("--format", common.format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", common.out, "write the report to a file");

  auto* verify = app.add_subcommand("verify-tables", "exact checks of every catalog table");

  std::string group = "h2";
  int samples = 1000;
  double tol = 1e-8;
  uint64_t seed = 0;
  auto* suite = app.add_subcommand("loop-suite", "run the loop property suites");
  suite->add_option("--group", group, "loop name (see --list)");
  suite->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
  suite->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
  suite->add_option("--seed", seed, "random seed");
  bool list = false;
  suite->add_flag("--list", list, "list available loops");

  std::string which;
  double dparam = 2.0;
  std::vector<double> rparams;
  auto* repro = app.add_subcommand("reproduce", "run a coset counterexample reproducer");
  repro->add_option("which", which, "lemma7|prop12|prop19")->required();
  repro->add_option("--d", dparam, "spiral family parameter (> 1)");
  repro->add_option("--r", rparams, "parameter sweep for the product families");

  int max_dim = 9;
  int csamples = 200;
  double ctol = 1e-8;
  uint64_t cseed = 0;
  auto* classify = app.add_subcommand("classify", "replay the classification table");
  classify->add_option("--max-dim", max_dim, "largest group dimension to include");
  classify->add_option("--samples", csamples, "loop suite samples per survivor")
      ->check(CLI::PositiveNumber);
  classify->add_option("--tol", ctol, "loop suite tolerance")->check(CLI::PositiveNumber);
  classify->add_option("--seed", cseed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (verify->parsed()) return cmd_verify_tables(common);
    if (suite->parsed()) {
      if (list) {
        for (const auto& n : bolcat::catalog::named_loops()) std::cout << n << "\n";
        return kExitOk;
      }
      return cmd_loop_suite(common, group, samples, tol, seed);
    }
    if (repro->parsed()) return cmd_reproduce(common, which, dparam, rparams);
    if (classify->parsed()) return cmd_classify(common, max_dim, cseed, csamples, ctol);
  } catch (const bolcat::catalog::CatalogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::string msg = e.what();
    if (msg.find("no catalog directory") != std::string::npos ||
        msg.find("is empty") != std::string::npos ||
        msg.find("max_dim exceeds") != std::string::npos ||
        msg.find("unknown loop") != std::string::npos)
      return kExitConfig;
    return kExitVerifyFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitConfig;
}
