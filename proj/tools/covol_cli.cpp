// covol: command-line front end for the covolume / non-freeness engine.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "covol/cache.hpp"
#include "covol/error.hpp"
#include "covol/freeness.hpp"
#include "covol/hermitian.hpp"
#include "covol/report.hpp"

namespace {

using covol::Errc;
using covol::Error;
using nlohmann::json;

enum Exit { kOk = 0, kParse = 2, kInvariant = 3, kInternal = 4, kUndecided = 5 };

int exit_code(Errc code) {
  switch (code) {
    case Errc::ParseError: return kParse;
    case Errc::RationalityViolation:
    case Errc::ExampleMismatch: return kInternal;
    case Errc::UndecidedComparison: return kUndecided;
    default: return kInvariant;
  }
}

struct RunConfig {
  std::string command;
  std::string input;
  long D = 7;
  int n = 3;
  int n_max = 200;
  std::string N_max = "1000";
  std::string slope;
  unsigned precision = 30;
  std::string format = "json";
  std::string cache_path;
  unsigned jobs = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

covol::Rational parse_rational(const std::string& s) {
  covol::Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) throw Error(Errc::ParseError, "bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

covol::Integer parse_integer(const std::string& s) {
  covol::Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) throw Error(Errc::ParseError, "bad integer '" + s + "'");
  return z;
}

// Returns (report, exit status) for the configured command.
std::pair<json, int> run(const RunConfig& cfg, const std::string& input_text) {
  using namespace covol;
  const unsigned digits = cfg.precision;
  if (cfg.command == "volume" || cfg.command == "criterion") {
    auto L = hermitian::parse_lattice(input_text);
    if (cfg.command == "volume") return {report::volume_report(L, digits), kOk};
    return {report::criterion_report(freeness::nonfree_criterion(L), digits), kOk};
  }
  if (cfg.command == "scan") return {report::threshold_report(freeness::threshold_scan(cfg.D, cfg.n_max, cfg.jobs), digits), kOk};
  if (cfg.command == "reflective") {
    if (!arith::is_valid_discriminant(cfg.D)) hermitian::make_field(cfg.D);
    if (cfg.n < 3) throw Error(Errc::InvariantViolation, "n must exceed 2");
    return {report::slope_report(freeness::reflective_check(cfg.n, cfg.D, parse_rational(cfg.slope)), digits), kOk};
  }
  if (cfg.command == "exceptions") {
    Integer N_max = parse_integer(cfg.N_max);
    return {report::exceptions_report(cfg.D, N_max, freeness::exception_ranges(3, cfg.D, N_max, cfg.jobs)), kOk};
  }
  if (cfg.command == "cubic") {
    auto rep = freeness::cubic_example();
    return {report::cubic_report(rep, digits), rep.verdict == "NOT_FREE" ? kOk : kInternal};
  }
  throw Error(Errc::ParseError, "unknown command " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covolumes of SU(L) for Hermitian lattices and non-freeness criteria"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision, "decimal digits in numeric output")->check(CLI::Range(15u, 10000u));
    sub->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--cache", cfg.cache_path, "JSON-lines result cache (COVOLUME_CACHE overrides)");
    sub->add_option("--jobs", cfg.jobs, "worker threads for scans")->check(CLI::Range(1u, 1024u));
  };

  auto* volume = app.add_subcommand("volume", "exact SU(L) covolume of a lattice file");
  volume->add_option("--input", cfg.input, "lattice JSON file")->required();
  auto* criterion = app.add_subcommand("criterion", "non-freeness criterion for a lattice file");
  criterion->add_option("--input", cfg.input, "lattice JSON file")->required();
  auto* scan = app.add_subcommand("scan", "threshold n0 with f(n,D,1) < 1 on [n0, n_max]");
  scan->add_option("--D", cfg.D, "discriminant magnitude")->required();
  scan->add_option("--n-max", cfg.n_max, "largest n scanned")->required();
  auto* reflective = app.add_subcommand("reflective", "slope bound g(n,D) for reflective forms");
  reflective->add_option("--n", cfg.n)->required();
  reflective->add_option("--D", cfg.D)->required();
  reflective->add_option("--slope", cfg.slope, "rational slope, e.g. 1/102")->required();
  auto* exceptions = app.add_subcommand("exceptions", "finite candidate set (n, D, N) outside the bound");
  exceptions->add_option("--D,--D-max", cfg.D, "largest discriminant magnitude")->required();
  exceptions->add_option("--N-max", cfg.N_max, "largest N(L)")->required();
  auto* cubic = app.add_subcommand("cubic", "cubic threefold example over the Eisenstein integers");
  for (auto* sub : {volume, criterion, scan, reflective, exceptions, cubic}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (const char* env = std::getenv("COVOLUME_CACHE"); env && *env) cfg.cache_path = env;

  try {
    const std::string input_text = cfg.input.empty() ? std::string() : read_file(cfg.input);
    json params = {{"D", cfg.D}, {"n", cfg.n}, {"n_max", cfg.n_max}, {"N_max", cfg.N_max},
                   {"slope", cfg.slope}, {"precision", cfg.precision}};
    const std::string key = covol::cache::content_hash(std::string(covol::report::kCodeVersion) + "\n" + cfg.command +
                                                       "\n" + params.dump() + "\n" + input_text);
    std::optional<covol::cache::ReportCache> store;
    if (!cfg.cache_path.empty()) store.emplace(cfg.cache_path);

    json doc;
    int status = kOk;
    if (store) {
      if (auto hit = store->lookup(key)) {
        doc = (*hit)["doc"];
        status = (*hit)["status"].get<int>();
      }
    }
    if (doc.is_null()) {
      std::tie(doc, status) = run(cfg, input_text);
      if (store) store->store(key, json{{"doc", doc}, {"status", status}});
    }
    std::cout << covol::report::render(doc, cfg.format);
    if (status == kInternal) std::cerr << "EXAMPLE_MISMATCH: see report\n";
    return status;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
