// braceops: exact computations in the braces operad.
//
// Subcommands
//   dims        basis dimensions per degree, as CSV
//   cohomology  exact cohomology of a complex, as CSV (optionally JSON)
//   spectral    pages of the bottom-vertex filtration spectral sequence
//   verify      the full verification suites with a stable JSON report
//   fixtures    re-evaluate fixture files from a directory
//
// Exit codes: 0 success, 1 verification failure, 2 calibration/fixture
// failure, 3 usage or I/O error.

#include "braceops/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace braceops;

int env_threads() {
  const char* v = std::getenv("BRACEOPS_THREADS");
  if (!v) return 1;
  int k = std::atoi(v);
  return k >= 1 ? k : 1;
}

// Writes atomically: a partial file never replaces an existing report.
bool write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    if (!out) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

std::map<int, int> basis_dims(int n, Sector sec, bool dual) {
  std::map<int, int> d;
  for (const BraceTree& t : enumerate_basis(n, std::nullopt, sec))
    ++d[dual ? dual_degree(t) : degree(t)];
  return d;
}

int cmd_dims(int n, const std::string& sector, bool dual) {
  Sector sec = sector == "vcirc"  ? Sector::vcirc
               : sector == "vbul" ? Sector::vbul
                                  : Sector::all;
  std::string name = sector == "all" ? "br" : sector;
  if (dual) name += "*";
  std::cout << "n,complex,degree,dim\n";
  for (const auto& [deg, dim] : basis_dims(n, sec, dual))
    std::cout << n << "," << name << "," << deg << "," << dim << "\n";
  return 0;
}

int cmd_cohomology(int n, const std::string& which, bool dual, const std::string& json_path) {
  Complex c;
  if (which == "br")
    c = dual ? Complex::br_dual : Complex::br;
  else if (which == "vcirc")
    c = dual ? Complex::vcirc_dual : Complex::vcirc;
  else if (which == "vbul")
    c = dual ? Complex::vbul_dual : Complex::vbul;
  else
    return 3;

  AssembledComplex ac = assemble(n, c);
  std::map<int, int> h = ac.gc.cohomology_dims();
  std::cout << "n,complex,degree,dim\n";
  for (const auto& [deg, dim] : h)
    std::cout << n << "," << complex_name(c) << "," << deg << "," << dim << "\n";

  if (!json_path.empty()) {
    ordered_json doc;
    doc["version"] = kVersion;
    doc["n"] = n;
    doc["complex"] = complex_name(c);
    doc["sign_convention"] = sign_convention_str(calibrated());
    doc["h"] = detail::dims_to_json(h);
    if (!write_file_atomic(json_path, doc.dump(2) + "\n")) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return 3;
    }
  }
  return 0;
}

int cmd_spectral(int n) {
  SpectralReport r = spectral_pages(n);
  for (const auto& [page, entries] : r.pages) {
    std::cout << "E" << page << ":";
    for (const auto& [qd, e] : entries)
      std::cout << "  (q=" << qd.first << ", d=" << qd.second << "): " << e;
    std::cout << "\n";
  }
  std::cout << "e1-prediction: " << (r.e1_ok ? "pass" : "fail") << "\n"
            << "e2-prediction: " << (r.e2_ok ? "pass" : "fail") << "\n"
            << "degeneration:  " << (r.stable_from_2 ? "pass" : "fail") << "\n"
            << "limit-vs-cohomology: " << (r.einf_matches_h ? "pass" : "fail") << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_verify(std::vector<std::string> suites, int max_n, int threads, bool n5,
               const std::string& json_path) {
  bool all = suites.empty();
  for (const std::string& s : suites)
    if (s == "all") all = true;
  VerifyOptions opts;
  if (!all) opts.suites = suites;
  opts.max_n = max_n;
  opts.threads = threads;
  opts.include_n5 = n5;

  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep = run_verify(opts);
  auto t1 = std::chrono::steady_clock::now();

  for (const CheckResult& c : rep.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
  int failed = 0;
  for (const CheckResult& c : rep.checks)
    if (!c.passed) ++failed;
  std::cout << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed\n";
  std::cerr << "verify: " << std::chrono::duration<double>(t1 - t0).count() << "s, threads="
            << threads << "\n";

  if (!json_path.empty()) {
    if (!write_file_atomic(json_path, report_to_json(rep).dump(2) + "\n")) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return 3;
    }
  }
  return rep.all_passed() ? 0 : 1;
}

int cmd_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    std::cerr << "error: not a directory: " << dir << "\n";
    return 3;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".fix")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no .fix files in " << dir << "\n";
    return 3;
  }
  int failures = 0;
  for (const fs::path& p : files) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      Fixture f = parse_fixture(p.stem().string(), ss.str());
      TreeVector got = eval_fixture(f, calibrated());
      bool ok = got == f.expected;
      std::cout << (ok ? "PASS " : "FAIL ") << p.filename().string() << "\n";
      if (!ok) ++failures;
    } catch (const std::exception& e) {
      std::cout << "FAIL " << p.filename().string() << " (" << e.what() << ")\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in the braces operad"};
  app.require_subcommand(1);

  int n = 3;
  std::string sector = "all";
  bool dual = false;
  auto* dims = app.add_subcommand("dims", "basis dimensions per degree (CSV)");
  dims->add_option("--n", n, "arity")->required()->check(CLI::Range(1, 8));
  dims->add_option("--sector", sector, "all|vcirc|vbul")
      ->check(CLI::IsMember({"all", "vcirc", "vbul"}));
  dims->add_flag("--dual", dual, "grade by dual degree");

  int cn = 3;
  std::string which = "br";
  bool cdual = false;
  std::string cjson;
  auto* coh = app.add_subcommand("cohomology", "exact cohomology of a complex (CSV)");
  coh->add_option("--n", cn, "arity")->required()->check(CLI::Range(1, 5));
  coh->add_option("--which", which, "br|vcirc|vbul")
      ->check(CLI::IsMember({"br", "vcirc", "vbul"}));
  coh->add_flag("--dual", cdual, "use the dual complex");
  coh->add_option("--json", cjson, "also write a JSON document to this path");

  int sn = 3;
  auto* spec = app.add_subcommand("spectral", "filtration spectral sequence pages");
  spec->add_option("--n", sn, "arity")->required()->check(CLI::Range(2, 4));

  std::vector<std::string> suites;
  int max_n = 4;
  int threads = env_threads();
  bool n5 = false;
  std::string vjson;
  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suites,
                  "dg-axioms|ger-relations|vcirc|vbul|spectral|shuffle-claim|xi|final|all")
      ->check(CLI::IsMember({"dg-axioms", "ger-relations", "vcirc", "vbul", "spectral",
                             "shuffle-claim", "xi", "final", "all"}));
  ver->add_option("--max-n", max_n, "largest arity to verify")->check(CLI::Range(1, 4));
  ver->add_option("--threads", threads, "worker threads (default: BRACEOPS_THREADS or 1)")
      ->check(CLI::Range(1, 64));
  ver->add_flag("--n5", n5, "include the best-effort arity-5 checks (slow)");
  ver->add_option("--json", vjson, "write the JSON report to this path");

  std::string fdir;
  auto* fix = app.add_subcommand("fixtures", "re-evaluate .fix files from a directory");
  fix->add_option("--dir", fdir, "directory with .fix files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    calibrated();  // fail fast if the sign calibration is broken
  } catch (const CalibrationError& e) {
    std::cerr << "calibration error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (dims->parsed()) return cmd_dims(n, sector, dual);
    if (coh->parsed()) return cmd_cohomology(cn, which, cdual, cjson);
    if (spec->parsed()) return cmd_spectral(sn);
    if (ver->parsed()) return cmd_verify(suites, max_n, threads, n5, vjson);
    if (fix->parsed()) return cmd_fixtures(fdir);
  } catch (const CalibrationError& e) {
    std::cerr << "calibration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
