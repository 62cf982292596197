#include "braceops/report.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace braceops;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(BRACEOPS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("fixture files are byte-identical to the embedded corpus") {
  fs::path dir(BRACEOPS_FIXTURE_DIR);
  size_t found = 0;
  for (const corpus::Entry& e : corpus::entries) {
    fs::path p = dir / (std::string(e.name) + ".fix");
    INFO(p.string());
    REQUIRE(fs::is_regular_file(p));
    CHECK(slurp(p) == std::string(e.text));
    ++found;
  }
  CHECK(found == corpus::entries.size());

  // and no stray fixture files exist beside them
  size_t on_disk = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".fix") ++on_disk;
  CHECK(on_disk == found);
}

TEST_CASE("verification report is deterministic across thread counts") {
  VerifyOptions a;
  a.max_n = 2;
  a.threads = 1;
  VerifyOptions b = a;
  b.threads = 4;
  VerifyReport ra = run_verify(a);
  VerifyReport rb = run_verify(b);
  CHECK(ra.all_passed());
  CHECK(rb.all_passed());
  CHECK(report_to_json(ra).dump(2) == report_to_json(rb).dump(2));
}

TEST_CASE("report schema") {
  VerifyOptions o;
  o.max_n = 2;
  o.suites = {"dg-axioms", "spectral"};
  VerifyReport r = run_verify(o);
  ordered_json doc = report_to_json(r);

  CHECK(doc["version"] == kVersion);
  CHECK(doc["n"] == 2);
  CHECK(doc["sign_convention"] ==
        "slot=front below=+1 above=+1 split=+1 order=host-first insert=+1");
  CHECK(doc["dims"]["br(2)"]["-1"] == 2);
  CHECK(doc["dims"]["br(2)"]["0"] == 2);
  CHECK(doc["pages"]["n=2"]["E1"]["q=2,d=0"] == 2);
  REQUIRE(doc["checks"].is_array());
  // calibration checks always lead
  CHECK(doc["checks"][0]["name"] == "calibration/unique-convention");
  CHECK(doc["checks"][0]["status"] == "pass");
  for (const auto& c : doc["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("status"));
    CHECK(c.contains("payload"));
  }
  // no timings anywhere in the document
  CHECK(doc.dump().find("seconds") == std::string::npos);
  CHECK(doc.dump().find("elapsed") == std::string::npos);
}

TEST_CASE("suite selection") {
  VerifyOptions o;
  o.max_n = 2;
  o.suites = {"xi"};
  VerifyReport r = run_verify(o);
  bool has_xi = false;
  for (const CheckResult& c : r.checks) {
    bool calib = c.name.rfind("calibration/", 0) == 0;
    bool xi = c.name.rfind("xi/", 0) == 0;
    CHECK((calib || xi));
    has_xi = has_xi || xi;
  }
  CHECK(has_xi);
}

TEST_CASE("arity-5 checks are excluded by default and from the verdict") {
  VerifyOptions o;
  o.max_n = 1;
  o.suites = {"dg-axioms"};
  VerifyReport r = run_verify(o);
  for (const CheckResult& c : r.checks) CHECK(c.name.rfind("n5-", 0) != 0);

  // a failing n5 check must not flip the verdict
  VerifyReport fake = r;
  fake.checks.push_back({"n5-synthetic", false, ordered_json::object()});
  CHECK(fake.all_passed());
  fake.checks.push_back({"synthetic", false, ordered_json::object()});
  CHECK(!fake.all_passed());
}

TEST_CASE("command line exit codes") {
  CHECK(run_cli("dims --n 2") == 0);
  CHECK(run_cli("cohomology --n 2 --which br") == 0);
  CHECK(run_cli("verify --suite dg-axioms --max-n 2") == 0);
  CHECK(run_cli(std::string("fixtures --dir ") + BRACEOPS_FIXTURE_DIR) == 0);

  CHECK(run_cli("dims") == 3);                    // missing required option
  CHECK(run_cli("nonsense") == 3);                // unknown subcommand
  CHECK(run_cli("dims --n 99") == 3);             // out of range
  CHECK(run_cli("verify --suite bogus") == 3);    // unknown suite

  fs::path empty = fs::temp_directory_path() / "braceops_empty_fixtures";
  fs::create_directories(empty);
  CHECK(run_cli("fixtures --dir " + empty.string()) == 3);  // no .fix files
  fs::remove_all(empty);
}

TEST_CASE("command line JSON output is atomic and stable") {
  fs::path out1 = fs::temp_directory_path() / "braceops_report_a.json";
  fs::path out2 = fs::temp_directory_path() / "braceops_report_b.json";
  REQUIRE(run_cli("verify --max-n 2 --threads 1 --json " + out1.string()) == 0);
  REQUIRE(run_cli("verify --max-n 2 --threads 3 --json " + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!fs::exists(out1.string() + ".tmp"));
  fs::remove(out1);
  fs::remove(out2);
}
