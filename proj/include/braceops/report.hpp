#pragma once

// Verification suites: runs the laboratory checks in a fixed, deterministic
// order (optionally on a small thread pool), collects typed pass/fail
// results, and serializes them to a stable JSON document.  The document
// contains no timing or environment data, so two runs with different thread
// counts produce byte-identical output.

#include "braceops/lab.hpp"

#include <json.hpp>

#include <atomic>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace braceops {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

struct CheckResult {
  std::string name;
  bool passed = false;
  ordered_json payload;  // small deterministic facts about the check
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"dg-axioms", "ger-relations", "vcirc",
                                          "vbul",      "spectral",      "shuffle-claim",
                                          "xi",        "final"};
  return s;
}

struct VerifyOptions {
  std::vector<std::string> suites = all_suites();
  int max_n = 4;
  int threads = 1;
  bool include_n5 = false;  // adds the best-effort arity-5 checks ("n5-" prefix)
};

struct VerifyReport {
  VerifyOptions opts;
  std::vector<CheckResult> checks;
  std::map<int, SpectralReport> spectral;  // kept for the "pages" section

  // n5-prefixed checks are best-effort and do not affect the verdict.
  bool all_passed() const {
    for (const CheckResult& c : checks)
      if (!c.passed && c.name.rfind("n5-", 0) != 0) return false;
    return true;
  }
};

namespace detail {

inline std::string json_int_key(int v) { return std::to_string(v); }

inline ordered_json dims_to_json(const std::map<int, int>& m) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : m) out[json_int_key(k)] = v;
  return out;
}

inline ordered_json page_to_json(const std::map<std::pair<int, int>, int>& page) {
  ordered_json out = ordered_json::object();
  for (const auto& [qd, e] : page)
    out["q=" + std::to_string(qd.first) + ",d=" + std::to_string(qd.second)] = e;
  return out;
}

struct Job {
  std::string id;
  std::function<void()> run;  // fills the slots captured by reference
};

// Runs jobs on `threads` workers; results land in preallocated slots, so
// the output order is the job order regardless of scheduling.
inline void run_jobs(std::vector<Job>& jobs, int threads) {
  if (threads <= 1) {
    for (Job& j : jobs) j.run();
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      jobs[i].run();
    }
  };
  std::vector<std::thread> pool;
  int k = std::min<int>(threads, static_cast<int>(jobs.size()));
  for (int i = 0; i < k; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport rep;
  rep.opts = opts;
  const SignConvention conv = calibrated();  // initialize before threading

  auto want = [&](const std::string& s) {
    for (const auto& x : opts.suites)
      if (x == s) return true;
    return false;
  };

  // Each job computes a contiguous block of checks; blocks are concatenated
  // in declaration order afterwards.
  std::vector<std::vector<CheckResult>> blocks;
  std::vector<detail::Job> jobs;
  auto add_job = [&](const std::string& id, std::function<void(std::vector<CheckResult>&)> f) {
    blocks.emplace_back();
    size_t slot = blocks.size() - 1;
    jobs.push_back(detail::Job{id, [&, slot, id, f] {
                                 try {
                                   f(blocks[slot]);
                                 } catch (const std::exception& e) {
                                   blocks[slot].push_back(
                                       {id + "/exception", false, {{"error", e.what()}}});
                                 }
                               }});
  };

  // calibration always runs: everything downstream depends on it
  add_job("calibration", [&](std::vector<CheckResult>& out) {
    out.push_back({"calibration/unique-convention", true,
                   {{"convention", sign_convention_str(conv)}}});
    bool corpus_ok = true;
    for (const corpus::Entry& e : corpus::entries) {
      Fixture f = parse_fixture(e.name, e.text);
      if (eval_fixture(f, conv) != f.expected) corpus_ok = false;
    }
    out.push_back({"calibration/corpus", corpus_ok,
                   {{"fixtures", static_cast<int>(corpus::entries.size())}}});
  });

  if (want("dg-axioms"))
    add_job("dg-axioms", [&, opts](std::vector<CheckResult>& out) {
      DgAxiomsReport r = verify_dg_axioms(opts.max_n, conv);
      ordered_json p{{"max_n", opts.max_n}};
      out.push_back({"dg-axioms/delta-squared", r.delta_squared_zero, p});
      out.push_back({"dg-axioms/dual-transpose", r.dual_is_transpose, p});
      out.push_back({"dg-axioms/leibniz", r.leibniz, {{"max_total_arity", 4}}});
      out.push_back({"dg-axioms/equivariance", r.act_commutes, p});
    });

  if (want("ger-relations"))
    add_job("ger-relations", [&](std::vector<CheckResult>& out) {
      GerRelationsReport r = verify_ger_relations(conv);
      out.push_back({"ger-relations/jacobi", r.jacobi_zero, ordered_json::object()});
      out.push_back({"ger-relations/assoc-homotopy", r.assoc_homotopy,
                     {{"witness_terms", r.assoc_witness_terms}}});
      out.push_back({"ger-relations/leibniz-homotopy", r.leibniz_homotopy,
                     {{"witness_terms", r.leibniz_witness_terms}}});
      out.push_back(
          {"ger-relations/leibniz-cup-exact", r.leibniz_cup_exact, ordered_json::object()});
    });

  if (want("vcirc"))
    for (int n = 2; n <= opts.max_n; ++n)
      add_job("vcirc/n=" + std::to_string(n), [&, n](std::vector<CheckResult>& out) {
        VcircDualReport r = verify_vcirc_dual(n, 20, conv);
        std::string p = "vcirc/n=" + std::to_string(n);
        out.push_back({p + "/concentrated", r.concentrated, {{"h", detail::dims_to_json(r.h)}}});
        out.push_back({p + "/string-classes", r.strings_independent,
                       {{"classes", factorial(n)}}});
        out.push_back({p + "/reductions", r.reductions_ok,
                       {{"samples", r.reductions_checked}}});
      });

  if (want("vbul"))
    for (int n = 2; n <= opts.max_n; ++n)
      add_job("vbul/n=" + std::to_string(n), [&, n](std::vector<CheckResult>& out) {
        VbulReport r = verify_vbul(n, conv);
        out.push_back({"vbul/n=" + std::to_string(n) + "/cohomology", r.ok(),
                       {{"h", detail::dims_to_json(r.h)},
                        {"predicted", detail::dims_to_json(r.predicted)}}});
      });

  std::vector<std::pair<int, SpectralReport>> spectral_slots;
  if (want("spectral")) {
    for (int n = 2; n <= opts.max_n; ++n) spectral_slots.emplace_back(n, SpectralReport{});
    for (size_t si = 0; si < spectral_slots.size(); ++si) {
      int n = spectral_slots[si].first;
      add_job("spectral/n=" + std::to_string(n), [&, n, si](std::vector<CheckResult>& out) {
        SpectralReport r = spectral_pages(n, conv);
        spectral_slots[si].second = r;
        std::string p = "spectral/n=" + std::to_string(n);
        out.push_back({p + "/e1-prediction", r.e1_ok,
                       {{"e1", detail::page_to_json(r.pages.at(1))}}});
        out.push_back({p + "/e2-prediction", r.e2_ok,
                       {{"e2", detail::page_to_json(r.pages.at(2))}}});
        out.push_back({p + "/degeneration", r.stable_from_2,
                       {{"pages_computed", static_cast<int>(r.pages.size())}}});
        out.push_back({p + "/limit-vs-cohomology", r.einf_matches_h, ordered_json::object()});
      });
    }
    // corolla-class completions, the witnesses behind the degeneration
    struct UqCase {
      int n, q;
      std::vector<int> parts;
    };
    std::vector<UqCase> cases;
    if (opts.max_n >= 3) cases.push_back({3, 3, {1, 1, 1}});
    if (opts.max_n >= 4) {
      cases.push_back({4, 3, {1, 1, 2}});
      cases.push_back({4, 3, {1, 2, 1}});
      cases.push_back({4, 3, {2, 1, 1}});
      cases.push_back({4, 4, {1, 1, 1, 1}});
    }
    for (const UqCase& c : cases) {
      std::string id = "spectral/n=" + std::to_string(c.n) + "/corolla-completion-q=" +
                       std::to_string(c.q) + "-parts=";
      for (size_t i = 0; i < c.parts.size(); ++i)
        id += (i ? "." : "") + std::to_string(c.parts[i]);
      add_job(id, [&, c, id](std::vector<CheckResult>& out) {
        UqReport r = verify_u_q(c.n, c.q, c.parts, conv);
        out.push_back({id, r.ok(),
                       {{"differential_in_low_filtration", r.in_low_filtration},
                        {"completion_found", r.completion_found},
                        {"witness_terms", r.witness_terms}}});
      });
    }
  }

  if (want("shuffle-claim"))
    for (int n = 2; n <= opts.max_n; ++n)
      add_job("shuffle-claim/n=" + std::to_string(n), [&, n](std::vector<CheckResult>& out) {
        ShuffleClaimReport r = verify_shuffle_claim(n, conv);
        out.push_back({"shuffle-claim/n=" + std::to_string(n), r.ok(),
                       {{"pairs", r.pairs_checked},
                        {"cocycles", r.cocycles_ok},
                        {"pairings", r.pairings_ok},
                        {"memberships", r.memberships_ok}}});
      });

  if (want("xi")) {
    for (int n = 2; n <= opts.max_n; ++n)
      add_job("xi/n=" + std::to_string(n), [&, n](std::vector<CheckResult>& out) {
        std::string p = "xi/n=" + std::to_string(n);
        XiReport r = verify_xi(n, conv);
        out.push_back({p + "/generators", r.count == r.expected_count,
                       {{"count", r.count}, {"expected", r.expected_count}}});
        out.push_back({p + "/classes", r.cocycles_ok && r.independent_mod_image,
                       {{"cocycles", r.cocycles_ok},
                        {"independent_mod_image", r.independent_mod_image}}});
        out.push_back({p + "/word-injectivity", r.g_injective, ordered_json::object()});
        WordsReport w = verify_words(n, conv);
        out.push_back({p + "/word-side", w.ok(),
                       {{"g_kills_sector_dual", w.g_kills_d0},
                        {"leading_formula", w.leading_formula_ok}}});
      });
    add_job("xi/colie", [&](std::vector<CheckResult>& out) {
      ordered_json dims = ordered_json::object();
      bool ok = true;
      for (int n = 2; n <= 5; ++n) {
        int c = colie_dim(n);
        dims[detail::json_int_key(n)] = c;
        if (c != factorial(n - 1)) ok = false;
      }
      out.push_back({"xi/colie-dims", ok, {{"dims", dims}}});
    });
  }

  if (want("final"))
    for (int n = 1; n <= opts.max_n; ++n)
      add_job("final/n=" + std::to_string(n), [&, n](std::vector<CheckResult>& out) {
        std::string p = "final/n=" + std::to_string(n);
        EulerReport eu = euler_check(n);
        out.push_back({p + "/euler", eu.ok(),
                       {{"chi", static_cast<int>(eu.chi_br)}}});
        FinalReport r = verify_final_assembly(n, conv);
        out.push_back({p + "/cohomology-matches", r.h_matches_ger,
                       {{"h", detail::dims_to_json(r.h)},
                        {"expected", detail::dims_to_json(r.ger)}}});
        if (n >= 2) {
          out.push_back({p + "/sector-gluing",
                         r.ker_connecting == r.expected_ker && r.sector_assembly_ok,
                         {{"connecting_kernel", r.ker_connecting},
                          {"expected_kernel", r.expected_ker}}});
          out.push_back({p + "/monomial-classes", r.psi_independent,
                         {{"classes", factorial(n)}}});
          out.push_back({p + "/lie-words", r.lie_images_ok,
                         {{"classes", factorial(n - 1)}}});
        }
      });

  if (opts.include_n5) {
    add_job("n5-cohomology", [&](std::vector<CheckResult>& out) {
      std::map<int, int> h = h_br(5);
      std::map<int, int> expected = ger_dims(5);
      out.push_back({"n5-cohomology", h == expected,
                     {{"h", detail::dims_to_json(h)},
                      {"expected", detail::dims_to_json(expected)}}});
    });
    add_job("n5-colie", [&](std::vector<CheckResult>& out) {
      int c = colie_dim(5);
      out.push_back({"n5-colie", c == 24, {{"dim", c}, {"expected", 24}}});
    });
  }

  detail::run_jobs(jobs, opts.threads);
  for (const auto& b : blocks)
    for (const CheckResult& c : b) rep.checks.push_back(c);
  for (auto& [n, r] : spectral_slots) rep.spectral.emplace(n, std::move(r));
  return rep;
}

// The stable JSON document.  Field order is fixed; no timings, hostnames or
// thread counts appear, so the bytes depend only on the mathematics.
inline ordered_json report_to_json(const VerifyReport& rep) {
  ordered_json doc;
  doc["version"] = kVersion;
  doc["n"] = rep.opts.max_n;
  doc["sign_convention"] = sign_convention_str(calibrated());

  ordered_json dims = ordered_json::object();
  for (int n = 1; n <= rep.opts.max_n; ++n) {
    for (auto [which, sec] :
         {std::pair{std::string("br"), Sector::all}, {std::string("vcirc"), Sector::vcirc},
          {std::string("vbul"), Sector::vbul}}) {
      std::map<int, int> d;
      for (const BraceTree& t : enumerate_basis(n, std::nullopt, sec)) ++d[degree(t)];
      if (!d.empty()) dims[which + "(" + std::to_string(n) + ")"] = detail::dims_to_json(d);
    }
  }
  doc["dims"] = dims;

  ordered_json pages = ordered_json::object();
  for (const auto& [n, sr] : rep.spectral) {
    ordered_json entry = ordered_json::object();
    for (const auto& [r, page] : sr.pages)
      entry["E" + std::to_string(r)] = detail::page_to_json(page);
    pages["n=" + std::to_string(n)] = entry;
  }
  doc["pages"] = pages;

  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : rep.checks)
    checks.push_back(ordered_json{
        {"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"payload", c.payload}});
  doc["checks"] = checks;
  return doc;
}

}  // namespace braceops
