// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured values.
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "invgh/pipeline.hpp"
#include "property_suites.hpp"

using namespace invgh;

namespace {

using Clock = std::chrono::steady_clock;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[criterion %d] %s - %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  CHECK_MESSAGE(pass, "criterion ", criterion, ": ", detail);
}

const BenchSuite& suite() {
  static BenchSuite s = load_suite(INVGH_SUITE_DIR);
  return s;
}

// One shared sequential bench run backs criteria 3, 5, 8 and 9.
const std::vector<RunReport>& bench_reports() {
  static std::vector<RunReport> reports = run_bench(suite(), /*jobs=*/1);
  return reports;
}

const RunReport* find_report(const std::string& program, const std::string& mode) {
  for (const auto& r : bench_reports())
    if (r.program == program && r.mode == mode) return &r;
  return nullptr;
}

RunConfig freefall_config(Mode mode, int degree, const std::string& target) {
  RunConfig c;
  c.name = "freefall";
  c.source = read_file(std::string(INVGH_SUITE_DIR) + "/freefall.imp");
  c.mode = mode;
  c.degree = degree;
  c.target = target;
  c.align = true;
  return c;
}

// Exact span membership via Gaussian elimination on coefficient vectors.
bool in_span(const Polynomial& p, const std::vector<Polynomial>& basis) {
  std::set<Monomial> columns;
  for (const auto& [w, c] : p.terms()) columns.insert(w);
  for (const auto& b : basis)
    for (const auto& [w, c] : b.terms()) columns.insert(w);
  std::map<Monomial, size_t> col_of;
  for (const auto& w : columns) col_of.emplace(w, col_of.size());

  auto to_vec = [&](const Polynomial& q) {
    std::vector<Rational> v(col_of.size(), Rational(0));
    for (const auto& [w, c] : q.terms()) v[col_of.at(w)] = c;
    return v;
  };
  std::vector<std::vector<Rational>> rows;  // echelon rows, distinct leads
  auto reduce = [&](std::vector<Rational> v) {
    for (const auto& row : rows) {
      size_t lead = 0;
      while (lead < row.size() && rat_is_zero(row[lead])) ++lead;
      if (lead < v.size() && !rat_is_zero(v[lead])) {
        Rational f = v[lead] / row[lead];
        for (size_t i = lead; i < v.size(); ++i) v[i] -= f * row[i];
      }
    }
    return v;
  };
  for (const auto& b : basis) {
    std::vector<Rational> v = reduce(to_vec(b));
    if (std::any_of(v.begin(), v.end(), [](const Rational& r) { return !rat_is_zero(r); })) {
      rows.push_back(std::move(v));
      std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        size_t la = 0, lb = 0;
        while (la < a.size() && rat_is_zero(a[la])) ++la;
        while (lb < b.size() && rat_is_zero(b[lb])) ++lb;
        return la < lb;
      });
    }
  }
  std::vector<Rational> r = reduce(to_vec(p));
  return std::all_of(r.begin(), r.end(), [](const Rational& c) { return rat_is_zero(c); });
}

}  // namespace

TEST_CASE("criterion 1: freefall degree-2 GH synthesis returns the velocity invariant") {
  auto start = Clock::now();
  PipelineRun run = run_pipeline(freefall_config(Mode::GH, 2, "v"));
  double secs = std::chrono::duration<double>(Clock::now() - start).count();

  MonomialOrder order = run.program.order();
  Polynomial p1 = parse_polynomial("-g*t + g*t0 - v + v0 - x*rho + x0*rho");
  std::string expected = normalize_invariant(p1, order).to_string(order);

  bool pass = run.report.status == "Found" && run.report.invariants.size() == 1 &&
              run.report.invariants[0] == expected && secs < 5.0;
  report(1, pass,
         "status=" + run.report.status + ", invariant=" +
             (run.report.invariants.empty() ? "-" : run.report.invariants[0]) + ", " +
             std::to_string(secs) + "s");
}

TEST_CASE("criterion 2: freefall degree-3 GH solution space contains the quadratic candidate") {
  RunConfig config = freefall_config(Mode::GH, 3, "x");
  config.emit_basis = true;
  PipelineRun run = run_pipeline(config);

  std::vector<Polynomial> basis;
  for (const auto& text : run.report.invariants) basis.push_back(parse_polynomial(text));
  Polynomial p2 = parse_polynomial("-g*t^2 + g*t0^2 - 2*t*v + 2*t0*v0 + 2*x - 2*x0");
  bool contains = run.report.status == "Found" && in_span(p2, basis);

  std::string detail = "status=" + run.report.status + ", basis size " +
                       std::to_string(basis.size()) + ", candidate in span: " +
                       (contains ? "yes" : "no");
  if (!contains) {
    // Diagnostic: the candidate is not preserved by the loop body, so no
    // sound solver can emit it.  The drift is the body image minus the
    // candidate; a terminating run witnesses a nonzero exit value.
    Program p = parse_program(config.source);
    std::map<VarName, Polynomial> body{{VarName("x"), parse_polynomial("x + v*dt")},
                                       {VarName("v"), parse_polynomial("v - g*dt - rho*v*dt")},
                                       {VarName("t"), parse_polynomial("t + dt")}};
    Polynomial drift = p2.substitute(body) - p2;
    detail += "; loop-body drift of the candidate = " + drift.to_string(p.order());
    State sigma;
    for (const char* n : {"x", "v", "t"}) sigma[VarName(n)] = rat(0);
    sigma[VarName("x0")] = rat(0);
    sigma[VarName("v0")] = rat(0);
    sigma[VarName("t0")] = rat(0);
    sigma[VarName("a")] = rat(2);
    sigma[VarName("dt")] = rat(1);
    sigma[VarName("g")] = rat(1);
    sigma[VarName("rho")] = rat(1);
    Outcome out = exec(*p.body, sigma, 10000);
    if (const auto* t = std::get_if<Terminated>(&out))
      detail += "; candidate at exit of a terminating run = " +
                rat_to_string(p2.eval(t->final)) + " (nonzero)";
  }
  report(2, contains, detail);
}

TEST_CASE("criterion 3: template sizes match the reported counts") {
  const RunReport* ff3_full = find_report("freefall-d3", "full");
  const RunReport* sp1_full = find_report("sumpower1", "full");
  const RunReport* sp5_full = find_report("sumpower5", "full");
  const RunReport* ff2_gh = find_report("freefall-d2", "gh");
  const RunReport* sp5_gh = find_report("sumpower5", "gh");
  REQUIRE(ff3_full);
  REQUIRE(sp1_full);
  REQUIRE(sp5_full);
  REQUIRE(ff2_gh);
  REQUIRE(sp5_gh);

  bool monotone = true;
  for (const auto& e : suite().entries) {
    const RunReport* f = find_report(e.name, "full");
    const RunReport* g = find_report(e.name, "gh");
    if (f && g && g->template_size > f->template_size) monotone = false;
  }
  bool pass = ff3_full->template_size == 286 && sp1_full->template_size == 35 &&
              sp5_full->template_size == 330 && ff2_gh->template_size == 8 &&
              sp5_gh->template_size < 330 && monotone;
  report(3, pass,
         "freefall d3 full #m=" + std::to_string(ff3_full->template_size) +
             " (want 286), sumpower1 full #m=" + std::to_string(sp1_full->template_size) +
             " (want 35), sumpower5 full #m=" + std::to_string(sp5_full->template_size) +
             " (want 330), freefall d2 gh #m=" + std::to_string(ff2_gh->template_size) +
             " (want 8), sumpower5 gh #m=" + std::to_string(sp5_gh->template_size) +
             " (< 330 required; 140 is the target figure, discrepancy allowed and reported)");
}

TEST_CASE("criterion 4: inferred freefall assignment matches up to base renaming") {
  Program p = parse_program(read_file(std::string(INVGH_SUITE_DIR) + "/freefall.imp"));
  GammaInference inf = infer_gamma(p, LiteralPolicy::AllOccurrences);

  // Reference assignment over bases (A, T): exponent rows per variable.
  std::map<std::string, std::pair<int, int>> reference{
      {"x", {1, 2}},  {"x0", {1, 2}}, {"v", {1, 1}},  {"v0", {1, 1}}, {"t", {0, 1}},
      {"t0", {0, 1}}, {"a", {0, 1}},  {"dt", {0, 1}}, {"g", {1, 0}},  {"rho", {0, -1}}};

  // Collect the inferred base symbols.
  std::set<GSym> bases;
  for (const auto& [v, d] : inf.gamma.entries())
    for (const auto& [s, e] : d.exponents()) bases.insert(s);
  std::vector<GSym> base_list(bases.begin(), bases.end());

  bool matched = false;
  std::vector<int> perm;  // perm[reference column] = inferred base index
  if (base_list.size() == 2) {
    for (int pA = 0; pA < 2 && !matched; ++pA) {
      int pT = 1 - pA;
      bool ok = true;
      for (const auto& [name, row] : reference) {
        const GDeg& d = inf.gamma.at(VarName(name));
        if (d.exponent(base_list[pA]) != row.first || d.exponent(base_list[pT]) != row.second)
          ok = false;
      }
      if (ok) {
        matched = true;
        perm = {pA, pT};
      }
    }
  }

  bool ratio_ok = false;
  if (matched) {
    // gdeg(p1) * gdeg(p2)^-1 must be the renamed image of T^-1.
    Polynomial p1 = parse_polynomial("-g*t + g*t0 - v + v0 - x*rho + x0*rho");
    Polynomial p2 = parse_polynomial("-g*t^2 + g*t0^2 - 2*t*v + 2*t0*v0 + 2*x - 2*x0");
    GDegOfPoly d1 = gdeg_of_poly(inf.gamma, p1);
    GDegOfPoly d2 = gdeg_of_poly(inf.gamma, p2);
    if (std::holds_alternative<GDeg>(d1) && std::holds_alternative<GDeg>(d2)) {
      GDeg ratio = std::get<GDeg>(d1).times(std::get<GDeg>(d2).inverse());
      ratio_ok = ratio == GDeg::sym(base_list[perm[1]], -1);
    }
  }
  report(4, matched && ratio_ok,
         std::string("exponent matrix ") + (matched ? "matches" : "does not match") +
             " up to renaming; velocity/length ratio " + (ratio_ok ? "is" : "is not") +
             " the renamed inverse time degree");
}

TEST_CASE("criterion 5: every Found invariant passes its empirical check") {
  std::map<std::string, bool> align_of;
  for (const auto& e : suite().entries) align_of[e.name] = e.align;
  std::map<std::string, std::string> source_of;
  for (const auto& e : suite().entries) source_of[e.name] = e.source;

  int checked = 0;
  bool all_pass = true;
  std::string failures;
  for (const auto& r : bench_reports()) {
    if (r.status != "Found") continue;
    Program program = parse_program(source_of.at(r.program));
    for (const auto& text : r.invariants) {
      Polynomial inv = parse_polynomial(text);
      CheckReport check =
          check_postcondition(program, inv, 100, 10000, 42, align_of.at(r.program));
      ++checked;
      if (!check.passed) {
        all_pass = false;
        failures += " " + r.program + "/" + r.mode;
      }
    }
  }
  report(5, all_pass && checked > 0,
         std::to_string(checked) + " Found invariants checked at seed 42, 100 trials, budget "
                                   "10000; violations in:" +
             (failures.empty() ? " none" : failures));
}

TEST_CASE("criterion 6: semantic property suites complete cleanly in under a minute") {
  auto start = Clock::now();
  run_loop_free_soundness_suite();
  run_gh_agreement_suite();
  run_component_correspondence_suite();
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(6, secs < 60.0,
         "soundness, agreement and component suites ran in " + std::to_string(secs) + "s");
}

TEST_CASE("criterion 7: GH solutions extend by zero to the unrestricted systems") {
  int checked = 0;
  bool all_hold = true;
  std::string detail;
  for (const auto& e : suite().entries) {
    RunConfig c;
    c.name = e.name;
    c.source = e.source;
    c.mode = Mode::GH;
    c.degree = e.degree;
    c.target = e.target;
    PipelineRun run = run_pipeline(c);
    if (run.report.status != "Found") continue;
    ZeroExtensionResult z = check_zero_extension(run);
    ++checked;
    if (!(z.checked && z.holds)) {
      all_hold = false;
      detail += " " + e.name + ": " + z.detail + ";";
    }
  }
  report(7, all_hold && checked > 0,
         std::to_string(checked) + " GH-mode Found runs zero-extended" +
             (detail.empty() ? "" : ";" + detail));
}

TEST_CASE("criterion 8: dimension reduction speeds up the sumpower5 solve") {
  const RunReport* full = find_report("sumpower5", "full");
  const RunReport* gh = find_report("sumpower5", "gh");
  REQUIRE(full);
  REQUIRE(gh);
  bool pass = gh->t_sol_ms < full->t_sol_ms;
  report(8, pass,
         "gh t_sol=" + std::to_string(gh->t_sol_ms) + "ms vs full t_sol=" +
             std::to_string(full->t_sol_ms) + "ms (only the ordering is asserted)");
}

TEST_CASE("criterion 9: statuses are recorded and the required programs are Found") {
  const RunReport* ff2 = find_report("freefall-d2", "gh");
  const RunReport* ff3 = find_report("freefall-d3", "gh");
  const RunReport* sp1_full = find_report("sumpower1", "full");
  REQUIRE(ff2);
  REQUIRE(ff3);
  REQUIRE(sp1_full);

  bool statuses_recorded = true;
  std::string recorded;
  for (const auto& r : bench_reports()) {
    if (r.status.empty()) statuses_recorded = false;
    if (r.status == "NoSolution") recorded += " " + r.program + "/" + r.mode;
  }
  bool pass = statuses_recorded && ff2->status == "Found" && ff3->status == "Found" &&
              sp1_full->status == "Found";
  report(9, pass,
         "freefall d2 gh=" + ff2->status + ", freefall d3 gh=" + ff3->status +
             ", sumpower1 full=" + sp1_full->status + "; NoSolution recorded for:" +
             (recorded.empty() ? " none" : recorded));
}
