#include "invgh/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace invgh {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Monomial parse_target_monomial(const std::string& text) {
  Polynomial p = parse_polynomial(text);
  if (p.terms().size() != 1)
    throw std::runtime_error("target must be a single monomial, got '" + text + "'");
  return p.terms().begin()->first;
}

std::vector<Polynomial> build_mult_set(const Program& synth,
                                       const std::vector<std::string>& extra) {
  std::vector<Polynomial> mults;
  mults.push_back(Polynomial::constant(1));
  auto push = [&](const Polynomial& p) {
    if (p.is_zero()) return;
    if (std::find(mults.begin(), mults.end(), p) == mults.end()) mults.push_back(p);
  };
  for (const auto& g : guard_polynomials(*synth.body)) push(g);
  for (const auto& text : extra) push(parse_polynomial(text));
  return mults;
}

// Substitute recorded literal values back and normalize; returns nullopt
// when the instantiated template collapses to zero.
std::optional<std::string> render_invariant(const Template& goal, const Valuation& v,
                                            const LiteralTable& literals,
                                            const MonomialOrder& order) {
  Polynomial p = goal.instantiate(v);
  if (!literals.entries.empty()) {
    std::map<VarName, Polynomial> binding;
    for (const auto& e : literals.entries)
      binding.emplace(e.name, Polynomial::constant(e.value));
    p = p.substitute(binding);
  }
  if (p.is_zero()) return std::nullopt;
  return normalize_invariant(p, order).to_string(order);
}

}  // namespace

PipelineRun run_pipeline(const RunConfig& config) {
  PipelineRun run;
  RunReport& report = run.report;
  report.program = config.name;
  report.mode = config.mode == Mode::GH ? "gh" : "full";
  report.degree = config.degree;

  run.program = parse_program(config.source);

  if (config.mode == Mode::GH) {
    GammaInference inf = infer_gamma(run.program, LiteralPolicy::AllOccurrences);
    report.t_inf_ms = inf.inference_ms;
    run.synth_program = inf.lifted;
    run.literals = std::move(inf.literals);
    run.gamma = std::move(inf.gamma);
    report.gamma_text = gamma_to_string(*run.gamma, run.synth_program.declared_vars);
  } else {
    run.synth_program = run.program;
  }

  const std::vector<VarName>& vars = run.synth_program.declared_vars;
  MonomialOrder order = run.synth_program.order();
  run.mult_set = build_mult_set(run.synth_program, config.extra_mults);

  // Exactly one of a target monomial or a tau sweep in GH mode.
  std::vector<GDeg> taus;
  if (config.mode == Mode::GH) {
    if (config.tau_sweep && config.target.empty()) {
      for (const Monomial& w : enumerate_monomials(vars, config.degree)) {
        GDeg tau = gdeg_of_monomial(*run.gamma, w);
        if (std::find(taus.begin(), taus.end(), tau) == taus.end()) taus.push_back(tau);
      }
    } else if (!config.tau_sweep && !config.target.empty()) {
      taus.push_back(gdeg_of_monomial(*run.gamma, parse_target_monomial(config.target)));
    } else {
      throw std::runtime_error("gh mode needs exactly one of a target monomial or a tau sweep");
    }
  } else {
    taus.push_back(GDeg::one());  // unused placeholder to run the loop once
  }

  auto t_sol_start = Clock::now();
  bool any_nonempty_template = false;
  for (const GDeg& tau : taus) {
    TemplateSpec spec;
    spec.vars = vars;
    spec.degree = config.degree;
    if (config.mode == Mode::GH) spec.gh = GHFilter{*run.gamma, tau};

    run.session = std::make_shared<Session>(
        vars, config.mode == Mode::GH ? std::optional<GammaAssign>(*run.gamma) : std::nullopt);
    BuiltTemplate built;
    try {
      built = build_template(spec, run.session->alloc());
    } catch (const EmptyTemplate&) {
      if (config.tau_sweep) report.sweep.emplace_back(tau.to_string(), "EmptyTemplate");
      continue;
    }
    any_nonempty_template = true;
    run.goal_template = built.tmpl;
    run.target_params = built.params;
    if (config.mode == Mode::GH) run.tau = tau;
    report.tau = config.mode == Mode::GH ? std::optional<std::string>(tau.to_string())
                                         : std::nullopt;
    report.template_size = built.tmpl.monomial_count();

    GenState initial;
    initial.params = built.params;
    initial.goal.push_back(built.tmpl);
    run.state = wpc(*run.session, *run.synth_program.body, std::move(initial));
    report.constraint_count = run.state.constraints.size();

    run.solved = solve(*run.session, run.state, run.target_params, run.mult_set,
                       config.emit_basis, config.cap);
    report.matchings_tried += run.solved.matchings_tried;

    std::string status;
    switch (run.solved.status) {
      case SolveStatus::Found: status = "Found"; break;
      case SolveStatus::NoSolution: status = "NoSolution"; break;
      case SolveStatus::CapExceeded: status = "CapExceeded"; break;
    }
    if (config.tau_sweep) report.sweep.emplace_back(tau.to_string(), status);
    report.status = status;
    report.error = run.solved.diagnostic;

    if (run.solved.status == SolveStatus::Found) {
      for (const Valuation& v : run.solved.basis) {
        auto text = render_invariant(run.goal_template, v, run.literals, order);
        if (text) report.invariants.push_back(*text);
      }
      if (report.invariants.empty()) {
        // Literal substitution collapsed every instantiation to zero.
        report.status = "NoSolution";
        report.invariants.clear();
      } else {
        break;  // sweep stops at the first Found
      }
    }
  }
  if (report.status.empty()) report.status = any_nonempty_template ? "NoSolution" : "EmptyTemplate";
  if (report.status == "EmptyTemplate") report.template_size = 0;
  report.t_sol_ms = ms_since(t_sol_start);
  return run;
}

RunReport run_infer(const RunConfig& config) {
  try {
    return run_pipeline(config).report;
  } catch (const std::exception& e) {
    RunReport r;
    r.program = config.name;
    r.mode = config.mode == Mode::GH ? "gh" : "full";
    r.degree = config.degree;
    r.status = "Error";
    r.error = e.what();
    return r;
  }
}

std::string report_to_json(const RunReport& report) {
  nlohmann::json j;
  j["program"] = report.program;
  j["mode"] = report.mode;
  j["degree"] = report.degree;
  if (report.tau)
    j["tau"] = *report.tau;
  else
    j["tau"] = nullptr;
  j["template_size"] = report.template_size;
  j["constraints"] = report.constraint_count;
  j["matchings_tried"] = report.matchings_tried;
  j["t_inf_ms"] = report.t_inf_ms;
  j["t_sol_ms"] = report.t_sol_ms;
  j["status"] = report.status;
  j["invariants"] = report.invariants;
  if (!report.error.empty()) j["error"] = report.error;
  return j.dump(2);
}

std::string reports_to_json(const std::vector<RunReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(nlohmann::json::parse(report_to_json(r)));
  return arr.dump(2);
}

ZeroExtensionResult check_zero_extension(const PipelineRun& gh_run) {
  ZeroExtensionResult result;
  if (!gh_run.gamma || gh_run.solved.status != SolveStatus::Found) {
    result.detail = "inapplicable: run is not a Found GH run";
    return result;
  }
  result.checked = true;

  // Unrestricted pipeline over the same (lifted) program and degree.
  Session full_session(gh_run.synth_program.declared_vars, std::nullopt);
  TemplateSpec spec;
  spec.vars = gh_run.synth_program.declared_vars;
  spec.degree = gh_run.report.degree;
  BuiltTemplate full_built = build_template(spec, full_session.alloc());
  GenState initial;
  initial.params = full_built.params;
  initial.goal.push_back(full_built.tmpl);
  GenState full_state = wpc(full_session, *gh_run.synth_program.body, std::move(initial));

  if (full_state.constraints.size() != gh_run.state.constraints.size()) {
    result.detail = "constraint lists do not align";
    return result;
  }

  // Zero-extended valuation: parameters correspond by label (template
  // parameters by monomial, remainder parameters by site and monomial).
  std::map<std::string, Rational> by_label;
  for (const auto& a : gh_run.state.params) {
    auto it = gh_run.solved.valuation.find(a);
    if (it != gh_run.solved.valuation.end()) by_label.emplace(a.label, it->second);
  }
  Valuation extended;
  for (const auto& a : full_state.params) {
    auto it = by_label.find(a.label);
    if (it != by_label.end()) extended.emplace(a, it->second);
  }

  for (size_t c = 0; c < full_state.constraints.size(); ++c) {
    const EqConstraint& full_eq = full_state.constraints[c];
    const Matching& m = gh_run.solved.chosen[c];
    if (m.options.size() != full_eq.rhs.size() ||
        gh_run.state.constraints[c].lhs.size() != full_eq.lhs.size()) {
      result.detail = "constraint shapes do not align";
      return result;
    }
    for (size_t j = 0; j < full_eq.rhs.size(); ++j) {
      const MatchOption& opt = m.options[j];
      Polynomial h = full_eq.rhs[j].instantiate(extended);
      if (opt.zero) {
        if (!h.is_zero()) {
          result.detail = "a zero-matched element does not vanish";
          return result;
        }
      } else {
        Polynomial expected =
            full_eq.lhs[opt.g_index].instantiate(extended) * gh_run.mult_set[opt.mult_index];
        if (!(h == expected)) {
          result.detail = "a matched element disagrees under the extension";
          return result;
        }
      }
    }
  }
  for (const auto& t : full_state.goal) {
    if (!t.instantiate(extended).is_zero()) {
      result.detail = "the final goal does not vanish under the extension";
      return result;
    }
  }
  result.holds = true;
  result.detail = "zero extension satisfies the unrestricted system";
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

BenchSuite load_suite(const std::string& dir) {
  BenchSuite suite;
  std::string manifest = read_file(dir + "/manifest.toml");
  std::istringstream in(manifest);
  std::string line;
  BenchEntry current;
  bool open = false;
  auto flush = [&]() {
    if (!open) return;
    if (current.program_file.empty()) current.program_file = current.name + ".imp";
    current.source = read_file(dir + "/" + current.program_file);
    suite.entries.push_back(current);
    current = BenchEntry{};
    open = false;
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("manifest line " + std::to_string(lineno) + ": bad section");
      flush();
      current.name = trim(line.substr(1, line.size() - 2));
      open = true;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos || !open)
      throw std::runtime_error("manifest line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "program")
      current.program_file = value;
    else if (key == "degree")
      current.degree = std::stoi(value);
    else if (key == "target")
      current.target = value;
    else if (key == "align")
      current.align = (value == "true" || value == "1");
    else
      throw std::runtime_error("manifest line " + std::to_string(lineno) + ": unknown key " + key);
  }
  flush();
  return suite;
}

std::vector<RunReport> run_bench(const BenchSuite& suite, int jobs, size_t cap) {
  std::vector<RunConfig> configs;
  for (const auto& e : suite.entries) {
    for (Mode mode : {Mode::Full, Mode::GH}) {
      RunConfig c;
      c.name = e.name;
      c.source = e.source;
      c.mode = mode;
      c.degree = e.degree;
      c.align = e.align;
      c.cap = cap;
      if (mode == Mode::GH) c.target = e.target;
      configs.push_back(std::move(c));
    }
  }
  std::vector<RunReport> reports(configs.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < configs.size(); ++i) reports[i] = run_infer(configs[i]);
    return reports;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      reports[i] = run_infer(configs[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return reports;
}

std::string bench_comparison_table(const std::vector<RunReport>& reports) {
  std::map<std::string, const RunReport*> full, gh;
  std::vector<std::string> names;
  for (const auto& r : reports) {
    if (!full.count(r.program) && !gh.count(r.program)) names.push_back(r.program);
    (r.mode == "full" ? full : gh)[r.program] = &r;
  }
  std::ostringstream os;
  os << "name                 deg  full #m  gh #m  full t_sol(ms)  gh t_sol(ms)  full      gh\n";
  for (const auto& name : names) {
    const RunReport* f = full.count(name) ? full[name] : nullptr;
    const RunReport* g = gh.count(name) ? gh[name] : nullptr;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-20s %3d  %7zu  %5zu  %14.1f  %12.1f  %-9s %-9s\n",
                  name.c_str(), f ? f->degree : (g ? g->degree : 0),
                  f ? f->template_size : 0, g ? g->template_size : 0, f ? f->t_sol_ms : 0.0,
                  g ? g->t_sol_ms : 0.0, f ? f->status.c_str() : "-",
                  g ? g->status.c_str() : "-");
    os << buf;
  }
  return os.str();
}

}  // namespace invgh
