#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "invgh/pipeline.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNoSolution = 2;
constexpr int kExitInputError = 3;
constexpr int kExitCaps = 4;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("INVGH_SEED")) return std::strtoull(env, nullptr, 10);
  return 42;
}

int status_to_exit(const std::string& status) {
  if (status == "Found") return kExitFound;
  if (status == "CapExceeded") return kExitCaps;
  if (status == "Error") return kExitInputError;
  return kExitNoSolution;  // NoSolution, EmptyTemplate
}

void print_report(const invgh::RunReport& r) {
  std::cout << "program:     " << r.program << "\n"
            << "mode:        " << r.mode << " (degree " << r.degree << ")\n";
  if (r.tau) std::cout << "tau:         " << *r.tau << "\n";
  if (!r.gamma_text.empty()) std::cout << "gamma:\n" << r.gamma_text;
  std::cout << "template #m: " << r.template_size << "\n"
            << "constraints: " << r.constraint_count << "\n"
            << "matchings:   " << r.matchings_tried << "\n"
            << "t_inf:       " << r.t_inf_ms << " ms\n"
            << "t_sol:       " << r.t_sol_ms << " ms\n"
            << "status:      " << r.status << "\n";
  for (const auto& inv : r.invariants) std::cout << "invariant:   " << inv << " = 0\n";
  if (!r.sweep.empty()) {
    std::cout << "tau sweep:\n";
    for (const auto& [tau, st] : r.sweep) std::cout << "  " << tau << " -> " << st << "\n";
  }
  if (!r.error.empty()) std::cout << "note:        " << r.error << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invgh: algebraic invariant synthesis with dimension-reduced templates"};
  app.require_subcommand(1);

  // infer
  auto* infer = app.add_subcommand("infer", "synthesize an invariant for a program");
  std::string infer_path, infer_mode = "full", infer_target;
  int infer_degree = 2;
  bool infer_sweep = false, infer_basis = false;
  std::vector<std::string> infer_mults;
  std::size_t infer_cap = 6;
  bool infer_json = false;
  infer->add_option("program", infer_path, "program file")->required();
  infer->add_option("--degree,-d", infer_degree, "template degree bound");
  infer->add_option("--mode,-m", infer_mode, "full or gh")
      ->check(CLI::IsMember({"full", "gh"}));
  infer->add_option("--target", infer_target, "monomial of interest (gh mode)");
  infer->add_flag("--tau-sweep", infer_sweep, "try every realizable g-degree (gh mode)");
  infer->add_option("--mult", infer_mults, "extra multiplier polynomials");
  infer->add_flag("--emit-basis", infer_basis, "emit a basis of independent invariants");
  infer->add_option("--cap", infer_cap, "constraint set size cap");
  infer->add_flag("--json", infer_json, "print the JSON report");

  // gamma
  auto* gamma = app.add_subcommand("gamma", "print the inferred g-degree assignment");
  std::string gamma_path;
  std::vector<std::string> gamma_pins;
  gamma->add_option("program", gamma_path, "program file")->required();
  gamma->add_option("--pin", gamma_pins, "pin a variable's g-degree, e.g. v=B0*B1^-1");

  // check
  auto* check = app.add_subcommand("check", "empirically check a candidate invariant");
  std::string check_path, check_invariant;
  int check_trials = 100;
  long check_steps = 10000;
  std::uint64_t check_seed = default_seed();
  bool check_align = false;
  check->add_option("program", check_path, "program file")->required();
  check->add_option("--invariant", check_invariant, "polynomial expected to be 0 at exit")
      ->required();
  check->add_option("--trials", check_trials, "number of sampled initial states");
  check->add_option("--steps", check_steps, "execution step budget per trial");
  check->add_option("--seed", check_seed, "sampler seed");
  check->add_flag("--align", check_align, "align time-like variables for termination");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  std::string bench_suite, bench_out;
  int bench_jobs = 1;
  std::size_t bench_cap = 6;
  bench->add_option("--suite", bench_suite, "suite directory with manifest.toml")->required();
  bench->add_option("--out", bench_out, "write the JSON report here");
  bench->add_option("--jobs", bench_jobs, "parallel workers");
  bench->add_option("--cap", bench_cap, "constraint set size cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (infer->parsed()) {
      invgh::RunConfig config;
      config.name = infer_path;
      config.source = invgh::read_file(infer_path);
      config.mode = infer_mode == "gh" ? invgh::Mode::GH : invgh::Mode::Full;
      config.degree = infer_degree;
      config.target = infer_target;
      config.tau_sweep = infer_sweep;
      config.extra_mults = infer_mults;
      config.emit_basis = infer_basis;
      config.cap = infer_cap;
      invgh::RunReport report = invgh::run_infer(config);
      if (infer_json)
        std::cout << invgh::report_to_json(report) << "\n";
      else
        print_report(report);
      return status_to_exit(report.status);
    }

    if (gamma->parsed()) {
      std::map<invgh::VarName, invgh::GDeg> pins;
      std::map<std::string, invgh::GSym> bases;
      for (const auto& pin : gamma_pins) {
        size_t eq = pin.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--pin expects var=degree");
        std::string var = pin.substr(0, eq), expr = pin.substr(eq + 1);
        invgh::GDeg d;
        if (expr != "1") {
          std::istringstream in(expr);
          std::string factor;
          while (std::getline(in, factor, '*')) {
            size_t caret = factor.find('^');
            std::string name = caret == std::string::npos ? factor : factor.substr(0, caret);
            int exp = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
            auto it = bases.find(name);
            if (it == bases.end())
              it = bases.emplace(name, invgh::GSym{invgh::GSymKind::Base,
                                                   static_cast<int>(bases.size()), name})
                       .first;
            d = d.times(invgh::GDeg::sym(it->second, exp));
          }
        }
        pins.emplace(invgh::VarName(var), d);
      }
      invgh::Program program = invgh::parse_program(invgh::read_file(gamma_path));
      invgh::GammaInference inf =
          invgh::infer_gamma(program, invgh::LiteralPolicy::AllOccurrences, pins);
      std::cout << invgh::gamma_to_string(inf.gamma, inf.lifted.declared_vars);
      if (!inf.literals.entries.empty()) {
        std::cout << "literals:\n";
        for (const auto& e : inf.literals.entries)
          std::cout << "  " << e.name.name << " = " << invgh::rat_to_string(e.value) << "  (line "
                    << e.loc.line << ")\n";
      }
      return 0;
    }

    if (check->parsed()) {
      invgh::Program program = invgh::parse_program(invgh::read_file(check_path));
      invgh::Polynomial p = invgh::parse_polynomial(check_invariant);
      for (const auto& v : p.vars()) {
        if (std::find(program.declared_vars.begin(), program.declared_vars.end(), v) ==
            program.declared_vars.end())
          throw std::runtime_error("invariant mentions unknown variable " + v.name);
      }
      invgh::CheckReport report =
          invgh::check_postcondition(program, p, check_trials, check_steps, check_seed,
                                     check_align);
      std::cout << "trials:     " << report.trials << "\n"
                << "terminated: " << report.terminated << "\n"
                << "vacuous:    " << report.vacuous << "\n"
                << "violations: " << report.violations.size() << "\n"
                << "result:     " << (report.passed ? "passed" : "FAILED") << "\n";
      for (const auto& violation : report.violations) {
        std::cout << "  violation from initial state:";
        for (const auto& [v, val] : violation.first)
          std::cout << " " << v.name << "=" << invgh::rat_to_string(val);
        std::cout << "\n";
      }
      return report.passed ? 0 : kExitNoSolution;
    }

    if (bench->parsed()) {
      invgh::BenchSuite suite = invgh::load_suite(bench_suite);
      std::vector<invgh::RunReport> reports = invgh::run_bench(suite, bench_jobs, bench_cap);
      std::string json = invgh::reports_to_json(reports);
      if (!bench_out.empty()) {
        std::ofstream out(bench_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + bench_out);
        out << json << "\n";
      } else {
        std::cout << json << "\n";
      }
      std::cout << invgh::bench_comparison_table(reports);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return 0;
}
