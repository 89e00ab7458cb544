#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invgh/interp.hpp"
#include "invgh/parser.hpp"
#include "invgh/solver.hpp"

namespace invgh {

enum class Mode { Full, GH };

struct RunConfig {
  std::string name;
  std::string source;
  Mode mode = Mode::Full;
  int degree = 1;
  std::string target;  // GH: monomial of interest (exactly one of target / tau_sweep)
  bool tau_sweep = false;
  std::vector<std::string> extra_mults;
  bool emit_basis = false;
  bool align = false;
  size_t cap = 6;
};

struct RunReport {
  std::string program;
  std::string mode;  // "full" | "gh"
  int degree = 0;
  std::optional<std::string> tau;
  std::string gamma_text;
  size_t template_size = 0;
  size_t constraint_count = 0;
  long matchings_tried = 0;
  double t_inf_ms = 0.0;
  double t_sol_ms = 0.0;
  std::string status;  // Found | NoSolution | CapExceeded | EmptyTemplate | Error
  std::vector<std::string> invariants;
  std::string error;
  std::vector<std::pair<std::string, std::string>> sweep;  // tau -> status
};

// Full pipeline result with enough internals for property checks.
struct PipelineRun {
  RunReport report;
  Program program;        // as parsed
  Program synth_program;  // literal-lifted in GH mode, original otherwise
  LiteralTable literals;
  std::optional<GammaAssign> gamma;
  std::optional<GDeg> tau;
  std::shared_ptr<Session> session;
  GenState state;  // after wpc
  Template goal_template;
  std::vector<ParamId> target_params;
  std::vector<Polynomial> mult_set;
  SolveOutcome solved;
};

PipelineRun run_pipeline(const RunConfig& config);
RunReport run_infer(const RunConfig& config);

std::string report_to_json(const RunReport& report);
std::string reports_to_json(const std::vector<RunReport>& reports);

// Zero-extension check: the valuation of a Found GH run, extended by zero
// to the parameters of the unrestricted run on the same program and
// degree, satisfies the unrestricted constraint system under the same
// matchings.
struct ZeroExtensionResult {
  bool checked = false;  // false when inapplicable (not GH or not Found)
  bool holds = false;
  std::string detail;
};
ZeroExtensionResult check_zero_extension(const PipelineRun& gh_run);

struct BenchEntry {
  std::string name;
  std::string program_file;
  std::string source;
  int degree = 1;
  std::string target;
  bool align = false;
};

struct BenchSuite {
  std::vector<BenchEntry> entries;
};

BenchSuite load_suite(const std::string& dir);
std::vector<RunReport> run_bench(const BenchSuite& suite, int jobs, size_t cap = 6);
std::string bench_comparison_table(const std::vector<RunReport>& reports);

std::string read_file(const std::string& path);

}  // namespace invgh
