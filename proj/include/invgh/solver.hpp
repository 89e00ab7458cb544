#pragma once

#include <optional>
#include <vector>

#include "invgh/wp.hpp"

namespace invgh {

// One homogeneous linear equation over parameters: sum coeffs + constant = 0.
struct LinRow {
  std::map<ParamId, Rational> coeffs;
  Rational constant = 0;
};

// Equations forcing instantiate(t, v) = 0: one per monomial of t.
std::vector<LinRow> zero_equations(const Template& t);

// Per right-hand-side element: either force it to zero or equate it with
// a multiplier times a left-hand-side element.
struct MatchOption {
  bool zero = false;
  size_t g_index = 0;
  size_t mult_index = 0;
};

struct Matching {
  std::vector<MatchOption> options;  // one per rhs element of the constraint
};

struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& m) : std::runtime_error(m) {}
};

// All matchings of one constraint, in lexicographic order over
// (element index, option index).  Options per element are EqualTo(g, m)
// for g in lhs order and m in mult order, then Zero; degree-incompatible
// and (in GH mode) g-degree-incompatible options are pruned.  Only
// matchings where every lhs element is hit with multiplier 1 survive.
std::vector<Matching> matchings(const EqConstraint& eq, const std::vector<Polynomial>& mult_set,
                                const std::optional<GammaAssign>& gh, size_t cap = 6);

enum class SolveStatus { Found, NoSolution, CapExceeded };

struct SolveOutcome {
  SolveStatus status = SolveStatus::NoSolution;
  Valuation valuation;                    // Found: first admissible nullspace vector
  std::vector<Valuation> basis;           // Found: independent solutions on the targets
  std::vector<Matching> chosen;           // Found: matching per constraint
  long matchings_tried = 0;
  size_t rows = 0;
  size_t cols = 0;
  std::string diagnostic;
};

// Backtracking over the Cartesian product of per-constraint matchings;
// each leaf is an exact homogeneous linear system solved by fraction-free
// elimination.  Succeeds at the first leaf whose nullspace contains a
// vector with a nonzero projection onto target_params.
SolveOutcome solve(Session& session, const GenState& state,
                   const std::vector<ParamId>& target_params,
                   const std::vector<Polynomial>& mult_set, bool emit_basis, size_t cap = 6);

struct ZeroPolynomial : std::runtime_error {
  ZeroPolynomial() : std::runtime_error("cannot normalize the zero polynomial") {}
};

// Integer coefficients with gcd 1 and a positive leading coefficient
// (graded lex over the given order).
Polynomial normalize_invariant(const Polynomial& p, const MonomialOrder& order);

// Soundness self-check: every instantiated rhs element equals its matched
// multiplier times the matched lhs element (or zero), every lhs element is
// hit with multiplier one, and every final-goal template vanishes.
bool verify_solution(const GenState& state, const std::vector<Polynomial>& mult_set,
                     const std::vector<Matching>& chosen, const Valuation& v);

}  // namespace invgh
