#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "invgh/ast.hpp"
#include "invgh/gamma.hpp"

namespace invgh {

struct Terminated {
  State final;
  long steps = 0;
};

struct BudgetExhausted {
  State last;
};

using Outcome = std::variant<Terminated, BudgetExhausted>;

// Big-step execution over exact rationals.  Every statement node visit
// costs one step; guard tests are exact rational comparisons.
Outcome exec(const Stmt& stmt, State sigma, long budget);

struct CheckReport {
  bool passed = true;
  int trials = 0;
  int terminated = 0;
  int vacuous = 0;  // runs that exhausted the budget
  std::vector<std::pair<State, State>> violations;  // initial -> final (capped)
};

// Samples seeded random initial states and asserts p = 0 on every
// terminating run; budget-exhausted runs count as vacuous and never fail.
// With align, variables whose g-degree matches a != 0 while guard are
// drawn from a shared arithmetic progression so such loops terminate more
// often.
CheckReport check_postcondition(const Program& program, const Polynomial& p, int trials,
                                long budget, std::uint64_t seed, bool align = false);

}  // namespace invgh
