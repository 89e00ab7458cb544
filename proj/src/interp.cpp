#include "invgh/interp.hpp"

#include <random>

namespace invgh {

namespace {

struct Budget {
  long remaining;
  // 0 = unlimited.  When set, a state component whose numerator or
  // denominator outgrows this many limbs ends the run as exhausted; such
  // runs count as vacuous, never as violations.
  size_t max_limbs = 0;
  bool spend() { return --remaining >= 0; }
  bool fits(const Rational& r) const {
    if (max_limbs == 0) return true;
    return mpz_size(r.get_num().get_mpz_t()) <= max_limbs &&
           mpz_size(r.get_den().get_mpz_t()) <= max_limbs;
  }
};

// Returns true if execution completed within budget; sigma is updated in
// place and holds the last state either way.
bool run(const Stmt& stmt, State& sigma, Budget& budget, long& steps) {
  if (!budget.spend()) return false;
  ++steps;
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          return true;
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          std::vector<Rational> values;
          values.reserve(n.values.size());
          for (const auto& p : n.values) values.push_back(p.eval(sigma));
          for (const auto& v : values)
            if (!budget.fits(v)) return false;
          for (size_t i = 0; i < n.targets.size(); ++i) sigma[n.targets[i]] = values[i];
          return true;
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          return run(*n.first, sigma, budget, steps) && run(*n.second, sigma, budget, steps);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          if (rat_is_zero(n.guard.eval(sigma)))
            return run(*n.then_branch, sigma, budget, steps);
          return run(*n.else_branch, sigma, budget, steps);
        } else {
          static_assert(std::is_same_v<T, WhileStmt>);
          while (true) {
            bool zero = rat_is_zero(n.guard.eval(sigma));
            bool enter = (n.sense == GuardSense::EqZero) ? zero : !zero;
            if (!enter) return true;
            if (!run(*n.body, sigma, budget, steps)) return false;
            if (!budget.spend()) return false;
            ++steps;  // re-evaluation of the loop head
          }
        }
      },
      stmt.node);
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long next_long(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational next_rational() {
    long num = next_long(-10, 10);
    long den = next_long(1, 10);
    return rat(num, den);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

Outcome exec(const Stmt& stmt, State sigma, long budget) {
  Budget b{budget};
  long steps = 0;
  if (run(stmt, sigma, b, steps)) return Terminated{std::move(sigma), steps};
  return BudgetExhausted{std::move(sigma)};
}

CheckReport check_postcondition(const Program& program, const Polynomial& p, int trials,
                                long budget, std::uint64_t seed, bool align) {
  CheckReport report;
  report.trials = trials;

  // Aligned mode: variables sharing a g-degree with a != 0 while guard are
  // sampled as small multiples of one common step.
  std::set<VarName> time_like;
  if (align) {
    GammaInference inf = infer_gamma(program, LiteralPolicy::AllOccurrences);
    std::set<GDeg> guard_degrees;
    auto walk = [&](auto&& self, const Stmt& s) -> void {
      std::visit(
          [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, SeqStmt>) {
              self(self, *n.first);
              self(self, *n.second);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              self(self, *n.then_branch);
              self(self, *n.else_branch);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
              if (n.sense == GuardSense::NeqZero) {
                GDegOfPoly d = gdeg_of_poly(inf.gamma, n.guard);
                if (auto* tau = std::get_if<GDeg>(&d)) guard_degrees.insert(*tau);
              }
              self(self, *n.body);
            }
          },
          s.node);
    };
    walk(walk, *inf.lifted.body);
    for (const auto& v : program.declared_vars)
      if (inf.gamma.covers(v) && guard_degrees.count(inf.gamma.at(v))) time_like.insert(v);
  }

  Sampler sampler(seed);
  for (int trial = 0; trial < trials; ++trial) {
    State sigma;
    Rational step = 0;
    if (align) {
      while (rat_is_zero(step)) step = rat(sampler.next_long(-3, 3), sampler.next_long(1, 2));
    }
    for (const auto& v : program.declared_vars) {
      if (time_like.count(v))
        sigma[v] = step * Rational(sampler.next_long(0, 6));
      else
        sigma[v] = sampler.next_rational();
    }
    State scratch = sigma;
    Budget b{budget, 64};
    long steps = 0;
    Outcome outcome = run(*program.body, scratch, b, steps)
                          ? Outcome(Terminated{std::move(scratch), steps})
                          : Outcome(BudgetExhausted{std::move(scratch)});
    if (auto* t = std::get_if<Terminated>(&outcome)) {
      ++report.terminated;
      if (!rat_is_zero(p.eval(t->final))) {
        report.passed = false;
        if (report.violations.size() < 10) report.violations.emplace_back(sigma, t->final);
      }
    } else {
      ++report.vacuous;
    }
  }
  return report;
}

}  // namespace invgh
