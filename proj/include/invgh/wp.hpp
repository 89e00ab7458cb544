#pragma once

#include <optional>
#include <vector>

#include "invgh/ast.hpp"
#include "invgh/gamma.hpp"
#include "invgh/templates.hpp"

namespace invgh {

// Ideal-equality obligation <lhs == rhs> produced at while loops.
struct EqConstraint {
  std::vector<Template> lhs;  // G
  std::vector<Template> rhs;  // G1, the body transform of G
};

struct GenState {
  std::vector<ParamId> params;
  std::vector<Template> goal;
  std::vector<EqConstraint> constraints;
};

struct NotGHError : std::runtime_error {
  explicit NotGHError(const std::string& m) : std::runtime_error(m) {}
};

struct ContainsLoop : std::runtime_error {
  ContainsLoop() : std::runtime_error("wp_concrete requires a loop-free statement") {}
};

// One synthesis session: owns the fresh-parameter counter, the variable
// universe for quotient templates, and the optional GH restriction.
class Session {
 public:
  Session(std::vector<VarName> vars, std::optional<GammaAssign> gh)
      : vars_(std::move(vars)), order_(vars_), gh_(std::move(gh)) {}

  const std::vector<VarName>& vars() const { return vars_; }
  const MonomialOrder& order() const { return order_; }
  bool gh_mode() const { return gh_.has_value(); }
  const GammaAssign& gamma() const { return *gh_; }
  ParamAllocator& alloc() { return alloc_; }
  int next_rem_site() { return rem_site_++; }

 private:
  std::vector<VarName> vars_;
  MonomialOrder order_;
  std::optional<GammaAssign> gh_;
  ParamAllocator alloc_;
  int rem_site_ = 0;
};

// Parametric remainder: f - p*q with q the most general (or most general
// GH) template of degree deg(f) - deg(p), fresh parameters.  If the degree
// difference is negative, undefined, or the GH monomial set is empty,
// q = 0 and f is returned unchanged.
std::pair<std::vector<ParamId>, Template> rem_par(Session& session, const Template& f,
                                                  const Polynomial& p);

// Constraint-generating backward transformer (full and GH variants,
// selected by the session).  Constraint list order is deterministic.
GenState wpc(Session& session, const Stmt& stmt, GenState state);

// Loop-free concrete backward transformer with Rem(f, p) = f, used as a
// differential-testing oracle.  With gh_filter set, non-GH polynomials are
// dropped at remainder positions (the GH-restricted semantics).
std::vector<Polynomial> wp_concrete(const Stmt& stmt, std::vector<Polynomial> goal,
                                    const std::optional<GammaAssign>& gh_filter = std::nullopt);

}  // namespace invgh
