#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "invgh/ast.hpp"
#include "invgh/gdeg.hpp"
#include "invgh/poly.hpp"

namespace invgh {

// Finite assignment of g-degrees to variables.
class GammaAssign {
 public:
  GammaAssign() = default;
  explicit GammaAssign(std::map<VarName, GDeg> assign) : assign_(std::move(assign)) {}

  const GDeg& at(const VarName& v) const;
  bool covers(const VarName& v) const { return assign_.count(v) > 0; }
  void set(const VarName& v, GDeg d) { assign_[v] = std::move(d); }
  const std::map<VarName, GDeg>& entries() const { return assign_; }

 private:
  std::map<VarName, GDeg> assign_;
};

GDeg gdeg_of_monomial(const GammaAssign& gamma, const Monomial& w);

struct AnyDegree {};
struct NotGH {
  Monomial witness1, witness2;
  GDeg deg1, deg2;
};
using GDegOfPoly = std::variant<GDeg, AnyDegree, NotGH>;

// The common g-degree of all monomials if p is GH; AnyDegree for p = 0;
// NotGH with two witness monomials otherwise.
GDegOfPoly gdeg_of_poly(const GammaAssign& gamma, const Polynomial& p);

bool is_gh(const GammaAssign& gamma, const Polynomial& p);

// Splits p into its homogeneous components; the components sum to p
// exactly and each is GH of its key.  Empty map for p = 0.
std::map<GDeg, Polynomial> gh_decompose(const Polynomial& p, const GammaAssign& gamma);

// Constraint generation over a template assignment of distinct unknowns.
// Monomial chains are paired in descending canonical order; the returned
// list is insertion-ordered with duplicates removed (the trivial 1 = 1
// constraint is kept if generated).
std::vector<GConstraint> pt_constraints(const GammaAssign& gamma, const Stmt& stmt,
                                        const MonomialOrder& order);

struct GammaInference {
  GammaAssign gamma;       // over Base symbols, total on lifted program vars
  Program lifted;          // literal-lifted program the assignment was inferred for
  LiteralTable literals;
  double inference_ms = 0.0;
};

struct InferenceError : std::runtime_error {
  explicit InferenceError(const std::string& m) : std::runtime_error(m) {}
};

// Steps 1-3 plus base-degree assignment.  Surviving unknowns become base
// symbols B0, B1, ... in first-use order scanning variables in declared
// order; each base is oriented so its first use has a positive exponent.
GammaInference infer_gamma(const Program& p, LiteralPolicy policy,
                           const std::map<VarName, GDeg>& pins = {});

// Checks the typing-rule side conditions directly: every assignment
// satisfies gamma(x) = gdeg(rhs) (zero rhs is fine) and every guard is GH.
bool gamma_consistent(const GammaAssign& gamma, const Stmt& stmt);

std::string gamma_to_string(const GammaAssign& gamma, const std::vector<VarName>& var_order);

}  // namespace invgh
