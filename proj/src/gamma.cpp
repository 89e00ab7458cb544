#include "invgh/gamma.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace invgh {

const GDeg& GammaAssign::at(const VarName& v) const {
  auto it = assign_.find(v);
  if (it == assign_.end()) throw UnboundVariable(v.name);
  return it->second;
}

GDeg gdeg_of_monomial(const GammaAssign& gamma, const Monomial& w) {
  GDeg d;
  for (const auto& [v, e] : w.exponents()) d = d.times(gamma.at(v).pow(e));
  return d;
}

GDegOfPoly gdeg_of_poly(const GammaAssign& gamma, const Polynomial& p) {
  if (p.is_zero()) return AnyDegree{};
  std::optional<GDeg> common;
  std::optional<Monomial> first;
  for (const auto& [w, c] : p.terms()) {
    GDeg d = gdeg_of_monomial(gamma, w);
    if (!common) {
      common = d;
      first = w;
    } else if (!(d == *common)) {
      return NotGH{*first, w, *common, d};
    }
  }
  return *common;
}

bool is_gh(const GammaAssign& gamma, const Polynomial& p) {
  return !std::holds_alternative<NotGH>(gdeg_of_poly(gamma, p));
}

std::map<GDeg, Polynomial> gh_decompose(const Polynomial& p, const GammaAssign& gamma) {
  std::map<GDeg, Polynomial> out;
  for (const auto& [w, c] : p.terms()) {
    GDeg d = gdeg_of_monomial(gamma, w);
    out[d] = out[d] + Polynomial::monomial(w, c);
  }
  return out;
}

namespace {

class ConstraintList {
 public:
  void push(const GConstraint& c) {
    if (seen_.insert(c.lhs).second) list_.push_back(c);
  }
  std::vector<GConstraint> take() { return std::move(list_); }

 private:
  std::vector<GConstraint> list_;
  std::set<GDeg> seen_;
};

// gdeg'(p): the g-degree of the leading monomial plus the chain of
// equations between consecutive monomials in descending canonical order.
GDeg gdeg_prime(const GammaAssign& gamma, const Polynomial& p, const MonomialOrder& order,
                ConstraintList& out) {
  std::vector<const Monomial*> ws;
  for (const auto& [w, c] : p.terms()) ws.push_back(&w);
  std::sort(ws.begin(), ws.end(),
            [&](const Monomial* a, const Monomial* b) { return order.less(*b, *a); });
  GDeg lead = gdeg_of_monomial(gamma, *ws.front());
  GDeg prev = lead;
  for (size_t i = 1; i < ws.size(); ++i) {
    GDeg cur = gdeg_of_monomial(gamma, *ws[i]);
    out.push(GConstraint::between(prev, cur));
    prev = cur;
  }
  return lead;
}

void pt_walk(const GammaAssign& gamma, const Stmt& s, const MonomialOrder& order,
             ConstraintList& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          for (size_t i = 0; i < n.targets.size(); ++i) {
            const Polynomial& p = n.values[i];
            if (p.is_zero()) continue;  // zero is GH of any degree
            GDeg tau = gdeg_prime(gamma, p, order, out);
            out.push(GConstraint::between(gamma.at(n.targets[i]), tau));
          }
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          pt_walk(gamma, *n.first, order, out);
          pt_walk(gamma, *n.second, order, out);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          if (!n.guard.is_zero()) gdeg_prime(gamma, n.guard, order, out);
          pt_walk(gamma, *n.then_branch, order, out);
          pt_walk(gamma, *n.else_branch, order, out);
        } else {
          static_assert(std::is_same_v<T, WhileStmt>);
          if (!n.guard.is_zero()) gdeg_prime(gamma, n.guard, order, out);
          pt_walk(gamma, *n.body, order, out);
        }
      },
      s.node);
}

}  // namespace

std::vector<GConstraint> pt_constraints(const GammaAssign& gamma, const Stmt& stmt,
                                        const MonomialOrder& order) {
  ConstraintList out;
  pt_walk(gamma, stmt, order, out);
  return out.take();
}

GammaInference infer_gamma(const Program& p, LiteralPolicy policy,
                           const std::map<VarName, GDeg>& pins) {
  auto start = std::chrono::steady_clock::now();
  GammaInference result;
  auto [lifted, table] = lift_literals(p, policy);
  result.lifted = lifted;
  result.literals = std::move(table);

  // Step 1: one fresh unknown per program variable, ids in declared order.
  std::map<VarName, GSym> unknown_of;
  GammaAssign tmpl;
  int id = 0;
  for (const auto& v : lifted.declared_vars) {
    GSym s{GSymKind::Unknown, id++, v.name};
    unknown_of.emplace(v, s);
    tmpl.set(v, GDeg::sym(s));
  }

  // Step 2.
  MonomialOrder order = lifted.order();
  std::vector<GConstraint> constraints = pt_constraints(tmpl, *lifted.body, order);
  for (const auto& [v, d] : pins) {
    auto it = unknown_of.find(v);
    if (it == unknown_of.end()) throw UnboundVariable(v.name);
    constraints.push_back(GConstraint::between(GDeg::sym(it->second), d));
  }

  // Step 3.
  UnifyResult ures = unify(constraints, id + 1000);
  if (auto* unsat = std::get_if<UnifyUnsat>(&ures))
    throw InferenceError("g-degree constraints unsatisfiable at " + unsat->offending.lhs.to_string() +
                         " = 1");
  if (std::holds_alternative<UnifyDiverged>(ures))
    throw InferenceError("g-degree unification exceeded its rewrite-step budget");
  const GSubst& subst = std::get<GSubst>(ures);

  // Final step: map surviving unknowns to fresh base symbols, named in
  // first-use order over variables in declared order, oriented so the
  // first use of each base carries a positive exponent.  Pinned base
  // symbols pass through untouched; fresh ids start above them.
  int base_id = 0;
  for (const auto& [v, d] : pins)
    for (const auto& [s, e] : d.exponents())
      if (s.kind == GSymKind::Base) base_id = std::max(base_id, s.id + 1);
  std::map<GSym, GDeg> base_of;
  GammaAssign gamma;
  std::vector<std::pair<VarName, GDeg>> solved;
  for (const auto& v : lifted.declared_vars) {
    GDeg d = subst.apply(tmpl.at(v));
    for (const auto& [s, e] : d.exponents()) {
      if (s.kind != GSymKind::Unknown || base_of.count(s)) continue;
      GSym base{GSymKind::Base, base_id, "B" + std::to_string(base_id)};
      ++base_id;
      base_of.emplace(s, GDeg::sym(base, e > 0 ? 1 : -1));
    }
    solved.emplace_back(v, d);
  }
  for (auto& [v, d] : solved) {
    GDeg renamed;
    for (const auto& [s, e] : d.exponents()) {
      auto it = base_of.find(s);
      if (it != base_of.end())
        renamed = renamed.times(it->second.pow(e));
      else
        renamed = renamed.times(GDeg::sym(s, e));  // pinned base symbols
    }
    gamma.set(v, renamed);
  }
  result.gamma = std::move(gamma);
  result.inference_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

bool gamma_consistent(const GammaAssign& gamma, const Stmt& stmt) {
  bool ok = true;
  auto check_poly_gh = [&](const Polynomial& p) {
    if (!is_gh(gamma, p)) ok = false;
  };
  auto walk = [&](auto&& self, const Stmt& s) -> void {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AssignStmt>) {
            for (size_t i = 0; i < n.targets.size(); ++i) {
              GDegOfPoly d = gdeg_of_poly(gamma, n.values[i]);
              if (std::holds_alternative<NotGH>(d)) {
                ok = false;
              } else if (auto* tau = std::get_if<GDeg>(&d)) {
                if (!(*tau == gamma.at(n.targets[i]))) ok = false;
              }
            }
          } else if constexpr (std::is_same_v<T, SeqStmt>) {
            self(self, *n.first);
            self(self, *n.second);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            check_poly_gh(n.guard);
            self(self, *n.then_branch);
            self(self, *n.else_branch);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            check_poly_gh(n.guard);
            self(self, *n.body);
          }
        },
        s.node);
  };
  walk(walk, stmt);
  return ok;
}

std::string gamma_to_string(const GammaAssign& gamma, const std::vector<VarName>& var_order) {
  std::ostringstream os;
  for (const auto& v : var_order)
    if (gamma.covers(v)) os << v.name << " : " << gamma.at(v).to_string() << "\n";
  return os.str();
}

}  // namespace invgh
