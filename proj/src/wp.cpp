#include "invgh/wp.hpp"

#include <algorithm>

namespace invgh {

namespace {

std::map<VarName, Polynomial> binding_of(const AssignStmt& a) {
  std::map<VarName, Polynomial> b;
  for (size_t i = 0; i < a.targets.size(); ++i) b.emplace(a.targets[i], a.values[i]);
  return b;
}

GDeg template_gdeg(const GammaAssign& gamma, const Template& t, const char* what) {
  std::optional<GDeg> common;
  for (const auto& [w, f] : t.terms()) {
    GDeg d = gdeg_of_monomial(gamma, w);
    if (!common)
      common = d;
    else if (!(d == *common))
      throw NotGHError(std::string(what) + " is not generalized homogeneous");
  }
  if (!common) throw NotGHError(std::string(what) + " is the zero template");
  return *common;
}

void push_goal(std::vector<Template>& goal, Template t) {
  if (!t.is_zero()) goal.push_back(std::move(t));
}

}  // namespace

std::pair<std::vector<ParamId>, Template> rem_par(Session& session, const Template& f,
                                                  const Polynomial& p) {
  std::optional<int> df = f.degree();
  std::optional<int> dp = p.degree();
  if (!df || !dp || *df < *dp) return {{}, f};

  TemplateSpec spec;
  spec.vars = session.vars();
  spec.degree = *df - *dp;
  spec.param_prefix = "r" + std::to_string(session.next_rem_site());
  if (session.gh_mode()) {
    GDeg tf = template_gdeg(session.gamma(), f, "remainder input");
    GDegOfPoly dpoly = gdeg_of_poly(session.gamma(), p);
    const GDeg* tp = std::get_if<GDeg>(&dpoly);
    if (!tp) throw NotGHError("remainder divisor is not generalized homogeneous");
    spec.gh = GHFilter{session.gamma(), tf.times(tp->inverse())};
  }

  std::vector<Monomial> monomials = enumerate_monomials(spec.vars, spec.degree, spec.gh);
  if (monomials.empty()) return {{}, f};

  BuiltTemplate q;
  for (const auto& w : monomials) {
    ParamId a =
        session.alloc().fresh(spec.param_prefix + "_" + session.order().monomial_label(w));
    q.params.push_back(a);
    q.tmpl.add_term(w, AffineForm::param(a));
  }
  Template result = f.plus(q.tmpl.mul_poly(p).negated());
  return {std::move(q.params), std::move(result)};
}

GenState wpc(Session& session, const Stmt& stmt, GenState state) {
  if (session.gh_mode()) {
    for (const auto& t : state.goal) template_gdeg(session.gamma(), t, "goal template");
  }
  return std::visit(
      [&](const auto& n) -> GenState {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          return state;
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          auto binding = binding_of(n);
          GenState out;
          out.params = std::move(state.params);
          out.constraints = std::move(state.constraints);
          for (const auto& t : state.goal) push_goal(out.goal, t.substitute(binding));
          return out;
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          return wpc(session, *n.first, wpc(session, *n.second, std::move(state)));
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          GenState s1 = wpc(session, *n.then_branch, state);
          GenState s2 = wpc(session, *n.else_branch, state);
          GenState out;
          // A1 u A2 then the remainder params; C1 u C2 with the shared
          // prefix deduplicated.
          out.params = s1.params;
          for (size_t i = state.params.size(); i < s2.params.size(); ++i)
            out.params.push_back(s2.params[i]);
          out.constraints = s1.constraints;
          for (size_t i = state.constraints.size(); i < s2.constraints.size(); ++i)
            out.constraints.push_back(s2.constraints[i]);
          for (const auto& g2 : s2.goal) push_goal(out.goal, g2.mul_poly(n.guard));
          for (const auto& g1 : s1.goal) {
            auto [fresh, r] = rem_par(session, g1, n.guard);
            for (auto& a : fresh) out.params.push_back(std::move(a));
            push_goal(out.goal, std::move(r));
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, WhileStmt>);
          std::vector<Template> loop_goal = state.goal;
          GenState s1 = wpc(session, *n.body, std::move(state));
          GenState out;
          out.params = std::move(s1.params);
          out.constraints = std::move(s1.constraints);
          out.constraints.push_back(EqConstraint{loop_goal, s1.goal});
          out.goal = std::move(loop_goal);
          return out;
        }
      },
      stmt.node);
}

std::vector<Polynomial> wp_concrete(const Stmt& stmt, std::vector<Polynomial> goal,
                                    const std::optional<GammaAssign>& gh_filter) {
  auto dedup_push = [](std::vector<Polynomial>& out, Polynomial p) {
    if (p.is_zero()) return;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  return std::visit(
      [&](const auto& n) -> std::vector<Polynomial> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          return goal;
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          auto binding = binding_of(n);
          std::vector<Polynomial> out;
          for (const auto& g : goal) dedup_push(out, g.substitute(binding));
          return out;
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          return wp_concrete(*n.first, wp_concrete(*n.second, std::move(goal), gh_filter),
                             gh_filter);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          std::vector<Polynomial> w1 = wp_concrete(*n.then_branch, goal, gh_filter);
          std::vector<Polynomial> w2 = wp_concrete(*n.else_branch, goal, gh_filter);
          std::vector<Polynomial> out;
          for (const auto& g : w2) dedup_push(out, g * n.guard);
          // Rem with Rem(f, p) = f; in the GH-restricted semantics only GH
          // elements flow through the remainder position.
          for (const auto& g : w1) {
            if (gh_filter && !is_gh(*gh_filter, g)) continue;
            dedup_push(out, g);
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, WhileStmt>);
          throw ContainsLoop{};
        }
      },
      stmt.node);
}

}  // namespace invgh
