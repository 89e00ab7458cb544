#include <doctest.h>

#include "invgh/parser.hpp"
#include "invgh/solver.hpp"
#include "invgh/wp.hpp"

using namespace invgh;

namespace {

const char* kFreefall = R"(
x := x0;
v := v0;
t := t0;
while t - a != 0 {
  (x, v, t) := (x + v*dt, v - g*dt - rho*v*dt, t + dt);
}
)";

Polynomial P(const std::string& text) { return parse_polynomial(text); }

GammaAssign freefall_gamma() {
  GSym A{GSymKind::Base, 0, "A"}, T{GSymKind::Base, 1, "T"};
  GammaAssign gamma;
  auto d = [&](int ea, int et) { return GDeg::sym(A, ea).times(GDeg::sym(T, et)); };
  gamma.set(VarName("x"), d(1, 2));
  gamma.set(VarName("x0"), d(1, 2));
  gamma.set(VarName("v"), d(1, 1));
  gamma.set(VarName("v0"), d(1, 1));
  gamma.set(VarName("t"), d(0, 1));
  gamma.set(VarName("t0"), d(0, 1));
  gamma.set(VarName("a"), d(0, 1));
  gamma.set(VarName("dt"), d(0, 1));
  gamma.set(VarName("g"), d(1, 0));
  gamma.set(VarName("rho"), d(0, -1));
  return gamma;
}

const StmtPtr& freefall_body(const Program& p) {
  const auto* s1 = std::get_if<SeqStmt>(&p.body->node);
  const auto* s2 = std::get_if<SeqStmt>(&s1->second->node);
  const auto* s3 = std::get_if<SeqStmt>(&s2->second->node);
  const auto* loop = std::get_if<WhileStmt>(&s3->second->node);
  return loop->body;
}

}  // namespace

TEST_CASE("parametric remainder over one variable") {
  Session session({VarName("x")}, std::nullopt);
  Template f = Template::from_poly(P("x^2"));
  auto [params, rem] = rem_par(session, f, P("x + 1"));
  REQUIRE(params.size() == 2);  // quotient a1*x + a2

  // Instantiating the quotient parameters with (1, -1) yields the
  // standard remainder of x^2 by x + 1.
  Valuation v;
  for (const auto& a : params) v[a] = a.label.find('x') != std::string::npos ? rat(1) : rat(-1);
  CHECK(rem.instantiate(v) == P("1"));
  // All-zero quotient gives back f.
  CHECK(rem.instantiate({}) == P("x^2"));
}

TEST_CASE("parametric remainder degenerate cases") {
  Session session({VarName("x")}, std::nullopt);
  Template f = Template::from_poly(P("x"));
  auto [params, rem] = rem_par(session, f, P("x^2"));
  CHECK(params.empty());
  CHECK(rem == f);

  // Zero divisor has no degree: no quotient template either.
  auto [params2, rem2] = rem_par(session, f, Polynomial::zero());
  CHECK(params2.empty());
  CHECK(rem2 == f);
}

TEST_CASE("GH-mode remainder with an unrealizable quotient degree") {
  std::vector<VarName> vars;
  for (const char* n : {"x", "x0", "v", "v0", "t", "t0", "a", "dt", "g", "rho"})
    vars.push_back(VarName(n));
  Session session(vars, freefall_gamma());
  ParamId a = session.alloc().fresh("a_v");
  Template f;
  f.add_term(Monomial::var(VarName("v")), AffineForm::param(a));

  // deg(f) - deg(p) = 0 and the required quotient g-degree is A, which no
  // degree-0 monomial can realize: f must come back unchanged.
  auto [params, rem] = rem_par(session, f, P("t - a"));
  CHECK(params.empty());
  CHECK(rem == f);
}

TEST_CASE("wpc on the freefall program produces one loop constraint") {
  Program p = parse_program(kFreefall);
  Session session(p.declared_vars, std::nullopt);
  TemplateSpec spec;
  spec.vars = p.declared_vars;
  spec.degree = 3;
  BuiltTemplate built = build_template(spec, session.alloc());
  REQUIRE(built.tmpl.monomial_count() == 286);

  GenState initial;
  initial.params = built.params;
  initial.goal.push_back(built.tmpl);
  GenState out = wpc(session, *p.body, std::move(initial));

  REQUIRE(out.constraints.size() == 1);
  REQUIRE(out.constraints[0].lhs.size() == 1);
  REQUIRE(out.constraints[0].rhs.size() == 1);
  CHECK(out.constraints[0].lhs[0] == built.tmpl);

  std::map<VarName, Polynomial> body_sub{{VarName("x"), P("x + v*dt")},
                                         {VarName("v"), P("v - g*dt - rho*v*dt")},
                                         {VarName("t"), P("t + dt")}};
  CHECK(out.constraints[0].rhs[0] == built.tmpl.substitute(body_sub));

  std::map<VarName, Polynomial> init_sub{{VarName("x"), P("x0")},
                                         {VarName("v"), P("v0")},
                                         {VarName("t"), P("t0")}};
  REQUIRE(out.goal.size() == 1);
  CHECK(out.goal[0] == built.tmpl.substitute(init_sub));
  CHECK(out.params == built.params);  // no remainder sites in freefall
}

TEST_CASE("wpc base cases") {
  std::vector<VarName> vars{VarName("x"), VarName("y")};
  Session session(vars, std::nullopt);
  ParamId a1 = session.alloc().fresh("a1"), a2 = session.alloc().fresh("a2");
  Template g;
  g.add_term(Monomial::var(VarName("x")), AffineForm::param(a1));
  g.add_term(Monomial::var(VarName("y")), AffineForm::param(a2));

  GenState state;
  state.params = {a1, a2};
  state.goal.push_back(g);

  SUBCASE("skip leaves the state unchanged") {
    GenState out = wpc(session, *parse_program("skip;").body, state);
    CHECK(out.goal.size() == 1);
    CHECK(out.goal[0] == g);
    CHECK(out.constraints.empty());
  }

  SUBCASE("simultaneous swap exchanges the monomials") {
    GenState out = wpc(session, *parse_program("(x, y) := (y, x);").body, state);
    REQUIRE(out.goal.size() == 1);
    Template expected;
    expected.add_term(Monomial::var(VarName("y")), AffineForm::param(a1));
    expected.add_term(Monomial::var(VarName("x")), AffineForm::param(a2));
    CHECK(out.goal[0] == expected);
    CHECK(out.constraints.empty());
  }

  SUBCASE("goal templates that collapse to zero are dropped") {
    GenState out = wpc(session, *parse_program("(x, y) := (0, 0);").body, state);
    CHECK(out.goal.empty());
  }
}

TEST_CASE("wpc if case multiplies the else goal and takes a remainder of the then goal") {
  std::vector<VarName> vars{VarName("x"), VarName("y")};
  Session session(vars, std::nullopt);
  ParamId a = session.alloc().fresh("a_x");
  Template g;
  g.add_term(Monomial::var(VarName("x")), AffineForm::param(a));

  GenState state;
  state.params = {a};
  state.goal.push_back(g);
  Program p = parse_program("if y == 0 { x := x - 1; } else { x := 2*x; }");
  GenState out = wpc(session, *p.body, std::move(state));

  REQUIRE(out.goal.size() == 2);
  // First the guarded else goal: y * (a*2x).
  Template else_goal = g.substitute({{VarName("x"), P("2*x")}}).mul_poly(P("y"));
  CHECK(out.goal[0] == else_goal);
  // Then the remainder of the then goal by the guard; the degree-0
  // quotient contributes one fresh parameter.
  REQUIRE(out.params.size() == 2);
  Template then_goal = g.substitute({{VarName("x"), P("x - 1")}});
  Template quotient;
  quotient.add_term(Monomial::one(), AffineForm::param(out.params[1]));
  CHECK(out.goal[1] == then_goal.plus(quotient.mul_poly(P("y")).negated()));
  CHECK(out.constraints.empty());
}

TEST_CASE("wp_concrete matches hand-computed transformers") {
  Program p = parse_program(kFreefall);
  const Stmt& body = *freefall_body(p);

  Polynomial p1 = P("-g*t + g*t0 - v + v0 - x*rho + x0*rho");
  Polynomial p2 = P("-g*t^2 + g*t0^2 - 2*t*v + 2*t0*v0 + 2*x - 2*x0");

  // The loop body preserves p1 exactly.
  CHECK(wp_concrete(body, {p1}) == std::vector<Polynomial>{p1});

  // The quadratic candidate is not preserved: the body adds a drift term,
  // so p2 = 0 is not a loop invariant of this discretization.
  Polynomial drift = P("g*dt^2 + 2*rho*v*t*dt + 2*rho*v*dt^2");
  CHECK(wp_concrete(body, {p2}) == std::vector<Polynomial>{p2 + drift});
  CHECK(wp_concrete(body, {p1 + p2}) == std::vector<Polynomial>{p1 + p2 + drift});

  CHECK(wp_concrete(*parse_program("skip;").body, {p1}) == std::vector<Polynomial>{p1});

  Program branch = parse_program("if x == 0 { y := 0; } else { skip; }");
  CHECK(wp_concrete(*branch.body, {P("y")}) == std::vector<Polynomial>{P("x*y")});

  CHECK_THROWS_AS(wp_concrete(*p.body, {p1}), ContainsLoop);
}

TEST_CASE("GH-mode wpc keeps every goal template homogeneous") {
  Program p = parse_program(kFreefall);
  GammaAssign gamma = freefall_gamma();
  Session session(p.declared_vars, gamma);

  TemplateSpec spec;
  spec.vars = p.declared_vars;
  spec.degree = 2;
  spec.gh = GHFilter{gamma, gamma.at(VarName("v"))};
  BuiltTemplate built = build_template(spec, session.alloc());
  REQUIRE(built.tmpl.monomial_count() == 8);

  GenState initial;
  initial.params = built.params;
  initial.goal.push_back(built.tmpl);
  GenState out = wpc(session, *p.body, std::move(initial));

  auto check_gh = [&](const Template& t) {
    std::optional<GDeg> common;
    for (const auto& [w, f] : t.terms()) {
      GDeg d = gdeg_of_monomial(gamma, w);
      if (!common)
        common = d;
      else
        CHECK(d == *common);
    }
  };
  for (const auto& t : out.goal) check_gh(t);
  for (const auto& c : out.constraints) {
    for (const auto& t : c.lhs) check_gh(t);
    for (const auto& t : c.rhs) check_gh(t);
  }
}
