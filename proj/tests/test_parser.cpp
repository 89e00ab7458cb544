#include <doctest.h>

#include <random>
#include <sstream>

#include "invgh/parser.hpp"

using namespace invgh;

namespace {

const char* kFreefall = R"(# models a falling mass point
x := x0;
v := v0;
t := t0;
while t - a != 0 {
  (x, v, t) := (x + v*dt, v - g*dt - rho*v*dt, t + dt);
}
)";

const char* kSumpower1 = R"(
(x, y, s) := (X + 1, 0, 1);
while x != 0 {
  if y == 0 {
    (x, y) := (x - 1, x);
  } else {
    (s, y) := (s + y^1, y - 1);
  }
}
)";

Polynomial P(const std::string& text) { return parse_polynomial(text); }

}  // namespace

TEST_CASE("freefall parses into init assignments followed by a loop") {
  Program p = parse_program(kFreefall);
  std::vector<std::string> names;
  for (const auto& v : p.declared_vars) names.push_back(v.name);
  CHECK(names == std::vector<std::string>{"x", "x0", "v", "v0", "t", "t0", "a", "dt", "g", "rho"});

  // Shape: Seq(x:=x0, Seq(v:=v0, Seq(t:=t0, While))).
  const auto* seq1 = std::get_if<SeqStmt>(&p.body->node);
  REQUIRE(seq1);
  const auto* first = std::get_if<AssignStmt>(&seq1->first->node);
  REQUIRE(first);
  CHECK(first->targets == std::vector<VarName>{VarName("x")});
  const auto* seq2 = std::get_if<SeqStmt>(&seq1->second->node);
  REQUIRE(seq2);
  const auto* seq3 = std::get_if<SeqStmt>(&seq2->second->node);
  REQUIRE(seq3);
  const auto* loop = std::get_if<WhileStmt>(&seq3->second->node);
  REQUIRE(loop);
  CHECK(loop->sense == GuardSense::NeqZero);
  CHECK(loop->guard == P("t - a"));
  const auto* body = std::get_if<AssignStmt>(&loop->body->node);
  REQUIRE(body);
  REQUIRE(body->targets.size() == 3);
  CHECK(body->values[0] == P("x + v*dt"));
  CHECK(body->values[1] == P("v - g*dt - rho*v*dt"));
  CHECK(body->values[2] == P("t + dt"));
}

TEST_CASE("trivial programs and malformed input") {
  Program skip = parse_program("skip;");
  CHECK(std::holds_alternative<SkipStmt>(skip.body->node));
  CHECK(skip.declared_vars.empty());

  CHECK_THROWS_AS(parse_program("while x { skip; }"), SyntaxError);
  CHECK_THROWS_AS(parse_program("if x != 0 { skip; } else { skip; }"), SyntaxError);
  CHECK_THROWS_AS(parse_program("x := ;"), SyntaxError);
  CHECK_THROWS_AS(parse_program("while x == 1 { skip; }"), SyntaxError);
  CHECK_THROWS_AS(parse_program("(x, x) := (1, 2);"), SyntaxError);

  try {
    parse_program("while x { skip; }");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 9);
    CHECK_FALSE(e.expected.empty());
  }
}

TEST_CASE("pretty printing round trips") {
  CHECK(pretty_print(parse_program("skip;")) == "skip;\n");
  CHECK(pretty_print(parse_program("x := 1 + 2*x;")) == "x := 2*x + 1;\n");

  for (const char* src : {kFreefall, kSumpower1,
                          "x := 3/2; if x == 0 { skip; } else { (x, y) := (y, x); }",
                          "while z == 0 { z := z' + 1; skip; }"}) {
    Program once = parse_program(src);
    Program twice = parse_program(pretty_print(once));
    CHECK(program_equal(once, twice));
    // The canonical text is a fixed point of print-then-reparse.
    CHECK(pretty_print(twice) == pretty_print(once));
    CHECK(pretty_print(parse_program(pretty_print(twice))) == pretty_print(twice));
  }
}

TEST_CASE("lift_literals replaces nonzero literals and records values") {
  SUBCASE("sumpower init") {
    Program p = parse_program("(x, y, s) := (X + 1, 0, 1);");
    auto [lifted, table] = lift_literals(p, LiteralPolicy::AllOccurrences);
    REQUIRE(table.entries.size() == 2);
    CHECK(table.entries[0].name == VarName("k1"));
    CHECK(table.entries[0].value == 1);
    CHECK(table.entries[1].value == 1);
    const auto* assign = std::get_if<AssignStmt>(&lifted.body->node);
    REQUIRE(assign);
    CHECK(assign->values[0] == P("X + k1"));
    CHECK(assign->values[1].is_zero());  // literal 0 never lifted
    CHECK(assign->values[2] == P("k2"));
  }

  SUBCASE("skip unchanged") {
    Program p = parse_program("skip;");
    auto [lifted, table] = lift_literals(p, LiteralPolicy::AllOccurrences);
    CHECK(table.entries.empty());
    CHECK(program_equal(lifted, p));
  }

  SUBCASE("single literal") {
    Program p = parse_program("x := x + 2;");
    auto [lifted, table] = lift_literals(p, LiteralPolicy::AllOccurrences);
    REQUIRE(table.entries.size() == 1);
    CHECK(table.entries[0].value == 2);
    const auto* assign = std::get_if<AssignStmt>(&lifted.body->node);
    REQUIRE(assign);
    CHECK(assign->values[0] == P("x + k1"));
  }

  SUBCASE("policy None is the identity") {
    Program p = parse_program("x := x + 2;");
    auto [lifted, table] = lift_literals(p, LiteralPolicy::None);
    CHECK(table.entries.empty());
    CHECK(program_equal(lifted, p));
  }

  SUBCASE("fresh names avoid program variables") {
    Program p = parse_program("k1 := k1 + 5;");
    auto [lifted, table] = lift_literals(p, LiteralPolicy::AllOccurrences);
    REQUIRE(table.entries.size() == 1);
    CHECK(table.entries[0].name == VarName("k1'"));
  }
}

TEST_CASE("substituting recorded values undoes the lifting") {
  std::mt19937_64 rng(4242);
  auto random_source = [&]() {
    std::ostringstream os;
    const char* vars[] = {"x", "y"};
    int stmts = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < stmts; ++i) {
      const char* target = vars[rng() % 2];
      long c1 = static_cast<long>(rng() % 7) - 3;
      long c2 = static_cast<long>(rng() % 5);
      os << target << " := " << c1 << "*x + y^2 - " << c2 << ";\n";
    }
    return os.str();
  };
  for (int i = 0; i < 100; ++i) {
    Program p = parse_program(random_source());
    auto [lifted, table] = lift_literals(p, LiteralPolicy::AllOccurrences);
    std::map<VarName, Polynomial> undo;
    for (const auto& e : table.entries) undo.emplace(e.name, Polynomial::constant(e.value));

    auto collect = [](const Stmt& s, auto&& self, std::vector<const AssignStmt*>& out) -> void {
      if (const auto* seq = std::get_if<SeqStmt>(&s.node)) {
        self(*seq->first, self, out);
        self(*seq->second, self, out);
      } else if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
        out.push_back(a);
      }
    };
    std::vector<const AssignStmt*> before, after;
    collect(*p.body, collect, before);
    collect(*lifted.body, collect, after);
    REQUIRE(before.size() == after.size());
    for (size_t k = 0; k < before.size(); ++k)
      CHECK(after[k]->values[0].substitute(undo) == before[k]->values[0]);
  }
}

TEST_CASE("declared variable order is stable across parses") {
  for (int i = 0; i < 5; ++i) {
    Program a = parse_program(kFreefall);
    Program b = parse_program(kFreefall);
    CHECK(a.declared_vars == b.declared_vars);
  }
}
