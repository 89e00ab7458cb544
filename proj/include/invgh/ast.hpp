#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "invgh/poly.hpp"

namespace invgh {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

enum class GuardSense { EqZero, NeqZero };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct SkipStmt {};

// Simultaneous assignment: all right-hand sides are evaluated in the
// pre-state, then written.  targets are pairwise distinct.
struct AssignStmt {
  std::vector<VarName> targets;
  std::vector<Polynomial> values;
};

struct SeqStmt {
  StmtPtr first;
  StmtPtr second;
};

struct IfStmt {
  Polynomial guard;  // tested against = 0
  StmtPtr then_branch;
  StmtPtr else_branch;
};

struct WhileStmt {
  Polynomial guard;
  GuardSense sense;
  StmtPtr body;
};

struct Stmt {
  std::variant<SkipStmt, AssignStmt, SeqStmt, IfStmt, WhileStmt> node;
  SourceLoc loc;
};

StmtPtr make_stmt(Stmt s);

struct Program {
  StmtPtr body;
  // Parse order of first occurrence; drives every canonical monomial order.
  std::vector<VarName> declared_vars;

  MonomialOrder order() const { return MonomialOrder(declared_vars); }
};

bool stmt_equal(const Stmt& a, const Stmt& b);
bool program_equal(const Program& a, const Program& b);

std::string pretty_print(const Program& p);

// Guard polynomials in pre-order traversal (while guards and if guards).
std::vector<Polynomial> guard_polynomials(const Stmt& s);

std::set<VarName> stmt_vars(const Stmt& s);
bool contains_loop(const Stmt& s);

struct LiteralEntry {
  VarName name;
  Rational value;
  SourceLoc loc;
};

struct LiteralTable {
  std::vector<LiteralEntry> entries;
};

enum class LiteralPolicy { AllOccurrences, None };

// Replaces nonzero numeric literals in program polynomials by fresh
// variables and records their values.  A constant term is always treated
// as a literal; a coefficient of +-1 on a nontrivial monomial is treated
// as a sign, not a literal.  Literal 0 is never lifted.
std::pair<Program, LiteralTable> lift_literals(const Program& p, LiteralPolicy policy);

}  // namespace invgh
