#include "invgh/ast.hpp"

#include <algorithm>
#include <sstream>

namespace invgh {

StmtPtr make_stmt(Stmt s) { return std::make_shared<const Stmt>(std::move(s)); }

bool stmt_equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const T& nb = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SkipStmt>) {
          return true;
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          return na.targets == nb.targets && na.values == nb.values;
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          return stmt_equal(*na.first, *nb.first) && stmt_equal(*na.second, *nb.second);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return na.guard == nb.guard && stmt_equal(*na.then_branch, *nb.then_branch) &&
                 stmt_equal(*na.else_branch, *nb.else_branch);
        } else {
          static_assert(std::is_same_v<T, WhileStmt>);
          return na.guard == nb.guard && na.sense == nb.sense && stmt_equal(*na.body, *nb.body);
        }
      },
      a.node);
}

bool program_equal(const Program& a, const Program& b) {
  // Declaration order is derived from source text; canonical printing may
  // reorder first occurrences, so programs compare on variable sets and
  // body structure.
  std::set<VarName> va(a.declared_vars.begin(), a.declared_vars.end());
  std::set<VarName> vb(b.declared_vars.begin(), b.declared_vars.end());
  return va == vb && stmt_equal(*a.body, *b.body);
}

namespace {

void print_stmt(std::ostringstream& os, const Stmt& s, const MonomialOrder& order, int indent) {
  std::string pad(2 * indent, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          os << pad << "skip;\n";
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          os << pad;
          if (n.targets.size() == 1) {
            os << n.targets[0].name << " := " << n.values[0].to_string(order) << ";\n";
          } else {
            os << "(";
            for (size_t i = 0; i < n.targets.size(); ++i)
              os << (i ? ", " : "") << n.targets[i].name;
            os << ") := (";
            for (size_t i = 0; i < n.values.size(); ++i)
              os << (i ? ", " : "") << n.values[i].to_string(order);
            os << ");\n";
          }
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          print_stmt(os, *n.first, order, indent);
          print_stmt(os, *n.second, order, indent);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          os << pad << "if " << n.guard.to_string(order) << " == 0 {\n";
          print_stmt(os, *n.then_branch, order, indent + 1);
          os << pad << "} else {\n";
          print_stmt(os, *n.else_branch, order, indent + 1);
          os << pad << "}\n";
        } else {
          static_assert(std::is_same_v<T, WhileStmt>);
          os << pad << "while " << n.guard.to_string(order)
             << (n.sense == GuardSense::EqZero ? " == 0 {\n" : " != 0 {\n");
          print_stmt(os, *n.body, order, indent + 1);
          os << pad << "}\n";
        }
      },
      s.node);
}

}  // namespace

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  print_stmt(os, *p.body, p.order(), 0);
  return os.str();
}

std::vector<Polynomial> guard_polynomials(const Stmt& s) {
  std::vector<Polynomial> out;
  auto walk = [&](auto&& self, const Stmt& st) -> void {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, SeqStmt>) {
            self(self, *n.first);
            self(self, *n.second);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            out.push_back(n.guard);
            self(self, *n.then_branch);
            self(self, *n.else_branch);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            out.push_back(n.guard);
            self(self, *n.body);
          }
        },
        st.node);
  };
  walk(walk, s);
  return out;
}

std::set<VarName> stmt_vars(const Stmt& s) {
  std::set<VarName> out;
  auto walk = [&](auto&& self, const Stmt& st) -> void {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AssignStmt>) {
            for (const auto& t : n.targets) out.insert(t);
            for (const auto& p : n.values)
              for (const auto& v : p.vars()) out.insert(v);
          } else if constexpr (std::is_same_v<T, SeqStmt>) {
            self(self, *n.first);
            self(self, *n.second);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            for (const auto& v : n.guard.vars()) out.insert(v);
            self(self, *n.then_branch);
            self(self, *n.else_branch);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            for (const auto& v : n.guard.vars()) out.insert(v);
            self(self, *n.body);
          }
        },
        st.node);
  };
  walk(walk, s);
  return out;
}

bool contains_loop(const Stmt& s) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SeqStmt>)
          return contains_loop(*n.first) || contains_loop(*n.second);
        else if constexpr (std::is_same_v<T, IfStmt>)
          return contains_loop(*n.then_branch) || contains_loop(*n.else_branch);
        else if constexpr (std::is_same_v<T, WhileStmt>)
          return true;
        else
          return false;
      },
      s.node);
}

namespace {

class Lifter {
 public:
  Lifter(const Program& p, const MonomialOrder& order) : order_(order) {
    for (const auto& v : p.declared_vars) taken_.insert(v.name);
  }

  Polynomial lift_poly(const Polynomial& p, SourceLoc loc) {
    // Terms visited in ascending canonical order for a deterministic table.
    std::vector<const std::pair<const Monomial, Rational>*> sorted;
    for (const auto& t : p.terms()) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [&](auto* a, auto* b) { return order_.less(a->first, b->first); });
    Polynomial out;
    for (auto* t : sorted) {
      const auto& [w, c] = *t;
      bool literal = w.is_one() || (c != 1 && c != -1);
      if (!literal) {
        out = out + Polynomial::monomial(w, c);
        continue;
      }
      VarName fresh = next_name();
      table_.entries.push_back({fresh, c, loc});
      new_vars_.push_back(fresh);
      out = out + Polynomial::monomial(w.times(Monomial::var(fresh)), 1);
    }
    return out;
  }

  StmtPtr lift_stmt(const Stmt& s) {
    Stmt out;
    out.loc = s.loc;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, SkipStmt>) {
            out.node = SkipStmt{};
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            AssignStmt a;
            a.targets = n.targets;
            for (const auto& p : n.values) a.values.push_back(lift_poly(p, s.loc));
            out.node = std::move(a);
          } else if constexpr (std::is_same_v<T, SeqStmt>) {
            out.node = SeqStmt{lift_stmt(*n.first), lift_stmt(*n.second)};
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            Polynomial g = lift_poly(n.guard, s.loc);
            out.node = IfStmt{std::move(g), lift_stmt(*n.then_branch), lift_stmt(*n.else_branch)};
          } else {
            static_assert(std::is_same_v<T, WhileStmt>);
            Polynomial g = lift_poly(n.guard, s.loc);
            out.node = WhileStmt{std::move(g), n.sense, lift_stmt(*n.body)};
          }
        },
        s.node);
    return make_stmt(std::move(out));
  }

  LiteralTable table_;
  std::vector<VarName> new_vars_;

 private:
  VarName next_name() {
    std::string base = "k" + std::to_string(++counter_);
    while (taken_.count(base)) base += "'";
    taken_.insert(base);
    return VarName(base);
  }

  const MonomialOrder& order_;
  std::set<std::string> taken_;
  int counter_ = 0;
};

}  // namespace

std::pair<Program, LiteralTable> lift_literals(const Program& p, LiteralPolicy policy) {
  if (policy == LiteralPolicy::None) return {p, LiteralTable{}};
  MonomialOrder order = p.order();
  Lifter lifter(p, order);
  Program out;
  out.body = lifter.lift_stmt(*p.body);
  out.declared_vars = p.declared_vars;
  for (const auto& v : lifter.new_vars_) out.declared_vars.push_back(v);
  return {std::move(out), std::move(lifter.table_)};
}

}  // namespace invgh
