#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "invgh/rational.hpp"

namespace invgh {

enum class GSymKind { Base, Unknown };

// Base-degree symbol (B0, B1, ...) or inference unknown.  Identity and
// ordering are (kind, id); the name is for display only.
struct GSym {
  GSymKind kind = GSymKind::Unknown;
  int id = 0;
  std::string name;

  friend bool operator<(const GSym& a, const GSym& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.id < b.id;
  }
  friend bool operator==(const GSym& a, const GSym& b) {
    return a.kind == b.kind && a.id == b.id;
  }
};

// Element of the free Abelian group over GSym; exponents never zero,
// the empty product is the identity degree 1.
class GDeg {
 public:
  GDeg() = default;
  static GDeg one() { return GDeg{}; }
  static GDeg sym(const GSym& s, int exp = 1);

  bool is_one() const { return exps_.empty(); }
  int exponent(const GSym& s) const;
  const std::map<GSym, int>& exponents() const { return exps_; }

  GDeg times(const GDeg& o) const;
  GDeg inverse() const;
  GDeg pow(int e) const;

  bool has_unknown() const;
  std::string to_string() const;

  friend bool operator==(const GDeg& a, const GDeg& b) { return a.exps_ == b.exps_; }
  friend bool operator<(const GDeg& a, const GDeg& b) { return a.exps_ < b.exps_; }

 private:
  std::map<GSym, int> exps_;
};

// One g-degree equation, stored normalized as lhs = 1 with the sign chosen
// so the smallest symbol carries a positive exponent.
struct GConstraint {
  GDeg lhs;
  static GConstraint between(const GDeg& t1, const GDeg& t2);
  static GConstraint normalized(GDeg d);
  bool is_trivial() const { return lhs.is_one(); }
  friend bool operator==(const GConstraint& a, const GConstraint& b) { return a.lhs == b.lhs; }
  friend bool operator<(const GConstraint& a, const GConstraint& b) { return a.lhs < b.lhs; }
};

// Idempotent substitution on unknowns.
class GSubst {
 public:
  GDeg apply(const GDeg& d) const;
  // Binds an unknown and rewrites all stored images so idempotence holds.
  void bind(const GSym& alpha, const GDeg& image);
  const std::map<GSym, GDeg>& bindings() const { return map_; }
  std::optional<GDeg> lookup(const GSym& alpha) const;

 private:
  std::map<GSym, GDeg> map_;
};

struct UnifyUnsat {
  GConstraint offending;
};

struct UnifyDiverged {
  long steps;
};

using UnifyResult = std::variant<GSubst, UnifyUnsat, UnifyDiverged>;

// Abelian-group unification.  Constraints are processed in insertion
// order; within a constraint the pivot is the unknown with minimal
// absolute exponent, ties broken by symbol id.  Fresh split unknowns are
// drawn from next_fresh_id.
UnifyResult unify(const std::vector<GConstraint>& constraints, int next_fresh_id = 1000000);

}  // namespace invgh
