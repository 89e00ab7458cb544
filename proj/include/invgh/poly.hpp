#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "invgh/rational.hpp"

namespace invgh {

struct VarName {
  std::string name;
  VarName() = default;
  explicit VarName(std::string n) : name(std::move(n)) {}
  auto operator<=>(const VarName&) const = default;
};

struct UnboundVariable : std::runtime_error {
  explicit UnboundVariable(const std::string& v)
      : std::runtime_error("unbound variable: " + v) {}
};

// A state maps variables to exact rationals.
using State = std::map<VarName, Rational>;

// Power product over variables; the empty product is the monomial 1.
// Stored exponents are always positive.
class Monomial {
 public:
  Monomial() = default;
  static Monomial one() { return Monomial{}; }
  static Monomial var(const VarName& v, int exp = 1);

  bool is_one() const { return exps_.empty(); }
  int total_degree() const;
  int exponent(const VarName& v) const;
  const std::map<VarName, int>& exponents() const { return exps_; }

  Monomial times(const Monomial& other) const;
  Monomial pow(int e) const;

  std::set<VarName> vars() const;
  auto operator<=>(const Monomial&) const = default;

 private:
  std::map<VarName, int> exps_;
};

// Graded lexicographic order relative to a variable precedence list
// (earlier in the list = higher precedence).  Used for canonical printing,
// coefficient extraction and monomial enumeration.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<VarName> vars);

  // true iff a < b in graded lex (total degree first, then lexicographic
  // comparison of exponents along the precedence list).
  bool less(const Monomial& a, const Monomial& b) const;

  const std::vector<VarName>& vars() const { return vars_; }
  std::string monomial_text(const Monomial& w) const;
  // Compact text used in parameter labels: x^2*y prints as "x2y".
  std::string monomial_label(const Monomial& w) const;

 private:
  std::vector<VarName> vars_;
  std::map<VarName, size_t> rank_;
};

// Exact multivariate polynomial over the rationals.  Terms with zero
// coefficient are never stored; the zero polynomial has no terms.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial zero() { return Polynomial{}; }
  static Polynomial constant(const Rational& c);
  static Polynomial var(const VarName& v);
  static Polynomial monomial(const Monomial& w, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const Monomial& w) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(int e) const;
  bool operator==(const Polynomial&) const = default;

  // Simultaneous substitution: every variable image is taken with respect
  // to the original polynomial.
  Polynomial substitute(const std::map<VarName, Polynomial>& binding) const;

  // Total degree; nullopt for the zero polynomial.
  std::optional<int> degree() const;

  Rational eval(const State& sigma) const;

  std::set<VarName> vars() const;
  Monomial leading_monomial(const MonomialOrder& order) const;
  std::string to_string(const MonomialOrder& order) const;

 private:
  void add_term(const Monomial& w, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace invgh
