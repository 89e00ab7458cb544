#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "invgh/poly.hpp"

namespace invgh {

// Unknown coefficient parameter.  Indices are unique within one synthesis
// session; the label encodes where the parameter came from (a_v, r0_x, ...).
struct ParamId {
  unsigned index = 0;
  std::string label;
  bool operator<(const ParamId& o) const { return index < o.index; }
  bool operator==(const ParamId& o) const { return index == o.index; }
};

// A valuation assigns rationals to parameters; parameters not listed are 0.
using Valuation = std::map<ParamId, Rational>;

// constant + sum of coeff * param; zero coefficients are never stored.
class AffineForm {
 public:
  AffineForm() = default;
  static AffineForm constant(const Rational& c);
  static AffineForm param(const ParamId& a, const Rational& coeff = 1);

  bool is_zero() const { return rat_is_zero(constant_) && coeffs_.empty(); }
  const Rational& constant_part() const { return constant_; }
  const std::map<ParamId, Rational>& coeffs() const { return coeffs_; }

  AffineForm plus(const AffineForm& o) const;
  AffineForm scaled(const Rational& c) const;
  AffineForm negated() const { return scaled(-1); }

  Rational eval(const Valuation& v) const;
  std::string to_string() const;

 private:
  Rational constant_ = 0;
  std::map<ParamId, Rational> coeffs_;
};

// Polynomial with affine-form coefficients: always linear in parameters.
class Template {
 public:
  Template() = default;
  static Template from_poly(const Polynomial& p);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, AffineForm>& terms() const { return terms_; }
  size_t monomial_count() const { return terms_.size(); }

  void add_term(const Monomial& w, const AffineForm& f);
  Template plus(const Template& o) const;
  Template negated() const;
  Template mul_poly(const Polynomial& p) const;
  Template substitute(const std::map<VarName, Polynomial>& binding) const;
  Polynomial instantiate(const Valuation& v) const;

  std::optional<int> degree() const;
  std::set<ParamId> params() const;
  std::string to_string(const MonomialOrder& order) const;
  bool operator==(const Template&) const;

 private:
  std::map<Monomial, AffineForm> terms_;
};

}  // namespace invgh
