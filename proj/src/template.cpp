#include "invgh/template.hpp"

#include <algorithm>
#include <sstream>

namespace invgh {

AffineForm AffineForm::constant(const Rational& c) {
  AffineForm f;
  f.constant_ = c;
  return f;
}

AffineForm AffineForm::param(const ParamId& a, const Rational& coeff) {
  AffineForm f;
  if (!rat_is_zero(coeff)) f.coeffs_.emplace(a, coeff);
  return f;
}

AffineForm AffineForm::plus(const AffineForm& o) const {
  AffineForm r = *this;
  r.constant_ += o.constant_;
  for (const auto& [a, c] : o.coeffs_) {
    auto [it, fresh] = r.coeffs_.emplace(a, c);
    if (!fresh) {
      it->second += c;
      if (rat_is_zero(it->second)) r.coeffs_.erase(it);
    }
  }
  return r;
}

AffineForm AffineForm::scaled(const Rational& c) const {
  AffineForm r;
  if (rat_is_zero(c)) return r;
  r.constant_ = constant_ * c;
  for (const auto& [a, k] : coeffs_) r.coeffs_.emplace(a, k * c);
  return r;
}

Rational AffineForm::eval(const Valuation& v) const {
  Rational total = constant_;
  for (const auto& [a, c] : coeffs_) {
    auto it = v.find(a);
    if (it != v.end()) total += c * it->second;
  }
  return total;
}

std::string AffineForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&](const Rational& c) -> Rational {
    if (first) {
      first = false;
      if (sgn(c) < 0) os << "-";
      return abs(c);
    }
    os << (sgn(c) < 0 ? " - " : " + ");
    return abs(c);
  };
  for (const auto& [a, c] : coeffs_) {
    Rational k = sep(c);
    if (k != 1) os << rat_to_string(k) << "*";
    os << a.label;
  }
  if (!rat_is_zero(constant_) || first) {
    Rational k = sep(constant_);
    os << rat_to_string(k);
  }
  return os.str();
}

Template Template::from_poly(const Polynomial& p) {
  Template t;
  for (const auto& [w, c] : p.terms()) t.terms_.emplace(w, AffineForm::constant(c));
  return t;
}

void Template::add_term(const Monomial& w, const AffineForm& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, f);
  if (!fresh) {
    it->second = it->second.plus(f);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Template Template::plus(const Template& o) const {
  Template r = *this;
  for (const auto& [w, f] : o.terms_) r.add_term(w, f);
  return r;
}

Template Template::negated() const {
  Template r;
  for (const auto& [w, f] : terms_) r.terms_.emplace(w, f.negated());
  return r;
}

Template Template::mul_poly(const Polynomial& p) const {
  Template r;
  for (const auto& [w, f] : terms_)
    for (const auto& [wp, c] : p.terms()) r.add_term(w.times(wp), f.scaled(c));
  return r;
}

Template Template::substitute(const std::map<VarName, Polynomial>& binding) const {
  Template r;
  std::map<Monomial, Polynomial> images;
  for (const auto& [w, f] : terms_) {
    auto it = images.find(w);
    if (it == images.end())
      it = images.emplace(w, Polynomial::monomial(w, 1).substitute(binding)).first;
    for (const auto& [w2, c] : it->second.terms()) r.add_term(w2, f.scaled(c));
  }
  return r;
}

Polynomial Template::instantiate(const Valuation& v) const {
  Polynomial p;
  for (const auto& [w, f] : terms_) p = p + Polynomial::monomial(w, f.eval(v));
  return p;
}

std::optional<int> Template::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [w, f] : terms_) d = std::max(d, w.total_degree());
  return d;
}

std::set<ParamId> Template::params() const {
  std::set<ParamId> out;
  for (const auto& [w, f] : terms_)
    for (const auto& [a, c] : f.coeffs()) out.insert(a);
  return out;
}

std::string Template::to_string(const MonomialOrder& order) const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Monomial, AffineForm>*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [&](auto* a, auto* b) { return order.less(b->first, a->first); });
  std::ostringstream os;
  bool first = true;
  for (auto* t : sorted) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t->second.to_string() << ")";
    if (!t->first.is_one()) os << "*" << order.monomial_text(t->first);
  }
  return os.str();
}

bool Template::operator==(const Template& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto it1 = terms_.begin(), it2 = o.terms_.begin(); it1 != terms_.end(); ++it1, ++it2) {
    if (it1->first != it2->first) return false;
    if (it1->second.constant_part() != it2->second.constant_part()) return false;
    if (it1->second.coeffs() != it2->second.coeffs()) return false;
  }
  return true;
}

}  // namespace invgh
