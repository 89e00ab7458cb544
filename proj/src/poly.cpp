#include "invgh/poly.hpp"

#include <algorithm>
#include <sstream>

namespace invgh {

Monomial Monomial::var(const VarName& v, int exp) {
  Monomial m;
  if (exp != 0) m.exps_[v] = exp;
  return m;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, e] : exps_) d += e;
  return d;
}

int Monomial::exponent(const VarName& v) const {
  auto it = exps_.find(v);
  return it == exps_.end() ? 0 : it->second;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial r = *this;
  for (const auto& [v, e] : other.exps_) {
    int ne = r.exponent(v) + e;
    if (ne == 0)
      r.exps_.erase(v);
    else
      r.exps_[v] = ne;
  }
  return r;
}

Monomial Monomial::pow(int e) const {
  Monomial r;
  if (e == 0) return r;
  for (const auto& [v, k] : exps_) r.exps_[v] = k * e;
  return r;
}

std::set<VarName> Monomial::vars() const {
  std::set<VarName> out;
  for (const auto& [v, e] : exps_) out.insert(v);
  return out;
}

MonomialOrder::MonomialOrder(std::vector<VarName> vars) : vars_(std::move(vars)) {
  for (size_t i = 0; i < vars_.size(); ++i) rank_.emplace(vars_[i], i);
}

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  // Same degree: scan the precedence list; the monomial with the larger
  // exponent at the first differing variable is the larger monomial.
  for (const auto& v : vars_) {
    int ea = a.exponent(v), eb = b.exponent(v);
    if (ea != eb) return ea < eb;
  }
  // Variables outside the precedence list (should not happen for program
  // polynomials): fall back to structural order.
  return a < b;
}

std::string MonomialOrder::monomial_text(const Monomial& w) const {
  if (w.is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const VarName& v, int e) {
    if (!first) os << "*";
    first = false;
    os << v.name;
    if (e != 1) os << "^" << e;
  };
  std::set<VarName> done;
  for (const auto& v : vars_) {
    int e = w.exponent(v);
    if (e != 0) {
      emit(v, e);
      done.insert(v);
    }
  }
  for (const auto& [v, e] : w.exponents())
    if (!done.count(v)) emit(v, e);
  return os.str();
}

std::string MonomialOrder::monomial_label(const Monomial& w) const {
  if (w.is_one()) return "1";
  std::ostringstream os;
  std::set<VarName> done;
  auto emit = [&](const VarName& v, int e) {
    os << v.name;
    if (e != 1) os << e;
  };
  for (const auto& v : vars_) {
    int e = w.exponent(v);
    if (e != 0) {
      emit(v, e);
      done.insert(v);
    }
  }
  for (const auto& [v, e] : w.exponents())
    if (!done.count(v)) emit(v, e);
  return os.str();
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term(Monomial::one(), c);
  return p;
}

Polynomial Polynomial::var(const VarName& v) {
  Polynomial p;
  p.add_term(Monomial::var(v), 1);
  return p;
}

Polynomial Polynomial::monomial(const Monomial& w, const Rational& c) {
  Polynomial p;
  p.add_term(w, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& w, const Rational& c) {
  if (rat_is_zero(c)) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (rat_is_zero(it->second)) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) r.add_term(w1.times(w2), c1 * c2);
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r;
  if (rat_is_zero(c)) return r;
  for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
  return r;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial r = Polynomial::constant(1);
  for (int i = 0; i < e; ++i) r = r * (*this);
  return r;
}

Polynomial Polynomial::substitute(const std::map<VarName, Polynomial>& binding) const {
  // Cache successive powers of each image so repeated exponents are cheap.
  std::map<VarName, std::vector<Polynomial>> powers;
  auto image_pow = [&](const VarName& v, int e) -> const Polynomial& {
    auto& vec = powers[v];
    if (vec.empty()) vec.push_back(Polynomial::constant(1));
    const Polynomial& base = binding.at(v);
    while ((int)vec.size() <= e) vec.push_back(vec.back() * base);
    return vec[e];
  };
  Polynomial result;
  for (const auto& [w, c] : terms_) {
    Monomial untouched;
    Polynomial acc = Polynomial::constant(c);
    for (const auto& [v, e] : w.exponents()) {
      if (binding.count(v))
        acc = acc * image_pow(v, e);
      else
        untouched = untouched.times(Monomial::var(v, e));
    }
    if (!untouched.is_one()) acc = acc * Polynomial::monomial(untouched, 1);
    result = result + acc;
  }
  return result;
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.total_degree());
  return d;
}

Rational Polynomial::eval(const State& sigma) const {
  Rational total = 0;
  for (const auto& [w, c] : terms_) {
    Rational v = c;
    for (const auto& [x, e] : w.exponents()) {
      auto it = sigma.find(x);
      if (it == sigma.end()) throw UnboundVariable(x.name);
      for (int i = 0; i < e; ++i) v *= it->second;
    }
    total += v;
  }
  return total;
}

std::set<VarName> Polynomial::vars() const {
  std::set<VarName> out;
  for (const auto& [w, c] : terms_)
    for (const auto& v : w.vars()) out.insert(v);
  return out;
}

Monomial Polynomial::leading_monomial(const MonomialOrder& order) const {
  if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
  const Monomial* best = nullptr;
  for (const auto& [w, c] : terms_)
    if (!best || order.less(*best, w)) best = &w;
  return *best;
}

std::string Polynomial::to_string(const MonomialOrder& order) const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Monomial, Rational>*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [&](auto* a, auto* b) { return order.less(b->first, a->first); });
  std::ostringstream os;
  bool first = true;
  for (auto* t : sorted) {
    const auto& [w, c] = *t;
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    if (w.is_one()) {
      os << rat_to_string(a);
    } else {
      if (a != 1) os << rat_to_string(a) << "*";
      os << order.monomial_text(w);
    }
  }
  return os.str();
}

}  // namespace invgh
