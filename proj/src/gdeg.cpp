#include "invgh/gdeg.hpp"

#include <cmath>
#include <set>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace invgh {

GDeg GDeg::sym(const GSym& s, int exp) {
  GDeg d;
  if (exp != 0) d.exps_[s] = exp;
  return d;
}

int GDeg::exponent(const GSym& s) const {
  auto it = exps_.find(s);
  return it == exps_.end() ? 0 : it->second;
}

GDeg GDeg::times(const GDeg& o) const {
  GDeg r = *this;
  for (const auto& [s, e] : o.exps_) {
    int ne = r.exponent(s) + e;
    if (ne == 0)
      r.exps_.erase(s);
    else
      r.exps_[s] = ne;
  }
  return r;
}

GDeg GDeg::inverse() const {
  GDeg r;
  for (const auto& [s, e] : exps_) r.exps_.emplace(s, -e);
  return r;
}

GDeg GDeg::pow(int e) const {
  GDeg r;
  if (e == 0) return r;
  for (const auto& [s, k] : exps_) r.exps_.emplace(s, k * e);
  return r;
}

bool GDeg::has_unknown() const {
  for (const auto& [s, e] : exps_)
    if (s.kind == GSymKind::Unknown) return true;
  return false;
}

std::string GDeg::to_string() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, e] : exps_) {
    if (!first) os << "*";
    first = false;
    os << s.name;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

GConstraint GConstraint::between(const GDeg& t1, const GDeg& t2) {
  return normalized(t1.times(t2.inverse()));
}

GConstraint GConstraint::normalized(GDeg d) {
  if (!d.is_one() && d.exponents().begin()->second < 0) d = d.inverse();
  return GConstraint{std::move(d)};
}

GDeg GSubst::apply(const GDeg& d) const {
  GDeg out;
  for (const auto& [s, e] : d.exponents()) {
    auto it = map_.find(s);
    if (it == map_.end())
      out = out.times(GDeg::sym(s, e));
    else
      out = out.times(it->second.pow(e));
  }
  return out;
}

void GSubst::bind(const GSym& alpha, const GDeg& image) {
  GSubst single;
  single.map_.emplace(alpha, image);
  for (auto& [s, img] : map_) img = single.apply(img);
  map_.emplace(alpha, image);
}

std::optional<GDeg> GSubst::lookup(const GSym& alpha) const {
  auto it = map_.find(alpha);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Floor division / remainder with sign conventions matching the
// quotient/remainder split of the rewriting rules.
long floor_div(long n, long k) {
  long q = n / k;
  if ((n % k != 0) && ((n < 0) != (k < 0))) --q;
  return q;
}
long floor_mod(long n, long k) { return n - floor_div(n, k) * k; }

}  // namespace

UnifyResult unify(const std::vector<GConstraint>& constraints, int next_fresh_id) {
  std::deque<GDeg> queue;
  long unknown_count = 0;
  {
    std::set<GSym> seen;
    for (const auto& c : constraints) {
      queue.push_back(c.lhs);
      for (const auto& [s, e] : c.lhs.exponents())
        if (s.kind == GSymKind::Unknown && seen.insert(s).second) ++unknown_count;
    }
  }
  const long max_steps =
      10 * (unknown_count + static_cast<long>(constraints.size())) + 100;
  long steps = 0;
  GSubst subst;
  int fresh_id = next_fresh_id;
  int fresh_count = 0;

  while (!queue.empty()) {
    if (++steps > max_steps) return UnifyDiverged{steps};
    GDeg tau = subst.apply(queue.front());
    queue.pop_front();
    if (tau.is_one()) continue;
    if (!tau.has_unknown()) return UnifyUnsat{GConstraint::normalized(tau)};

    // Pivot: unknown with minimal |exponent|, ties by symbol id.
    const GSym* pivot = nullptr;
    int pivot_exp = 0;
    for (const auto& [s, e] : tau.exponents()) {
      if (s.kind != GSymKind::Unknown) continue;
      if (!pivot || std::abs(e) < std::abs(pivot_exp) ||
          (std::abs(e) == std::abs(pivot_exp) && s.id < pivot->id)) {
        pivot = &s;
        pivot_exp = e;
      }
    }
    GSym alpha = *pivot;
    int k = pivot_exp;
    GDeg rest = tau.times(GDeg::sym(alpha, -k));

    bool divides = true;
    for (const auto& [s, e] : rest.exponents())
      if (e % k != 0) divides = false;

    if (divides) {
      GDeg image;
      for (const auto& [s, e] : rest.exponents()) image = image.times(GDeg::sym(s, -e / k));
      subst.bind(alpha, image);
    } else {
      GSym omega{GSymKind::Unknown, fresh_id++, "w" + std::to_string(fresh_count++)};
      GDeg image = GDeg::sym(omega);
      GDeg residue = GDeg::sym(omega, k);
      for (const auto& [s, e] : rest.exponents()) {
        image = image.times(GDeg::sym(s, static_cast<int>(-floor_div(e, k))));
        residue = residue.times(GDeg::sym(s, static_cast<int>(floor_mod(e, k))));
      }
      subst.bind(alpha, image);
      queue.push_front(residue);
    }
  }
  return subst;
}

}  // namespace invgh
