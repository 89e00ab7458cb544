#include "invgh/templates.hpp"

#include <algorithm>

namespace invgh {

std::vector<Monomial> enumerate_monomials(const std::vector<VarName>& vars, int degree,
                                          const std::optional<GHFilter>& filter) {
  std::vector<Monomial> out;
  Monomial current;
  auto recurse = [&](auto&& self, size_t i, int remaining) -> void {
    if (i == vars.size()) {
      out.push_back(current);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      Monomial saved = current;
      if (e > 0) current = current.times(Monomial::var(vars[i], e));
      self(self, i + 1, remaining - e);
      current = saved;
    }
  };
  recurse(recurse, 0, degree);
  MonomialOrder order(vars);
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return order.less(a, b); });
  if (filter) {
    std::vector<Monomial> kept;
    for (const auto& w : out)
      if (gdeg_of_monomial(filter->gamma, w) == filter->tau) kept.push_back(w);
    return kept;
  }
  return out;
}

BuiltTemplate build_template(const TemplateSpec& spec, ParamAllocator& alloc) {
  std::vector<Monomial> monomials = enumerate_monomials(spec.vars, spec.degree, spec.gh);
  if (monomials.empty()) throw EmptyTemplate{};
  MonomialOrder order(spec.vars);
  BuiltTemplate built;
  for (const auto& w : monomials) {
    ParamId a = alloc.fresh(spec.param_prefix + "_" + order.monomial_label(w));
    built.params.push_back(a);
    built.tmpl.add_term(w, AffineForm::param(a));
  }
  return built;
}

}  // namespace invgh
