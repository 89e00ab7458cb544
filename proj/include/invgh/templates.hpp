#pragma once

#include <optional>
#include <vector>

#include "invgh/gamma.hpp"
#include "invgh/template.hpp"

namespace invgh {

struct GHFilter {
  GammaAssign gamma;
  GDeg tau;
};

// All monomials over vars with total degree <= degree, ascending in the
// graded-lex order induced by vars; with a filter only those whose
// g-degree equals tau.  The unfiltered count is C(|vars| + degree, degree).
std::vector<Monomial> enumerate_monomials(const std::vector<VarName>& vars, int degree,
                                          const std::optional<GHFilter>& filter = std::nullopt);

struct TemplateSpec {
  std::vector<VarName> vars;
  int degree = 0;
  std::optional<GHFilter> gh;  // nullopt = most general template
  std::string param_prefix = "a";
};

struct EmptyTemplate : std::runtime_error {
  EmptyTemplate() : std::runtime_error("template has no monomials") {}
};

class ParamAllocator {
 public:
  ParamId fresh(const std::string& label) { return ParamId{next_++, label}; }
  unsigned allocated() const { return next_; }

 private:
  unsigned next_ = 0;
};

struct BuiltTemplate {
  Template tmpl;
  std::vector<ParamId> params;  // one per monomial, mirroring monomial order
};

// Most general (or most general GH) template: one fresh parameter per
// enumerated monomial.  Throws EmptyTemplate when the GH filter leaves
// nothing.
BuiltTemplate build_template(const TemplateSpec& spec, ParamAllocator& alloc);

}  // namespace invgh
