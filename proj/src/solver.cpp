#include "invgh/solver.hpp"

#include <algorithm>

namespace invgh {

std::vector<LinRow> zero_equations(const Template& t) {
  std::vector<LinRow> rows;
  for (const auto& [w, f] : t.terms()) {
    LinRow r;
    r.constant = f.constant_part();
    for (const auto& [a, c] : f.coeffs()) r.coeffs.emplace(a, c);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

bool poly_is_one(const Polynomial& p) {
  return p.terms().size() == 1 && p.terms().begin()->first.is_one() &&
         p.terms().begin()->second == 1;
}

std::optional<GDeg> try_template_gdeg(const GammaAssign& gamma, const Template& t) {
  std::optional<GDeg> common;
  for (const auto& [w, f] : t.terms()) {
    GDeg d = gdeg_of_monomial(gamma, w);
    if (!common)
      common = d;
    else if (!(d == *common))
      return std::nullopt;
  }
  return common;
}

// ---- exact fraction-free elimination over sparse integer rows ----

using SparseRow = std::vector<std::pair<size_t, mpz_class>>;  // sorted by column

void normalize_row(SparseRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) v /= g;
}

SparseRow combine(const SparseRow& row, const SparseRow& pivot) {
  // Cancels the shared leading column: pivot_lead * row - row_lead * pivot.
  const mpz_class& pl = pivot.front().second;
  const mpz_class& rl = row.front().second;
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, pl * row[i].second);
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -rl * pivot[j].second);
      ++j;
    } else {
      mpz_class v = pl * row[i].second - rl * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  normalize_row(out);
  return out;
}

class Echelon {
 public:
  void add(SparseRow row) {
    normalize_row(row);
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        pivots_.emplace(row.front().first, std::move(row));
        return;
      }
      row = combine(row, it->second);
    }
  }

  size_t rank() const { return pivots_.size(); }

  // Basis of the kernel: one vector per free column, that column set to 1
  // and all other free columns to 0.
  std::vector<std::vector<Rational>> nullspace(size_t ncols) const {
    std::vector<std::vector<Rational>> basis;
    std::vector<bool> is_pivot(ncols, false);
    for (const auto& [c, row] : pivots_) is_pivot[c] = true;
    for (size_t f = 0; f < ncols; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Rational> v(ncols, Rational(0));
      v[f] = 1;
      for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        const SparseRow& row = it->second;
        Rational sum = 0;
        for (size_t k = 1; k < row.size(); ++k)
          sum += Rational(row[k].second) * v[row[k].first];
        v[it->first] = -sum / Rational(row.front().second);
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::map<size_t, SparseRow> pivots_;
};

SparseRow to_sparse(const LinRow& r, const std::map<ParamId, size_t>& col_of) {
  if (!rat_is_zero(r.constant))
    throw std::logic_error("solver systems must be homogeneous");
  mpz_class lcm = 1;
  for (const auto& [a, c] : r.coeffs)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  SparseRow out;
  out.reserve(r.coeffs.size());
  for (const auto& [a, c] : r.coeffs) {
    mpz_class v = c.get_num() * (lcm / c.get_den());
    out.emplace_back(col_of.at(a), std::move(v));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

void add_template_rows(Echelon& ech, const Template& t, const std::map<ParamId, size_t>& col_of,
                       size_t& row_count) {
  for (const LinRow& r : zero_equations(t)) {
    ech.add(to_sparse(r, col_of));
    ++row_count;
  }
}

}  // namespace

std::vector<Matching> matchings(const EqConstraint& eq, const std::vector<Polynomial>& mult_set,
                                const std::optional<GammaAssign>& gh, size_t cap) {
  if (eq.lhs.size() > cap || eq.rhs.size() > cap)
    throw CapExceededError("constraint set sizes " + std::to_string(eq.lhs.size()) + "/" +
                           std::to_string(eq.rhs.size()) + " exceed the cap " +
                           std::to_string(cap));

  std::vector<std::optional<GDeg>> lhs_deg(eq.lhs.size()), rhs_deg(eq.rhs.size());
  if (gh) {
    for (size_t i = 0; i < eq.lhs.size(); ++i) lhs_deg[i] = try_template_gdeg(*gh, eq.lhs[i]);
    for (size_t j = 0; j < eq.rhs.size(); ++j) rhs_deg[j] = try_template_gdeg(*gh, eq.rhs[j]);
  }

  std::vector<std::vector<MatchOption>> per_element(eq.rhs.size());
  for (size_t j = 0; j < eq.rhs.size(); ++j) {
    std::optional<int> dh = eq.rhs[j].degree();
    for (size_t i = 0; i < eq.lhs.size(); ++i) {
      for (size_t m = 0; m < mult_set.size(); ++m) {
        std::optional<int> dm = mult_set[m].degree();
        std::optional<int> dg = eq.lhs[i].degree();
        if (dh && dm && dg && *dm + *dg > *dh) continue;
        if (gh && lhs_deg[i] && rhs_deg[j]) {
          GDegOfPoly md = gdeg_of_poly(*gh, mult_set[m]);
          if (auto* mt = std::get_if<GDeg>(&md)) {
            if (!(lhs_deg[i]->times(*mt) == *rhs_deg[j])) continue;
          }
        }
        per_element[j].push_back(MatchOption{false, i, m});
      }
    }
    per_element[j].push_back(MatchOption{true, 0, 0});
  }

  std::vector<Matching> out;
  if (eq.rhs.empty()) {
    if (eq.lhs.empty()) out.push_back(Matching{});
    return out;
  }
  std::vector<size_t> idx(eq.rhs.size(), 0);
  bool done = false;
  while (!done) {
    Matching m;
    for (size_t j = 0; j < idx.size(); ++j) m.options.push_back(per_element[j][idx[j]]);
    // Surjectivity with unit multiplier.
    std::vector<bool> hit(eq.lhs.size(), false);
    for (const auto& opt : m.options)
      if (!opt.zero && poly_is_one(mult_set[opt.mult_index])) hit[opt.g_index] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) out.push_back(std::move(m));
    // Odometer: last element fastest.
    size_t j = idx.size();
    while (j-- > 0) {
      if (++idx[j] < per_element[j].size()) break;
      idx[j] = 0;
      if (j == 0) done = true;
    }
  }
  return out;
}

SolveOutcome solve(Session& session, const GenState& state,
                   const std::vector<ParamId>& target_params,
                   const std::vector<Polynomial>& mult_set, bool emit_basis, size_t cap) {
  SolveOutcome out;
  std::map<ParamId, size_t> col_of;
  for (const auto& a : state.params) col_of.emplace(a, col_of.size());
  out.cols = col_of.size();

  std::optional<GammaAssign> gh;
  if (session.gh_mode()) gh = session.gamma();

  std::vector<std::vector<Matching>> per_constraint;
  try {
    for (const auto& eq : state.constraints)
      per_constraint.push_back(matchings(eq, mult_set, gh, cap));
  } catch (const CapExceededError& e) {
    out.status = SolveStatus::CapExceeded;
    out.diagnostic = e.what();
    return out;
  }
  for (const auto& list : per_constraint) {
    if (list.empty()) {
      out.status = SolveStatus::NoSolution;
      out.diagnostic = "a loop constraint admits no matching";
      return out;
    }
  }

  Echelon base;
  size_t base_rows = 0;
  for (const auto& t : state.goal) add_template_rows(base, t, col_of, base_rows);

  std::vector<size_t> target_cols;
  for (const auto& a : target_params) {
    auto it = col_of.find(a);
    if (it != col_of.end()) target_cols.push_back(it->second);
  }

  std::vector<size_t> choice(per_constraint.size(), 0);
  bool exhausted = false;
  while (!exhausted) {
    ++out.matchings_tried;
    Echelon ech = base;
    size_t rows = base_rows;
    for (size_t c = 0; c < per_constraint.size(); ++c) {
      const Matching& m = per_constraint[c][choice[c]];
      const EqConstraint& eq = state.constraints[c];
      for (size_t j = 0; j < eq.rhs.size(); ++j) {
        const MatchOption& opt = m.options[j];
        if (opt.zero) {
          add_template_rows(ech, eq.rhs[j], col_of, rows);
        } else {
          Template diff =
              eq.rhs[j].plus(eq.lhs[opt.g_index].mul_poly(mult_set[opt.mult_index]).negated());
          add_template_rows(ech, diff, col_of, rows);
        }
      }
    }
    out.rows = std::max(out.rows, rows);

    std::vector<std::vector<Rational>> basis = ech.nullspace(out.cols);
    std::vector<const std::vector<Rational>*> admissible;
    for (const auto& v : basis) {
      for (size_t tc : target_cols) {
        if (!rat_is_zero(v[tc])) {
          admissible.push_back(&v);
          break;
        }
      }
    }
    if (!admissible.empty()) {
      auto to_valuation = [&](const std::vector<Rational>& vec) {
        Valuation val;
        for (const auto& [a, c] : col_of)
          if (!rat_is_zero(vec[c])) val.emplace(a, vec[c]);
        return val;
      };
      out.status = SolveStatus::Found;
      out.valuation = to_valuation(*admissible.front());
      for (size_t c = 0; c < per_constraint.size(); ++c)
        out.chosen.push_back(per_constraint[c][choice[c]]);
      if (emit_basis) {
        // Keep the vectors whose target projections are independent.
        Echelon proj;
        std::map<ParamId, size_t> proj_cols;
        for (unsigned k = 0; k < target_cols.size(); ++k) proj_cols.emplace(ParamId{k, ""}, k);
        for (const auto* v : admissible) {
          LinRow r;
          for (unsigned k = 0; k < target_cols.size(); ++k)
            if (!rat_is_zero((*v)[target_cols[k]]))
              r.coeffs.emplace(ParamId{k, ""}, (*v)[target_cols[k]]);
          size_t before = proj.rank();
          proj.add(to_sparse(r, proj_cols));
          if (proj.rank() > before) out.basis.push_back(to_valuation(*v));
        }
      } else {
        out.basis.push_back(out.valuation);
      }
      return out;
    }
    // Next leaf.
    size_t c = choice.size();
    if (c == 0) break;
    while (c-- > 0) {
      if (++choice[c] < per_constraint[c].size()) break;
      choice[c] = 0;
      if (c == 0) exhausted = true;
    }
  }
  out.status = SolveStatus::NoSolution;
  return out;
}

Polynomial normalize_invariant(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw ZeroPolynomial{};
  mpz_class lcm = 1, gcd = 0;
  for (const auto& [w, c] : p.terms())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& [w, c] : p.terms()) {
    mpz_class num = c.get_num() * (lcm / c.get_den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), num.get_mpz_t());
  }
  Rational scale = Rational(lcm) / Rational(gcd);
  if (sgn(p.coefficient(p.leading_monomial(order))) < 0) scale = -scale;
  return p.scaled(scale);
}

bool verify_solution(const GenState& state, const std::vector<Polynomial>& mult_set,
                     const std::vector<Matching>& chosen, const Valuation& v) {
  if (chosen.size() != state.constraints.size()) return false;
  for (size_t c = 0; c < state.constraints.size(); ++c) {
    const EqConstraint& eq = state.constraints[c];
    const Matching& m = chosen[c];
    if (m.options.size() != eq.rhs.size()) return false;
    std::vector<bool> hit(eq.lhs.size(), false);
    for (size_t j = 0; j < eq.rhs.size(); ++j) {
      Polynomial h = eq.rhs[j].instantiate(v);
      const MatchOption& opt = m.options[j];
      if (opt.zero) {
        if (!h.is_zero()) return false;
      } else {
        Polynomial expected = eq.lhs[opt.g_index].instantiate(v) * mult_set[opt.mult_index];
        if (!(h == expected)) return false;
        if (poly_is_one(mult_set[opt.mult_index])) hit[opt.g_index] = true;
      }
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return false;
  }
  for (const auto& t : state.goal)
    if (!t.instantiate(v).is_zero()) return false;
  return true;
}

}  // namespace invgh
