#include "ctxkit/polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "ctxkit/empirical_model.hpp"
#include "ctxkit/lp.hpp"

namespace ctxkit {

namespace {

using Key = std::vector<Rational>;

Key key_of(const RationalVector& v) { return Key(v.data(), v.data() + v.size()); }

bool is_zero_row(const RationalVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) return false;
  }
  return true;
}

/// target += factor * source, skipping zeros.
void add_scaled(LinearConstraint& target, const Rational& factor, const LinearConstraint& source) {
  for (Eigen::Index i = 0; i < source.coefficients.size(); ++i) {
    if (!source.coefficients(i).is_zero()) target.coefficients(i) += factor * source.coefficients(i);
  }
  if (!source.bound.is_zero()) target.bound += factor * source.bound;
}

/// Positive multiple of (a, b) with coprime integer entries.
LinearConstraint primitive(const LinearConstraint& row) {
  RationalVector joined(row.coefficients.size() + 1);
  joined << row.coefficients, row.bound;
  joined = primitive_integer_scaling(joined);
  return {joined.head(row.coefficients.size()), joined(row.coefficients.size())};
}

LinearConstraint infeasible_row(std::size_t dimension) {
  return {RationalVector::Constant(static_cast<Eigen::Index>(dimension), Rational(0)), Rational(-1)};
}

struct Echelon {
  std::vector<LinearConstraint> rows;
  std::vector<Eigen::Index> pivots;
  bool consistent = true;
};

/// Reduced row echelon form, pivots chosen in column order.
Echelon reduced_echelon(std::vector<LinearConstraint> rows, std::size_t dimension) {
  Echelon out;
  std::size_t next = 0;
  for (Eigen::Index col = 0; col < static_cast<Eigen::Index>(dimension) && next < rows.size(); ++col) {
    std::size_t found = rows.size();
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (!rows[r].coefficients(col).is_zero()) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[next], rows[found]);
    const Rational inv = Rational(1) / rows[next].coefficients(col);
    rows[next].coefficients *= inv;
    rows[next].bound *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r].coefficients(col).is_zero()) continue;
      add_scaled(rows[r], -rows[r].coefficients(col), rows[next]);
    }
    out.pivots.push_back(col);
    ++next;
  }
  for (std::size_t r = next; r < rows.size(); ++r) {
    if (!rows[r].bound.is_zero()) out.consistent = false;
  }
  rows.resize(next);
  out.rows = std::move(rows);
  return out;
}

/// Eliminates the pivot columns of `echelon` from an inequality.
LinearConstraint reduce(LinearConstraint row, const Echelon& echelon) {
  for (std::size_t k = 0; k < echelon.rows.size(); ++k) {
    const Rational factor = row.coefficients(echelon.pivots[k]);
    if (!factor.is_zero()) add_scaled(row, -factor, echelon.rows[k]);
  }
  return row;
}

/// Whether max a.x over {x free : rows} stays <= bound. Only the listed
/// columns can be nonzero in any row.
bool implied(const LinearConstraint& target, const std::vector<const LinearConstraint*>& rows,
             const std::vector<Eigen::Index>& columns) {
  const auto k = static_cast<Eigen::Index>(columns.size());
  lp::Problem<Rational> p;
  p.objective = RationalVector(2 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    p.objective(j) = target.coefficients(columns[static_cast<std::size_t>(j)]);
    p.objective(k + j) = -p.objective(j);
  }
  p.constraints = RationalMatrix::Constant(static_cast<Eigen::Index>(rows.size()), 2 * k, Rational(0));
  p.rhs = RationalVector(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto rr = static_cast<Eigen::Index>(r);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& a = rows[r]->coefficients(columns[static_cast<std::size_t>(j)]);
      if (a.is_zero()) continue;
      p.constraints(rr, j) = a;
      p.constraints(rr, k + j) = -a;
    }
    p.rhs(rr) = rows[r]->bound;
  }
  p.senses.assign(rows.size(), lp::RowSense::less_equal);
  const auto solution = lp::solve(p);
  return solution.status == lp::Status::optimal && solution.value <= target.bound;
}

bool feasible(const std::vector<LinearConstraint>& rows, const std::vector<Eigen::Index>& columns) {
  const auto k = static_cast<Eigen::Index>(columns.size());
  lp::Problem<Rational> p;
  p.objective = RationalVector::Constant(2 * k, Rational(0));
  p.constraints = RationalMatrix::Constant(static_cast<Eigen::Index>(rows.size()), 2 * k, Rational(0));
  p.rhs = RationalVector(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto rr = static_cast<Eigen::Index>(r);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& a = rows[r].coefficients(columns[static_cast<std::size_t>(j)]);
      if (a.is_zero()) continue;
      p.constraints(rr, j) = a;
      p.constraints(rr, k + j) = -a;
    }
    p.rhs(rr) = rows[r].bound;
  }
  p.senses.assign(rows.size(), lp::RowSense::less_equal);
  return lp::solve(p).status != lp::Status::infeasible;
}

LinearSystem infeasible_system(std::size_t dimension) {
  LinearSystem out;
  out.dimension = dimension;
  out.inequalities.push_back(infeasible_row(dimension));
  return out;
}

}  // namespace

bool LinearSystem::satisfied_by(const RationalVector& x) const {
  for (const auto& row : inequalities) {
    if (dot(row.coefficients, x) > row.bound) return false;
  }
  for (const auto& row : equalities) {
    if (dot(row.coefficients, x) != row.bound) return false;
  }
  return true;
}

void validate(const LinearSystem& sys) {
  for (const auto* rows : {&sys.inequalities, &sys.equalities}) {
    for (const auto& row : *rows) {
      if (static_cast<std::size_t>(row.coefficients.size()) != sys.dimension) {
        throw std::invalid_argument("linear system row has " + std::to_string(row.coefficients.size()) +
                                    " coefficients, expected " + std::to_string(sys.dimension));
      }
    }
  }
}

LinearSystem fm_eliminate(const LinearSystem& sys, std::size_t var, std::size_t row_limit) {
  validate(sys);
  if (var >= sys.dimension) throw std::out_of_range("fm_eliminate: variable index out of range");
  const auto col = static_cast<Eigen::Index>(var);

  const auto pivot = std::find_if(sys.equalities.begin(), sys.equalities.end(),
                                  [&](const LinearConstraint& r) { return !r.coefficients(col).is_zero(); });
  if (pivot != sys.equalities.end()) {
    LinearConstraint solved = *pivot;
    const Rational inv = Rational(1) / solved.coefficients(col);
    solved.coefficients *= inv;
    solved.bound *= inv;
    LinearSystem out{sys.dimension, {}, {}};
    for (auto rows : {std::pair{&sys.inequalities, &out.inequalities}, std::pair{&sys.equalities, &out.equalities}}) {
      for (const auto& row : *rows.first) {
        if (&row == &*pivot) continue;
        LinearConstraint r = row;
        if (!r.coefficients(col).is_zero()) add_scaled(r, -r.coefficients(col), solved);
        r.coefficients(col) = 0;
        rows.second->push_back(std::move(r));
      }
    }
    return out;
  }

  std::vector<const LinearConstraint*> zero, positive, negative;
  for (const auto& row : sys.inequalities) {
    const int s = row.coefficients(col).sign();
    (s == 0 ? zero : s > 0 ? positive : negative).push_back(&row);
  }
  const std::size_t produced = zero.size() + positive.size() * negative.size();
  if (row_limit > 0 && produced > row_limit) {
    throw ResourceLimitExceeded("eliminating variable " + std::to_string(var) + " would produce " +
                                std::to_string(produced) + " rows (limit " + std::to_string(row_limit) + ")");
  }
  LinearSystem out{sys.dimension, {}, sys.equalities};
  out.inequalities.reserve(produced);
  for (const auto* row : zero) out.inequalities.push_back(*row);
  for (const auto* p : positive) {
    for (const auto* n : negative) {
      // p_var > 0 > n_var: (-n_var) p + p_var n has no var term.
      LinearConstraint combined = *p;
      combined.coefficients *= -n->coefficients(col);
      combined.bound *= -n->coefficients(col);
      add_scaled(combined, p->coefficients(col), *n);
      combined.coefficients(col) = 0;
      out.inequalities.push_back(std::move(combined));
    }
  }
  return out;
}

LinearSystem remove_redundant(const LinearSystem& sys) {
  validate(sys);
  const std::size_t dim = sys.dimension;

  std::vector<LinearConstraint> equalities;
  for (const auto& row : sys.equalities) {
    if (is_zero_row(row.coefficients)) {
      if (!row.bound.is_zero()) return infeasible_system(dim);
      continue;
    }
    equalities.push_back(row);
  }
  const Echelon echelon = reduced_echelon(std::move(equalities), dim);
  if (!echelon.consistent) return infeasible_system(dim);

  // Canonical rows, deduplicated; of rows with equal coefficients the
  // smallest bound wins.
  std::vector<LinearConstraint> rows;
  std::map<Key, std::size_t> seen;
  for (const auto& original : sys.inequalities) {
    LinearConstraint row = reduce(original, echelon);
    if (is_zero_row(row.coefficients)) {
      if (row.bound.sign() < 0) return infeasible_system(dim);
      continue;
    }
    row = primitive(row);
    auto [it, inserted] = seen.try_emplace(key_of(row.coefficients), rows.size());
    if (inserted) {
      rows.push_back(std::move(row));
    } else if (row.bound < rows[it->second].bound) {
      rows[it->second].bound = row.bound;
    }
  }

  // Pivot columns no longer occur in inequalities and are fixed by the
  // equalities, so the inequalities can be studied on the other columns.
  std::vector<Eigen::Index> columns;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(dim); ++j) {
    for (const auto& row : rows) {
      if (!row.coefficients(j).is_zero()) {
        columns.push_back(j);
        break;
      }
    }
  }
  if (!rows.empty() && !feasible(rows, columns)) return infeasible_system(dim);

  std::vector<bool> kept(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<const LinearConstraint*> others;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != i && kept[j]) others.push_back(&rows[j]);
    }
    if (implied(rows[i], others, columns)) kept[i] = false;
  }

  LinearSystem out;
  out.dimension = dim;
  out.equalities = echelon.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (kept[i]) out.inequalities.push_back(std::move(rows[i]));
  }
  return out;
}

std::vector<LinearConstraint> NcPolytope::nontrivial_facets() const {
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (!positivity[i]) out.push_back(facets[i]);
  }
  return out;
}

bool NcPolytope::contains(const RationalVector& v) const {
  LinearSystem sys{static_cast<std::size_t>(LocalIndex(scenario).size()), facets, equalities};
  return sys.satisfied_by(v);
}

NcPolytope nc_polytope_facets(const Scenario& scenario, std::size_t row_limit) {
  const RationalMatrix incidence = incidence_matrix(scenario);
  const LocalIndex index(scenario);
  const auto m = incidence.rows();
  const auto n = incidence.cols();
  const auto dim = static_cast<std::size_t>(m + n);

  // Variables: v (m entries) then d (n entries).
  LinearSystem sys;
  sys.dimension = dim;
  for (Eigen::Index i = 0; i < m; ++i) {
    LinearConstraint row{RationalVector::Constant(m + n, Rational(0)), Rational(0)};
    row.coefficients(i) = 1;
    for (Eigen::Index g = 0; g < n; ++g) {
      if (!incidence(i, g).is_zero()) row.coefficients(m + g) = -incidence(i, g);
    }
    sys.equalities.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < index.context_count(); ++c) {
    LinearConstraint row{RationalVector::Constant(m + n, Rational(0)), Rational(1)};
    for (std::size_t s = 0; s < index.context_size(c); ++s) row.coefficients(static_cast<Eigen::Index>(index.index_of(c, s))) = 1;
    sys.equalities.push_back(std::move(row));
  }
  for (Eigen::Index g = 0; g < n; ++g) {
    LinearConstraint row{RationalVector::Constant(m + n, Rational(0)), Rational(0)};
    row.coefficients(m + g) = -1;
    sys.inequalities.push_back(std::move(row));
  }

  for (Eigen::Index g = 0; g < n; ++g) {
    try {
      sys = remove_redundant(fm_eliminate(sys, static_cast<std::size_t>(m + g), row_limit));
    } catch (const ResourceLimitExceeded& e) {
      throw ResourceLimitExceeded("elimination step " + std::to_string(g + 1) + " of " + std::to_string(n) + ": " +
                                  e.what());
    }
  }

  NcPolytope out{scenario, {}, {}, {}};
  const auto project = [m](const LinearConstraint& row) {
    return LinearConstraint{row.coefficients.head(m), row.bound};
  };
  for (const auto& row : sys.equalities) out.equalities.push_back(project(row));
  Echelon hull = reduced_echelon(out.equalities, static_cast<std::size_t>(m));
  out.equalities = hull.rows;

  std::map<Key, std::size_t> positivity_of;
  for (Eigen::Index k = 0; k < m; ++k) {
    LinearConstraint row{RationalVector::Constant(m, Rational(0)), Rational(0)};
    row.coefficients(k) = -1;
    row = reduce(row, hull);
    if (is_zero_row(row.coefficients)) continue;
    row = primitive(row);
    RationalVector joined(m + 1);
    joined << row.coefficients, row.bound;
    positivity_of.emplace(key_of(joined), static_cast<std::size_t>(k));
  }

  std::vector<std::pair<std::size_t, LinearConstraint>> positives;
  std::vector<LinearConstraint> others;
  for (const auto& raw : sys.inequalities) {
    LinearConstraint row = primitive(reduce(project(raw), hull));
    RationalVector joined(m + 1);
    joined << row.coefficients, row.bound;
    if (auto it = positivity_of.find(key_of(joined)); it != positivity_of.end()) {
      positives.emplace_back(it->second, std::move(row));
    } else {
      others.push_back(std::move(row));
    }
  }
  std::sort(positives.begin(), positives.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(others.begin(), others.end(), [](const LinearConstraint& a, const LinearConstraint& b) {
    const Key ka = key_of(a.coefficients), kb = key_of(b.coefficients);
    return ka != kb ? kb < ka : a.bound < b.bound;
  });
  for (auto& [k, row] : positives) {
    out.facets.push_back(std::move(row));
    out.positivity.push_back(true);
  }
  for (auto& row : others) {
    out.facets.push_back(std::move(row));
    out.positivity.push_back(false);
  }
  return out;
}

LinearInequality tightest_representative(const Scenario& scenario, const std::vector<LinearConstraint>& equalities,
                                         const LinearConstraint& facet) {
  const LocalIndex index(scenario);
  const auto m = static_cast<Eigen::Index>(index.size());
  if (facet.coefficients.size() != m) throw std::invalid_argument("facet dimension does not match the scenario");
  const auto k = static_cast<Eigen::Index>(equalities.size());
  const auto contexts = static_cast<Eigen::Index>(index.context_count());

  // Columns: l+ (k), l- (k), t+ (contexts), t- (contexts).
  // maximise f.l - sum t  s.t.  (E^T l)_i - t_C(i) <= -a_i.
  lp::Problem<Rational> p;
  const Eigen::Index cols = 2 * k + 2 * contexts;
  p.objective = RationalVector::Constant(cols, Rational(0));
  for (Eigen::Index r = 0; r < k; ++r) {
    p.objective(r) = equalities[static_cast<std::size_t>(r)].bound;
    p.objective(k + r) = -equalities[static_cast<std::size_t>(r)].bound;
  }
  for (Eigen::Index c = 0; c < contexts; ++c) {
    p.objective(2 * k + c) = -1;
    p.objective(2 * k + contexts + c) = 1;
  }
  p.constraints = RationalMatrix::Constant(m, cols, Rational(0));
  p.rhs = RationalVector(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index r = 0; r < k; ++r) {
      const auto& e = equalities[static_cast<std::size_t>(r)].coefficients(i);
      if (e.is_zero()) continue;
      p.constraints(i, r) = e;
      p.constraints(i, k + r) = -e;
    }
    const auto c = static_cast<Eigen::Index>(index.context_of(static_cast<std::size_t>(i)));
    p.constraints(i, 2 * k + c) = -1;
    p.constraints(i, 2 * k + contexts + c) = 1;
    p.rhs(i) = -facet.coefficients(i);
  }
  p.senses.assign(static_cast<std::size_t>(m), lp::RowSense::less_equal);
  const auto solution = lp::solve(p);

  LinearInequality original{facet.coefficients, facet.bound};
  if (solution.status != lp::Status::optimal) return original;
  LinearInequality out = original;
  for (Eigen::Index r = 0; r < k; ++r) {
    const Rational lambda = solution.primal(r) - solution.primal(k + r);
    if (lambda.is_zero()) continue;
    const auto& row = equalities[static_cast<std::size_t>(r)];
    out.coefficients += lambda * row.coefficients;
    out.bound += lambda * row.bound;
  }
  if (!(out.bound < algebraic_bound(scenario, out.coefficients))) return original;
  return out;
}

RationalVector correlation_vertex(const CorrelationPolytopeSpec& spec, std::size_t i) {
  const std::size_t n = spec.events.size();
  const Assignment bits = decode_assignment(i, 2, n);
  TruthAssignment truth;
  RationalVector v(static_cast<Eigen::Index>(n + spec.formulas.size()));
  for (std::size_t k = 0; k < n; ++k) {
    truth[spec.events[k]] = bits[k] == 0 ? "0" : "1";
    v(static_cast<Eigen::Index>(k)) = bits[k] == 0 ? 1 : 0;
  }
  for (std::size_t j = 0; j < spec.formulas.size(); ++j) {
    v(static_cast<Eigen::Index>(n + j)) = evaluate(spec.formulas[j], truth) ? 1 : 0;
  }
  return v;
}

CorrelationMembership correlation_membership(const CorrelationPolytopeSpec& spec, const RationalVector& v) {
  const std::size_t n = spec.events.size();
  const auto width = static_cast<Eigen::Index>(n + spec.formulas.size());
  if (v.size() != width) {
    throw std::invalid_argument("vector has " + std::to_string(v.size()) + " entries, expected " +
                                std::to_string(width));
  }
  for (const auto& f : spec.formulas) {
    for (const auto& var : f.variables()) {
      if (std::find(spec.events.begin(), spec.events.end(), var) == spec.events.end()) {
        throw std::invalid_argument("formula " + f.str() + " uses undeclared event \"" + var + "\"");
      }
    }
  }
  const auto count = static_cast<Eigen::Index>(assignment_count(2, n));
  RationalMatrix vertices(width, count);
  for (Eigen::Index s = 0; s < count; ++s) vertices.col(s) = correlation_vertex(spec, static_cast<std::size_t>(s));

  CorrelationMembership out;
  {
    lp::Problem<Rational> p;
    p.objective = RationalVector::Constant(count, Rational(0));
    p.constraints = RationalMatrix(width + 1, count);
    p.constraints.topRows(width) = vertices;
    p.constraints.row(width).setConstant(Rational(1));
    p.rhs = RationalVector(width + 1);
    p.rhs << v, Rational(1);
    p.senses.assign(static_cast<std::size_t>(width + 1), lp::RowSense::equal);
    const auto solution = lp::solve(p);
    if (solution.status == lp::Status::optimal) {
      out.member = true;
      out.weights = solution.primal;
      return out;
    }
  }

  // Separation: maximise h.v - h0 s.t. h.v_s - h0 <= 0, -1 <= h <= 1.
  // Columns: h+ (width), h- (width), h0+, h0-.
  lp::Problem<Rational> p;
  const Eigen::Index cols = 2 * width + 2;
  p.objective = RationalVector(cols);
  p.objective << v, -v, Rational(-1), Rational(1);
  p.constraints = RationalMatrix::Constant(count + 2 * width, cols, Rational(0));
  p.rhs = RationalVector::Constant(count + 2 * width, Rational(0));
  for (Eigen::Index s = 0; s < count; ++s) {
    p.constraints.row(s).head(width) = vertices.col(s).transpose();
    p.constraints.row(s).segment(width, width) = -vertices.col(s).transpose();
    p.constraints(s, 2 * width) = -1;
    p.constraints(s, 2 * width + 1) = 1;
  }
  for (Eigen::Index i = 0; i < width; ++i) {
    p.constraints(count + i, i) = 1;
    p.constraints(count + i, width + i) = -1;
    p.rhs(count + i) = 1;
    p.constraints(count + width + i, i) = -1;
    p.constraints(count + width + i, width + i) = 1;
    p.rhs(count + width + i) = 1;
  }
  p.senses.assign(static_cast<std::size_t>(count + 2 * width), lp::RowSense::less_equal);
  const auto solution = lp::solve(p);
  if (solution.status != lp::Status::optimal || solution.value.sign() <= 0) {
    throw std::logic_error("correlation membership: separation LP found no hyperplane");
  }
  out.normal = solution.primal.head(width) - solution.primal.segment(width, width);
  out.offset = solution.primal(2 * width) - solution.primal(2 * width + 1);
  return out;
}

}  // namespace ctxkit
