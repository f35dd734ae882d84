#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctxkit/inequality.hpp"
#include "ctxkit/logic.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// coefficients.x <= bound, or = bound when held as an equality.
struct LinearConstraint {
  RationalVector coefficients;
  Rational bound;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// A polyhedron {x : A x <= b, E x = f} in a fixed ambient dimension.
/// Eliminated variables keep their column, which is then zero everywhere.
struct LinearSystem {
  std::size_t dimension = 0;
  std::vector<LinearConstraint> inequalities;
  std::vector<LinearConstraint> equalities;

  bool satisfied_by(const RationalVector& x) const;
};

/// Throws std::invalid_argument when a row has the wrong length.
void validate(const LinearSystem& sys);

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Projects out variable `var`. If an equality involves it, that equality
/// is solved for var and substituted everywhere; otherwise rows are paired
/// Fourier-Motzkin style (rows without var are kept, first). When
/// row_limit > 0 and the result would exceed it, throws
/// ResourceLimitExceeded before doing the work.
LinearSystem fm_eliminate(const LinearSystem& sys, std::size_t var, std::size_t row_limit = 0);

/// Same solution set, no implied inequality rows and independent equality
/// rows. Equalities come back in reduced row echelon form, inequalities are
/// reduced modulo them and scaled to primitive integer rows. An infeasible
/// system comes back as the single row 0 <= -1.
LinearSystem remove_redundant(const LinearSystem& sys);

/// Facet description of the non-contextual polytope of a scenario, in the
/// space of model vectors (dimension m, indexed by LocalIndex).
struct NcPolytope {
  Scenario scenario;
  /// Affine hull: normalisation and no-signalling, in reduced row echelon form.
  std::vector<LinearConstraint> equalities;
  /// Canonical facets: reduced modulo `equalities`, primitive integer rows.
  std::vector<LinearConstraint> facets;
  /// positivity[i]: facets[i] is the reduced form of some v[k] >= 0.
  std::vector<bool> positivity;

  std::vector<LinearConstraint> nontrivial_facets() const;
  /// All equalities and facets hold at v.
  bool contains(const RationalVector& v) const;
};

constexpr std::size_t default_row_limit = 200000;

/// Eliminates the weights d from {v = M d, per-context sum of v = 1, d >= 0},
/// removing redundancy after every step. Throws ResourceLimitExceeded when
/// an intermediate system would exceed row_limit rows.
NcPolytope nc_polytope_facets(const Scenario& scenario, std::size_t row_limit = default_row_limit);

/// Among the inequalities a' = a + E^T l, R' = R + f.l that agree with `facet` on
/// the affine hull E v = f, one minimising ||a'|| - R'. This maximises the
/// normalised violation of every model at once. Returns `facet` unchanged
/// when no representative is a non-trivial inequality.
LinearInequality tightest_representative(const Scenario& scenario, const std::vector<LinearConstraint>& equalities,
                                         const LinearConstraint& facet);

/// Basic events (one per label, true when that measurement has outcome "0")
/// and formulas over them.
struct CorrelationPolytopeSpec {
  std::vector<std::string> events;
  std::vector<Formula> formulas;
};

/// Vertex v_s for the i-th truth assignment: event k is true when digit k
/// of i (first event fastest) is 0. Entries: events, then formulas.
RationalVector correlation_vertex(const CorrelationPolytopeSpec& spec, std::size_t i);

struct CorrelationMembership {
  bool member = false;
  /// When member: convex weights over the 2^n vertices.
  RationalVector weights;
  /// When not member: h.v > offset while h.v_s <= offset for every vertex.
  RationalVector normal;
  Rational offset;
};

/// Throws std::invalid_argument when v has the wrong length or a formula
/// mentions an undeclared event.
CorrelationMembership correlation_membership(const CorrelationPolytopeSpec& spec, const RationalVector& v);

}  // namespace ctxkit
