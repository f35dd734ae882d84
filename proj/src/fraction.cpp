#include "ctxkit/fraction.hpp"

#include <stdexcept>

#include "ctxkit/lp.hpp"

namespace ctxkit {

namespace {

RationalVector ones(Eigen::Index n) { return RationalVector::Constant(n, Rational(1)); }

RationalVector apply(const RationalMatrix& m, const RationalVector& x) {
  RationalVector out = RationalVector::Constant(m.rows(), Rational(0));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (x(j).is_zero()) continue;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_zero()) out(i) += m(i, j) * x(j);
    }
  }
  return out;
}

}  // namespace

MembershipResult membership_nc(const EmpiricalModel& e) {
  lp::Problem<Rational> p;
  p.constraints = incidence_matrix(e.scenario());
  p.rhs = vectorize(e);
  p.objective = RationalVector::Constant(p.constraints.cols(), Rational(0));
  p.senses.assign(static_cast<std::size_t>(p.constraints.rows()), lp::RowSense::equal);
  const auto solution = lp::solve(p);
  MembershipResult out;
  out.member = solution.status == lp::Status::optimal;
  if (out.member) out.distribution = solution.primal;
  return out;
}

FractionResult noncontextual_fraction(const EmpiricalModel& e) {
  lp::Problem<Rational> p;
  p.constraints = incidence_matrix(e.scenario());
  p.rhs = vectorize(e);
  p.objective = ones(p.constraints.cols());
  p.senses.assign(static_cast<std::size_t>(p.constraints.rows()), lp::RowSense::less_equal);
  const auto solution = lp::solve(p);
  if (solution.status != lp::Status::optimal) {
    // b = 0 is feasible and 1.b <= 1, so this only happens on malformed tables.
    throw std::logic_error(std::string("fraction LP ended ") + lp::to_string(solution.status));
  }
  FractionResult out;
  out.ncf = solution.value;
  out.cf = Rational(1) - solution.value;
  out.weights = solution.primal;
  out.dual = solution.dual;
  return out;
}

Decomposition decompose(const EmpiricalModel& e, const FractionResult& result) {
  Decomposition out;
  if (result.cf.is_zero()) {
    out.noncontextual = e;
    return out;
  }
  if (result.ncf.is_zero()) {
    out.strongly_contextual = e;
    return out;
  }
  const RationalVector local = apply(incidence_matrix(e.scenario()), result.weights);
  const RationalVector v = vectorize(e);
  out.noncontextual = model_from_vector(e.scenario(), local / result.ncf);
  out.strongly_contextual = model_from_vector(e.scenario(), (v - local) / result.cf);
  return out;
}

Rational normalized_violation(const BellInequality& inequality, const EmpiricalModel& e) {
  if (inequality.scenario() != e.scenario()) throw std::invalid_argument("inequality and model scenarios differ");
  const Rational excess = dot(inequality.coefficients(), vectorize(e)) - inequality.bound();
  if (excess.sign() <= 0) return Rational(0);
  return excess / (algebraic_bound(inequality.scenario(), inequality.coefficients()) - inequality.bound());
}

Rational deterministic_maximum(const Scenario& scenario, const RationalVector& coefficients) {
  const LocalIndex index(scenario);
  if (static_cast<std::size_t>(coefficients.size()) != index.size()) {
    throw std::invalid_argument("inequality dimension does not match the scenario");
  }
  std::optional<Rational> best;
  for (std::size_t g = 0; g < scenario.global_assignment_count(); ++g) {
    const Assignment global = decode_assignment(g, scenario.outcome_count(), scenario.measurement_count());
    Rational value(0);
    for (std::size_t c = 0; c < scenario.context_count(); ++c) {
      const auto local = restrict_assignment(global, scenario.context(c));
      value += coefficients(static_cast<Eigen::Index>(index.index_of({c, local})));
    }
    if (!best || value > *best) best = std::move(value);
  }
  return *best;
}

bool is_bell_inequality(const Scenario& scenario, const LinearInequality& inequality) {
  return deterministic_maximum(scenario, inequality.coefficients) <= inequality.bound;
}

bool is_bell_inequality(const BellInequality& inequality) {
  return is_bell_inequality(inequality.scenario(), {inequality.coefficients(), inequality.bound()});
}

bool is_tight(const Scenario& scenario, const LinearInequality& inequality) {
  return deterministic_maximum(scenario, inequality.coefficients) == inequality.bound;
}

bool is_tight(const BellInequality& inequality) {
  return is_tight(inequality.scenario(), {inequality.coefficients(), inequality.bound()});
}

BellInequality witness_inequality(const EmpiricalModel& e, const FractionResult& result) {
  if (result.cf.is_zero()) throw std::invalid_argument("model is non-contextual; no witness exists");
  const Scenario& scenario = e.scenario();
  // a = u - y* with u uniform 1/|M|: a.M[-,g] = 1 - (M^T y*)_g <= 0 for all g,
  // a.v^e = 1 - ncf = cf, and ||a|| = 1 because y* vanishes on the support of
  // e^SC (complementary slackness), which meets every context.
  const Rational u = Rational(1) / Rational(static_cast<long long>(scenario.context_count()));
  RationalVector a = RationalVector::Constant(result.dual.size(), u) - result.dual;
  BellInequality witness(scenario, a, Rational(0));

  const auto fail = [](const char* what) { throw std::logic_error(std::string("witness check failed: ") + what); };
  if (!is_bell_inequality(witness)) fail("not valid on every deterministic model");
  if (normalized_violation(witness, e) != result.cf) fail("normalised violation differs from cf");
  const auto parts = decompose(e, result);
  if (parts.noncontextual &&
      dot(witness.coefficients(), vectorize(*parts.noncontextual)) != witness.bound()) {
    fail("not tight at the non-contextual part");
  }
  if (parts.strongly_contextual && normalized_violation(witness, *parts.strongly_contextual) != Rational(1)) {
    fail("violation at the contextual part is not 1");
  }
  return witness;
}

BellInequality witness_inequality(const EmpiricalModel& e) { return witness_inequality(e, noncontextual_fraction(e)); }

}  // namespace ctxkit
