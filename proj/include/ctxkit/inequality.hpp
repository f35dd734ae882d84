#pragma once

#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// a.v <= bound over vectorised models, with no further invariants.
struct LinearInequality {
  RationalVector coefficients;
  Rational bound;

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

/// ||a|| = sum over contexts of the largest coefficient in that context.
Rational algebraic_bound(const Scenario& scenario, const RationalVector& coefficients);

/// A non-trivial inequality a.v <= R on the models of one scenario.
///
/// Stored normalised: R >= 0 (a negative bound is absorbed by shifting the
/// first context's coefficients, which leaves every model's slack unchanged)
/// and the largest coefficient magnitude is 1. Construction rejects
/// inequalities with R >= ||a||, which no model can violate.
class BellInequality {
 public:
  BellInequality(Scenario scenario, RationalVector coefficients, Rational bound);
  BellInequality(const Scenario& scenario, const LinearInequality& inequality)
      : BellInequality(scenario, inequality.coefficients, inequality.bound) {}

  const Scenario& scenario() const { return scenario_; }
  const RationalVector& coefficients() const { return coefficients_; }
  const Rational& bound() const { return bound_; }

  friend bool operator==(const BellInequality&, const BellInequality&) = default;

 private:
  Scenario scenario_;
  RationalVector coefficients_;
  Rational bound_;
};

}  // namespace ctxkit
