#pragma once

#include <optional>

#include "ctxkit/empirical_model.hpp"
#include "ctxkit/inequality.hpp"
#include "ctxkit/rational.hpp"

namespace ctxkit {

struct MembershipResult {
  bool member = false;
  /// When member: a distribution d on global assignments with M d = v^e.
  RationalVector distribution;
};

/// Decides whether e is a convex combination of deterministic models.
MembershipResult membership_nc(const EmpiricalModel& e);

struct FractionResult {
  Rational ncf;
  Rational cf;
  /// Optimal subprobability b* on global assignments (M b* <= v^e, 1.b* = ncf).
  RationalVector weights;
  /// Optimal dual y* (M^T y* >= 1, y* >= 0, v^e.y* = ncf).
  RationalVector dual;
};

/// Non-contextual fraction: max 1.b subject to M b <= v^e, b >= 0.
FractionResult noncontextual_fraction(const EmpiricalModel& e);

/// e = ncf e^NC + cf e^SC. A component is absent when its weight is 0.
struct Decomposition {
  std::optional<EmpiricalModel> noncontextual;
  std::optional<EmpiricalModel> strongly_contextual;
};

Decomposition decompose(const EmpiricalModel& e, const FractionResult& result);

/// max{0, a.v^e - R} / (||a|| - R).
Rational normalized_violation(const BellInequality& inequality, const EmpiricalModel& e);

/// Largest value of a.v over the deterministic models of the scenario.
Rational deterministic_maximum(const Scenario& scenario, const RationalVector& coefficients);

bool is_bell_inequality(const Scenario& scenario, const LinearInequality& inequality);
bool is_bell_inequality(const BellInequality& inequality);
/// Valid and saturated by some deterministic model.
bool is_tight(const Scenario& scenario, const LinearInequality& inequality);
bool is_tight(const BellInequality& inequality);

/// Witness built from the optimal dual of the fraction LP: valid on every
/// deterministic model, violated by e with normalised violation cf(e), tight
/// at e^NC and violated maximally by e^SC. Every property is re-checked
/// before returning. Throws std::invalid_argument when cf(e) = 0.
BellInequality witness_inequality(const EmpiricalModel& e, const FractionResult& result);
BellInequality witness_inequality(const EmpiricalModel& e);

}  // namespace ctxkit
