#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctxkit/empirical_model.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// Pure state of n qubits; party 0 is the most significant bit of the
/// basis index.
using StateVector = Eigen::VectorXcd;

/// (|00> + |11>) / sqrt(2).
StateVector bell_state();

/// Observable cos(angle) X + sin(angle) Y on one party's qubit. Outcome "0"
/// is the +1 eigenspace.
struct PlanarMeasurement {
  std::size_t party = 0;
  std::string label;
  double angle = 0.0;
};

/// Floating-point tables in the layout of EmpiricalModel.
struct ApproxModel {
  Scenario scenario;
  std::vector<Eigen::VectorXd> tables;
};

/// Scenario with one context per choice of one setting per party.
/// Measurements are ordered by party, then as listed.
Scenario planar_scenario(std::size_t parties, const std::vector<PlanarMeasurement>& settings);

/// Born-rule probabilities for every context. Throws std::invalid_argument
/// when the state is not a unit vector within 1e-12, its dimension is not
/// 2^parties, or a party has no setting.
ApproxModel born_model(const StateVector& state, const std::vector<PlanarMeasurement>& settings);

/// Each probability replaced by the closest rational with denominator at
/// most max_denominator; each row's residue is absorbed by its largest
/// entry. Throws CompatibilityError when the exact tables signal and
/// DistributionError when the repaired row is not a distribution.
EmpiricalModel rationalize(const ApproxModel& model, const Rational::Integer& max_denominator);

}  // namespace ctxkit
