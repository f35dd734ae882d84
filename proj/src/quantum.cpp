#include "ctxkit/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctxkit {

namespace {

constexpr double tolerance = 1e-12;

std::size_t qubit_count(const StateVector& state) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < static_cast<std::size_t>(state.size())) ++n;
  return n;
}

/// <e_o| for the observable at `angle`: e_0 = (1, e^{i angle})/sqrt 2, e_1 = (1, -e^{i angle})/sqrt 2.
std::complex<double> bra(std::size_t outcome, double angle, std::size_t bit) {
  const double r = 1.0 / std::sqrt(2.0);
  if (bit == 0) return {r, 0.0};
  const std::complex<double> phase = std::conj(std::polar(r, angle));
  return outcome == 0 ? phase : -phase;
}

}  // namespace

StateVector bell_state() {
  StateVector s = StateVector::Zero(4);
  s(0) = s(3) = 1.0 / std::sqrt(2.0);
  return s;
}

Scenario planar_scenario(std::size_t parties, const std::vector<PlanarMeasurement>& settings) {
  if (parties == 0) throw std::invalid_argument("need at least one party");
  std::vector<std::vector<std::string>> by_party(parties);
  for (const auto& m : settings) {
    if (m.party >= parties) {
      throw std::invalid_argument("setting \"" + m.label + "\" names party " + std::to_string(m.party) + " of " +
                                  std::to_string(parties));
    }
    by_party[m.party].push_back(m.label);
  }
  std::vector<std::string> measurements;
  for (std::size_t p = 0; p < parties; ++p) {
    if (by_party[p].empty()) throw std::invalid_argument("party " + std::to_string(p) + " has no setting");
    measurements.insert(measurements.end(), by_party[p].begin(), by_party[p].end());
  }
  std::vector<std::vector<std::string>> contexts{{}};
  for (std::size_t p = 0; p < parties; ++p) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : contexts) {
      for (const auto& label : by_party[p]) {
        next.push_back(prefix);
        next.back().push_back(label);
      }
    }
    contexts = std::move(next);
  }
  return make_scenario(std::move(measurements), std::move(contexts), {"0", "1"});
}

ApproxModel born_model(const StateVector& state, const std::vector<PlanarMeasurement>& settings) {
  const std::size_t parties = qubit_count(state);
  if (state.size() < 2 || (std::size_t{1} << parties) != static_cast<std::size_t>(state.size())) {
    throw std::invalid_argument("state dimension " + std::to_string(state.size()) + " is not a power of two");
  }
  if (std::abs(state.squaredNorm() - 1.0) > tolerance) {
    throw std::invalid_argument("state is not normalised (squared norm " + std::to_string(state.squaredNorm()) + ")");
  }
  for (const auto& m : settings) {
    if (!std::isfinite(m.angle)) throw std::invalid_argument("setting \"" + m.label + "\" has a non-finite angle");
  }
  Scenario scenario = planar_scenario(parties, settings);

  // Settings by measurement index.
  std::vector<const PlanarMeasurement*> setting_of(scenario.measurement_count());
  for (const auto& m : settings) setting_of[scenario.measurement_index(m.label)] = &m;

  ApproxModel out{scenario, {}};
  for (std::size_t c = 0; c < scenario.context_count(); ++c) {
    // Context measurements are increasing indices, hence one per party in party order.
    const auto& context = scenario.context(c);
    Eigen::VectorXd row(static_cast<Eigen::Index>(scenario.context_size(c)));
    for (std::size_t s = 0; s < scenario.context_size(c); ++s) {
      const Assignment outcomes = decode_assignment(s, 2, parties);
      std::complex<double> amplitude = 0.0;
      for (Eigen::Index basis = 0; basis < state.size(); ++basis) {
        if (state(basis) == 0.0) continue;
        std::complex<double> factor = 1.0;
        for (std::size_t p = 0; p < parties; ++p) {
          const std::size_t bit = (static_cast<std::size_t>(basis) >> (parties - 1 - p)) & 1U;
          factor *= bra(outcomes[p], setting_of[context[p]]->angle, bit);
        }
        amplitude += factor * state(basis);
      }
      row(static_cast<Eigen::Index>(s)) = std::norm(amplitude);
    }
    for (Eigen::Index i = 0; i < row.size(); ++i) {
      if (row(i) < -tolerance || row(i) > 1.0 + tolerance) throw std::logic_error("Born probability out of range");
      row(i) = std::clamp(row(i), 0.0, 1.0);
    }
    if (std::abs(row.sum() - 1.0) > tolerance) throw std::logic_error("Born probabilities do not sum to 1");
    out.tables.push_back(std::move(row));
  }
  return out;
}

EmpiricalModel rationalize(const ApproxModel& model, const Rational::Integer& max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("maximum denominator must be at least 1");
  std::vector<RationalVector> tables;
  for (const auto& approx : model.tables) {
    RationalVector row(approx.size());
    Eigen::Index largest = 0;
    Rational total(0);
    for (Eigen::Index i = 0; i < approx.size(); ++i) {
      row(i) = limit_denominator(Rational::from_double(approx(i)), max_denominator);
      total += row(i);
      if (row(i) > row(largest)) largest = i;
    }
    row(largest) += Rational(1) - total;
    tables.push_back(std::move(row));
  }
  EmpiricalModel exact(model.scenario, std::move(tables), ModelCheck::skip_compatibility);
  if (auto report = check_compatibility(exact); !report.ok()) throw CompatibilityError(std::move(report));
  return exact;
}

}  // namespace ctxkit
