#include "ctxkit/empirical_model.hpp"

#include <algorithm>
#include <sstream>

namespace ctxkit {

namespace {

std::string describe(const CompatibilityReport& report) {
  std::ostringstream os;
  os << "no-signalling violation";
  if (!report.violations.empty()) {
    const auto& v = report.violations.front();
    os << " between contexts #" << v.first_context << " and #" << v.second_context;
    if (!v.mismatches.empty()) {
      os << " (marginal " << v.mismatches.front().first << " vs " << v.mismatches.front().second << ")";
    }
    if (report.violations.size() > 1) os << " and " << report.violations.size() - 1 << " more";
  }
  return os.str();
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Distribution marginalize(const Distribution& d, const std::vector<std::size_t>& subset) {
  for (auto m : subset) {
    if (std::find(d.measurements.begin(), d.measurements.end(), m) == d.measurements.end()) {
      throw std::invalid_argument("marginalize: target is not a subset of the context");
    }
  }
  Distribution out;
  out.measurements = subset;
  out.outcome_count = d.outcome_count;
  out.probabilities = RationalVector::Constant(
      static_cast<Eigen::Index>(assignment_count(d.outcome_count, subset.size())), Rational(0));
  for (Eigen::Index i = 0; i < d.probabilities.size(); ++i) {
    if (d.probabilities(i).is_zero()) continue;
    const Assignment s = decode_assignment(static_cast<std::size_t>(i), d.outcome_count, d.measurements.size());
    const Assignment t = restrict_assignment(s, d.measurements, subset);
    out.probabilities(static_cast<Eigen::Index>(encode_assignment(t, d.outcome_count))) += d.probabilities(i);
  }
  return out;
}

CompatibilityError::CompatibilityError(CompatibilityReport report)
    : std::invalid_argument(describe(report)), report_(std::move(report)) {}

EmpiricalModel::EmpiricalModel(Scenario scenario, std::vector<RationalVector> tables, ModelCheck check)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
  if (tables_.size() != scenario_.context_count()) {
    throw DistributionError("expected " + std::to_string(scenario_.context_count()) + " context tables, got " +
                            std::to_string(tables_.size()));
  }
  for (std::size_t c = 0; c < tables_.size(); ++c) {
    if (static_cast<std::size_t>(tables_[c].size()) != scenario_.context_size(c)) {
      throw DistributionError("table for context {" + scenario_.context_key(c) + "} has wrong length");
    }
  }
  if (check == ModelCheck::none) return;
  if (auto problems = check_distributions(*this); !problems.empty()) throw DistributionError(problems.front());
  if (check == ModelCheck::full) {
    if (auto report = check_compatibility(*this); !report.ok()) throw CompatibilityError(std::move(report));
  }
}

const Rational& EmpiricalModel::probability(std::size_t c, const Assignment& local) const {
  return tables_.at(c)(static_cast<Eigen::Index>(encode_assignment(local, scenario_.outcome_count())));
}

Distribution EmpiricalModel::distribution(std::size_t c) const {
  return Distribution{scenario_.context(c), scenario_.outcome_count(), tables_.at(c)};
}

EmpiricalModel make_model(Scenario scenario, std::vector<RationalVector> tables, ModelCheck check) {
  return EmpiricalModel(std::move(scenario), std::move(tables), check);
}

std::vector<std::string> check_distributions(const EmpiricalModel& model) {
  std::vector<std::string> problems;
  const auto& scenario = model.scenario();
  for (std::size_t c = 0; c < scenario.context_count(); ++c) {
    const auto& row = model.table(c);
    Rational total(0);
    bool negative = false;
    for (Eigen::Index i = 0; i < row.size(); ++i) {
      if (row(i).sign() < 0) negative = true;
      total += row(i);
    }
    if (negative) problems.push_back("context {" + scenario.context_key(c) + "} has a negative probability");
    if (total != Rational(1)) {
      problems.push_back("context {" + scenario.context_key(c) + "} sums to " + total.str() + ", not 1");
    }
  }
  return problems;
}

CompatibilityReport check_compatibility(const EmpiricalModel& model) {
  CompatibilityReport report;
  const auto& scenario = model.scenario();
  for (std::size_t c1 = 0; c1 < scenario.context_count(); ++c1) {
    for (std::size_t c2 = c1 + 1; c2 < scenario.context_count(); ++c2) {
      const auto overlap = intersect(scenario.context(c1), scenario.context(c2));
      if (overlap.empty()) continue;
      const auto m1 = marginalize(model.distribution(c1), overlap);
      const auto m2 = marginalize(model.distribution(c2), overlap);
      CompatibilityViolation violation{c1, c2, overlap, {}};
      for (Eigen::Index t = 0; t < m1.probabilities.size(); ++t) {
        if (m1.probabilities(t) != m2.probabilities(t)) {
          violation.mismatches.push_back(
              {decode_assignment(static_cast<std::size_t>(t), scenario.outcome_count(), overlap.size()),
               m1.probabilities(t), m2.probabilities(t)});
        }
      }
      if (!violation.mismatches.empty()) report.violations.push_back(std::move(violation));
    }
  }
  return report;
}

EmpiricalModel deterministic_model(const Scenario& scenario, const Assignment& global) {
  if (global.size() != scenario.measurement_count()) {
    throw std::invalid_argument("global assignment has wrong length");
  }
  std::vector<RationalVector> tables;
  for (std::size_t c = 0; c < scenario.context_count(); ++c) {
    RationalVector row = RationalVector::Constant(static_cast<Eigen::Index>(scenario.context_size(c)), Rational(0));
    row(static_cast<Eigen::Index>(
        encode_assignment(restrict_assignment(global, scenario.context(c)), scenario.outcome_count()))) = 1;
    tables.push_back(std::move(row));
  }
  return EmpiricalModel(scenario, std::move(tables), ModelCheck::none);
}

EmpiricalModel mix(const std::vector<EmpiricalModel>& models, const std::vector<Rational>& weights) {
  if (models.empty() || models.size() != weights.size()) {
    throw std::invalid_argument("mix: need one weight per model");
  }
  Rational total(0);
  for (const auto& w : weights) {
    if (w.sign() < 0) throw std::invalid_argument("mix: negative weight");
    total += w;
  }
  if (total != Rational(1)) throw std::invalid_argument("mix: weights sum to " + total.str() + ", not 1");
  const Scenario& scenario = models.front().scenario();
  std::vector<RationalVector> tables;
  for (std::size_t c = 0; c < scenario.context_count(); ++c) {
    tables.push_back(RationalVector::Constant(static_cast<Eigen::Index>(scenario.context_size(c)), Rational(0)));
  }
  for (std::size_t k = 0; k < models.size(); ++k) {
    if (models[k].scenario() != scenario) throw std::invalid_argument("mix: scenario mismatch");
    if (weights[k].is_zero()) continue;
    for (std::size_t c = 0; c < scenario.context_count(); ++c) tables[c] += weights[k] * models[k].table(c);
  }
  return EmpiricalModel(scenario, std::move(tables), ModelCheck::skip_compatibility);
}

RationalVector vectorize(const EmpiricalModel& model) {
  const LocalIndex index(model.scenario());
  RationalVector v(static_cast<Eigen::Index>(index.size()));
  for (std::size_t c = 0; c < index.context_count(); ++c) {
    v.segment(static_cast<Eigen::Index>(index.context_offset(c)), static_cast<Eigen::Index>(index.context_size(c))) =
        model.table(c);
  }
  return v;
}

EmpiricalModel model_from_vector(const Scenario& scenario, const RationalVector& v, ModelCheck check) {
  const LocalIndex index(scenario);
  if (static_cast<std::size_t>(v.size()) != index.size()) {
    throw std::invalid_argument("model vector has length " + std::to_string(v.size()) + ", expected " +
                                std::to_string(index.size()));
  }
  std::vector<RationalVector> tables;
  for (std::size_t c = 0; c < index.context_count(); ++c) {
    tables.emplace_back(v.segment(static_cast<Eigen::Index>(index.context_offset(c)),
                                  static_cast<Eigen::Index>(index.context_size(c))));
  }
  return EmpiricalModel(scenario, std::move(tables), check);
}

RationalMatrix incidence_matrix(const Scenario& scenario) {
  const LocalIndex index(scenario);
  const std::size_t n = scenario.global_assignment_count();
  RationalMatrix m = RationalMatrix::Constant(static_cast<Eigen::Index>(index.size()), static_cast<Eigen::Index>(n),
                                              Rational(0));
  for (std::size_t g = 0; g < n; ++g) {
    const Assignment global = decode_assignment(g, scenario.outcome_count(), scenario.measurement_count());
    for (std::size_t c = 0; c < scenario.context_count(); ++c) {
      const auto local = restrict_assignment(global, scenario.context(c));
      m(static_cast<Eigen::Index>(index.index_of({c, local})), static_cast<Eigen::Index>(g)) = 1;
    }
  }
  return m;
}

}  // namespace ctxkit
