#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// A distribution over the joint outcomes O^U of an ordered set U of
/// measurements, stored in mixed-radix order (first measurement fastest).
struct Distribution {
  std::vector<std::size_t> measurements;
  std::size_t outcome_count = 0;
  RationalVector probabilities;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// Marginal of d on `subset` (measurement indices, all in d.measurements).
/// The result is ordered like `subset`; an empty subset gives the point
/// distribution {1}.
Distribution marginalize(const Distribution& d, const std::vector<std::size_t>& subset);

/// Disagreeing overlap marginals of two contexts.
struct CompatibilityViolation {
  std::size_t first_context = 0;
  std::size_t second_context = 0;
  std::vector<std::size_t> overlap;
  /// Each mismatch is an assignment t on the overlap with e_C|t and e_C'|t.
  struct Mismatch {
    Assignment assignment;
    Rational first;
    Rational second;
  };
  std::vector<Mismatch> mismatches;
};

struct CompatibilityReport {
  std::vector<CompatibilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Thrown when per-context tables fail the distribution checks.
class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when overlap marginals disagree; carries the full report.
class CompatibilityError : public std::invalid_argument {
 public:
  explicit CompatibilityError(CompatibilityReport report);
  const CompatibilityReport& report() const { return report_; }

 private:
  CompatibilityReport report_;
};

/// What make_model verifies.
enum class ModelCheck {
  full,                ///< distributions and compatibility
  skip_compatibility,  ///< distributions only (signalling fixtures)
  none,                ///< shape only; for reporting tools
};

/// Per-context probability tables {e_C}.
class EmpiricalModel {
 public:
  /// tables[c] lists e_C(s) for the local assignments of context c in
  /// canonical order.
  EmpiricalModel(Scenario scenario, std::vector<RationalVector> tables, ModelCheck check = ModelCheck::full);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<RationalVector>& tables() const { return tables_; }
  const RationalVector& table(std::size_t c) const { return tables_.at(c); }
  const Rational& probability(std::size_t c, const Assignment& local) const;

  Distribution distribution(std::size_t c) const;

  friend bool operator==(const EmpiricalModel&, const EmpiricalModel&) = default;

 private:
  Scenario scenario_;
  std::vector<RationalVector> tables_;
};

EmpiricalModel make_model(Scenario scenario, std::vector<RationalVector> tables, ModelCheck check = ModelCheck::full);

/// Distribution problems (negative entries, rows not summing to 1), one
/// message per offending context. Empty when all rows are distributions.
std::vector<std::string> check_distributions(const EmpiricalModel& model);

/// Pairwise overlap-marginal agreement, exact.
CompatibilityReport check_compatibility(const EmpiricalModel& model);

/// delta^g: probability 1 on g|C in every context.
EmpiricalModel deterministic_model(const Scenario& scenario, const Assignment& global);

/// Context-wise convex combination. Weights must be non-negative and sum
/// to 1, and all models must share one scenario.
EmpiricalModel mix(const std::vector<EmpiricalModel>& models, const std::vector<Rational>& weights);

/// v^e, indexed by LocalIndex.
RationalVector vectorize(const EmpiricalModel& model);

/// Inverse of vectorize.
EmpiricalModel model_from_vector(const Scenario& scenario, const RationalVector& v,
                                 ModelCheck check = ModelCheck::full);

/// m x n 0/1 matrix with M[<C,s>, g] = 1 iff g|C = s.
RationalMatrix incidence_matrix(const Scenario& scenario);

}  // namespace ctxkit
