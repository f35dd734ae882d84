#pragma once

#include <string>
#include <vector>

#include "ctxkit/empirical_model.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// Per context, which local assignments (LocalIndex offsets within the
/// context block) have positive probability.
struct SupportModel {
  Scenario scenario;
  std::vector<std::vector<bool>> supports;

  bool supported(std::size_t context, const Assignment& local) const;
};

/// Throws std::invalid_argument when some context has empty support.
void validate(const SupportModel& sm);

SupportModel support_of(const EmpiricalModel& e);

/// Global assignments whose every restriction is supported, in canonical
/// order, by exhaustive enumeration.
std::vector<Assignment> consistent_globals(const SupportModel& sm);

enum class PossibilisticClass { noncontextual, possibilistically_contextual, strongly_contextual };

/// "non-contextual-possibilistically", "possibilistically-contextual" or
/// "strongly-contextual".
const char* to_string(PossibilisticClass c);

struct PossibilisticReport {
  PossibilisticClass classification = PossibilisticClass::noncontextual;
  std::vector<Assignment> consistent;
  /// Supported <C, s> with no consistent extension.
  std::vector<LocalAssignment> unexplained;
};

PossibilisticReport analyse(const SupportModel& sm);
PossibilisticClass classify(const SupportModel& sm);

}  // namespace ctxkit
