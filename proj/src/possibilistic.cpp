#include "ctxkit/possibilistic.hpp"

#include <stdexcept>

namespace ctxkit {

bool SupportModel::supported(std::size_t context, const Assignment& local) const {
  return supports.at(context).at(encode_assignment(local, scenario.outcome_count()));
}

void validate(const SupportModel& sm) {
  if (sm.supports.size() != sm.scenario.context_count()) {
    throw std::invalid_argument("support model needs one support per context");
  }
  for (std::size_t c = 0; c < sm.supports.size(); ++c) {
    if (sm.supports[c].size() != sm.scenario.context_size(c)) {
      throw std::invalid_argument("support for context {" + sm.scenario.context_key(c) + "} has wrong length");
    }
    bool any = false;
    for (bool b : sm.supports[c]) any = any || b;
    if (!any) throw std::invalid_argument("support for context {" + sm.scenario.context_key(c) + "} is empty");
  }
}

SupportModel support_of(const EmpiricalModel& e) {
  SupportModel out{e.scenario(), {}};
  for (const auto& table : e.tables()) {
    std::vector<bool> row(static_cast<std::size_t>(table.size()));
    for (Eigen::Index i = 0; i < table.size(); ++i) row[static_cast<std::size_t>(i)] = table(i).sign() > 0;
    out.supports.push_back(std::move(row));
  }
  return out;
}

std::vector<Assignment> consistent_globals(const SupportModel& sm) {
  validate(sm);
  const auto& s = sm.scenario;
  std::vector<Assignment> out;
  for (std::size_t g = 0; g < s.global_assignment_count(); ++g) {
    Assignment global = decode_assignment(g, s.outcome_count(), s.measurement_count());
    bool ok = true;
    for (std::size_t c = 0; c < s.context_count() && ok; ++c) ok = sm.supported(c, restrict_assignment(global, s.context(c)));
    if (ok) out.push_back(std::move(global));
  }
  return out;
}

const char* to_string(PossibilisticClass c) {
  switch (c) {
    case PossibilisticClass::noncontextual: return "non-contextual-possibilistically";
    case PossibilisticClass::possibilistically_contextual: return "possibilistically-contextual";
    case PossibilisticClass::strongly_contextual: return "strongly-contextual";
  }
  return "?";
}

PossibilisticReport analyse(const SupportModel& sm) {
  PossibilisticReport report;
  report.consistent = consistent_globals(sm);
  const auto& s = sm.scenario;
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    std::vector<bool> explained(s.context_size(c), false);
    for (const auto& g : report.consistent) {
      explained[encode_assignment(restrict_assignment(g, s.context(c)), s.outcome_count())] = true;
    }
    for (std::size_t i = 0; i < explained.size(); ++i) {
      if (sm.supports[c][i] && !explained[i]) {
        report.unexplained.push_back({c, decode_assignment(i, s.outcome_count(), s.context(c).size())});
      }
    }
  }
  if (report.consistent.empty()) {
    report.classification = PossibilisticClass::strongly_contextual;
  } else if (!report.unexplained.empty()) {
    report.classification = PossibilisticClass::possibilistically_contextual;
  }
  return report;
}

PossibilisticClass classify(const SupportModel& sm) { return analyse(sm).classification; }

}  // namespace ctxkit
