#include "ctxkit/scenario.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace ctxkit {

namespace {

template <typename T>
bool has_duplicates(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) != values.end();
}

std::string join(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += labels[i];
  }
  return out;
}

}  // namespace

Scenario::Scenario(std::vector<std::string> measurements, std::vector<std::vector<std::string>> contexts,
                   std::vector<std::string> outcomes)
    : measurements_(std::move(measurements)), outcomes_(std::move(outcomes)) {
  if (measurements_.empty()) throw std::invalid_argument("scenario needs at least one measurement");
  if (outcomes_.empty()) throw std::invalid_argument("scenario needs at least one outcome");
  if (has_duplicates(measurements_)) throw std::invalid_argument("duplicate measurement label");
  if (has_duplicates(outcomes_)) throw std::invalid_argument("duplicate outcome label");

  for (const auto& labels : contexts) {
    if (labels.empty()) throw std::invalid_argument("empty context");
    std::vector<std::size_t> indices;
    for (const auto& label : labels) {
      auto it = std::find(measurements_.begin(), measurements_.end(), label);
      if (it == measurements_.end()) {
        throw std::invalid_argument("context {" + join(labels) + "} mentions unknown measurement \"" + label + "\"");
      }
      indices.push_back(static_cast<std::size_t>(it - measurements_.begin()));
    }
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
      throw std::invalid_argument("context {" + join(labels) + "} repeats a measurement");
    }
    contexts_.push_back(std::move(indices));
  }
  std::sort(contexts_.begin(), contexts_.end());
  if (std::adjacent_find(contexts_.begin(), contexts_.end()) != contexts_.end()) {
    throw std::invalid_argument("duplicate context");
  }
  std::vector<bool> covered(measurements_.size(), false);
  for (const auto& ctx : contexts_) {
    for (auto i : ctx) covered[i] = true;
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) throw std::invalid_argument("measurement \"" + measurements_[i] + "\" is in no context");
  }
  // Fail early on scenarios whose enumerations cannot be indexed.
  (void)global_assignment_count();
}

std::size_t Scenario::measurement_index(const std::string& label) const {
  auto it = std::find(measurements_.begin(), measurements_.end(), label);
  if (it == measurements_.end()) throw std::out_of_range("unknown measurement \"" + label + "\"");
  return static_cast<std::size_t>(it - measurements_.begin());
}

std::size_t Scenario::outcome_index(const std::string& label) const {
  auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
  if (it == outcomes_.end()) throw std::out_of_range("unknown outcome \"" + label + "\"");
  return static_cast<std::size_t>(it - outcomes_.begin());
}

std::size_t Scenario::context_index(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> indices;
  indices.reserve(labels.size());
  for (const auto& label : labels) indices.push_back(measurement_index(label));
  return context_index(std::move(indices));
}

std::size_t Scenario::context_index(std::vector<std::size_t> measurement_indices) const {
  std::sort(measurement_indices.begin(), measurement_indices.end());
  auto it = std::lower_bound(contexts_.begin(), contexts_.end(), measurement_indices);
  if (it == contexts_.end() || *it != measurement_indices) throw std::out_of_range("no such context");
  return static_cast<std::size_t>(it - contexts_.begin());
}

std::size_t Scenario::context_size(std::size_t c) const { return assignment_count(outcomes_.size(), context(c).size()); }

std::size_t Scenario::global_assignment_count() const {
  return assignment_count(outcomes_.size(), measurements_.size());
}

std::string Scenario::context_key(std::size_t c) const {
  std::vector<std::string> labels;
  for (auto i : context(c)) labels.push_back(measurements_[i]);
  return join(labels);
}

Scenario make_scenario(std::vector<std::string> measurements, std::vector<std::vector<std::string>> contexts,
                       std::vector<std::string> outcomes) {
  return Scenario(std::move(measurements), std::move(contexts), std::move(outcomes));
}

Scenario bell_scenario(std::size_t parties, std::size_t settings, std::size_t outcomes) {
  if (parties == 0 || settings == 0 || outcomes == 0) {
    throw std::invalid_argument("bell_scenario: parameters must be positive");
  }
  auto party_name = [parties](std::size_t p) {
    if (parties <= 26) return std::string(1, static_cast<char>('A' + p));
    return "P" + std::to_string(p);
  };
  std::vector<std::string> measurements;
  for (std::size_t p = 0; p < parties; ++p) {
    for (std::size_t s = 0; s < settings; ++s) measurements.push_back(party_name(p) + std::to_string(s));
  }
  std::vector<std::string> outcome_labels;
  for (std::size_t o = 0; o < outcomes; ++o) outcome_labels.push_back(std::to_string(o));

  std::vector<std::vector<std::string>> contexts;
  const std::size_t count = assignment_count(settings, parties);
  for (std::size_t i = 0; i < count; ++i) {
    const Assignment choice = decode_assignment(i, settings, parties);
    std::vector<std::string> ctx;
    for (std::size_t p = 0; p < parties; ++p) ctx.push_back(measurements[p * settings + choice[p]]);
    contexts.push_back(std::move(ctx));
  }
  return Scenario(std::move(measurements), std::move(contexts), std::move(outcome_labels));
}

std::size_t assignment_count(std::size_t outcomes, std::size_t domain_size) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < domain_size; ++i) {
    if (outcomes != 0 && count > std::numeric_limits<std::size_t>::max() / outcomes) {
      throw std::overflow_error("assignment count overflows");
    }
    count *= outcomes;
  }
  return count;
}

Assignment decode_assignment(std::size_t index, std::size_t outcomes, std::size_t domain_size) {
  Assignment out(domain_size);
  for (std::size_t i = 0; i < domain_size; ++i) {
    out[i] = index % outcomes;
    index /= outcomes;
  }
  return out;
}

std::size_t encode_assignment(const Assignment& assignment, std::size_t outcomes) {
  std::size_t index = 0;
  for (std::size_t i = assignment.size(); i-- > 0;) {
    if (assignment[i] >= outcomes) throw std::out_of_range("outcome index out of range");
    index = index * outcomes + assignment[i];
  }
  return index;
}

std::vector<Assignment> global_assignments(const Scenario& scenario) {
  const std::size_t n = scenario.global_assignment_count();
  std::vector<Assignment> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(decode_assignment(i, scenario.outcome_count(), scenario.measurement_count()));
  }
  return out;
}

Assignment restrict_assignment(const Assignment& global, const std::vector<std::size_t>& measurements) {
  Assignment out;
  out.reserve(measurements.size());
  for (auto m : measurements) out.push_back(global.at(m));
  return out;
}

Assignment restrict_assignment(const Assignment& assignment, const std::vector<std::size_t>& domain,
                               const std::vector<std::size_t>& subset) {
  Assignment out;
  out.reserve(subset.size());
  for (auto m : subset) {
    auto it = std::find(domain.begin(), domain.end(), m);
    if (it == domain.end()) throw std::invalid_argument("restriction target is not a subset of the domain");
    out.push_back(assignment.at(static_cast<std::size_t>(it - domain.begin())));
  }
  return out;
}

LocalIndex::LocalIndex(const Scenario& scenario) : outcomes_(scenario.outcome_count()) {
  offsets_.push_back(0);
  for (std::size_t c = 0; c < scenario.context_count(); ++c) {
    context_sizes_.push_back(scenario.context(c).size());
    size_ += scenario.context_size(c);
    offsets_.push_back(size_);
  }
}

std::size_t LocalIndex::index_of(const LocalAssignment& local) const {
  if (local.context >= context_sizes_.size()) throw std::out_of_range("context index out of range");
  if (local.outcomes.size() != context_sizes_[local.context]) {
    throw std::invalid_argument("local assignment does not match its context");
  }
  return offsets_[local.context] + encode_assignment(local.outcomes, outcomes_);
}

std::size_t LocalIndex::index_of(std::size_t context, std::size_t local_offset) const {
  if (local_offset >= context_size(context)) throw std::out_of_range("local assignment offset out of range");
  return offsets_[context] + local_offset;
}

std::size_t LocalIndex::context_of(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("local index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

LocalAssignment LocalIndex::at(std::size_t index) const {
  const std::size_t c = context_of(index);
  return {c, decode_assignment(index - offsets_[c], outcomes_, context_sizes_[c])};
}

LocalIndex local_index(const Scenario& scenario) { return LocalIndex(scenario); }

}  // namespace ctxkit
