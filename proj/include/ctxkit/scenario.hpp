#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ctxkit {

/// Outcome indices, one per measurement of some ordered domain.
using Assignment = std::vector<std::size_t>;

/// A measurement scenario: measurements X, contexts M and a shared outcome
/// set O.
///
/// Measurements and outcomes keep their given order. Each context is stored
/// as increasing measurement indices and contexts are sorted
/// lexicographically. Assignments over an ordered domain are enumerated in
/// mixed-radix order with the first measurement as the fastest digit, which
/// matches the usual (0,0),(1,0),(0,1),(1,1) column order of Bell tables.
class Scenario {
 public:
  Scenario(std::vector<std::string> measurements, std::vector<std::vector<std::string>> contexts,
           std::vector<std::string> outcomes);

  const std::vector<std::string>& measurements() const { return measurements_; }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<std::vector<std::size_t>>& contexts() const { return contexts_; }

  std::size_t measurement_count() const { return measurements_.size(); }
  std::size_t outcome_count() const { return outcomes_.size(); }
  std::size_t context_count() const { return contexts_.size(); }
  const std::vector<std::size_t>& context(std::size_t c) const { return contexts_.at(c); }

  /// Index of a measurement label; throws std::out_of_range when unknown.
  std::size_t measurement_index(const std::string& label) const;
  /// Index of an outcome label; throws std::out_of_range when unknown.
  std::size_t outcome_index(const std::string& label) const;
  /// Index of the context with exactly these measurements (any order), or
  /// throws std::out_of_range.
  std::size_t context_index(const std::vector<std::string>& labels) const;
  std::size_t context_index(std::vector<std::size_t> measurement_indices) const;

  /// Number of local assignments |O|^|C| of context c.
  std::size_t context_size(std::size_t c) const;
  /// |O|^|X|.
  std::size_t global_assignment_count() const;

  /// Measurement labels of context c joined by ','.
  std::string context_key(std::size_t c) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::vector<std::string> measurements_;
  std::vector<std::vector<std::size_t>> contexts_;
  std::vector<std::string> outcomes_;
};

/// Scenario with validation of raw labels. Same as the constructor; provided
/// for symmetry with the other factories.
Scenario make_scenario(std::vector<std::string> measurements, std::vector<std::vector<std::string>> contexts,
                       std::vector<std::string> outcomes);

/// (n, k, o) Bell scenario: parties A, B, ... with settings A0..A{k-1}, and
/// one context for every choice of one setting per party.
Scenario bell_scenario(std::size_t parties, std::size_t settings, std::size_t outcomes);

/// Number of assignments |O|^|domain|; throws std::overflow_error if the
/// count does not fit.
std::size_t assignment_count(std::size_t outcomes, std::size_t domain_size);

/// The i-th assignment of a domain of the given size in mixed-radix order.
Assignment decode_assignment(std::size_t index, std::size_t outcomes, std::size_t domain_size);
std::size_t encode_assignment(const Assignment& assignment, std::size_t outcomes);

/// All |O|^|X| global assignments in canonical order.
std::vector<Assignment> global_assignments(const Scenario& scenario);

/// g restricted to the measurements listed (in that order).
Assignment restrict_assignment(const Assignment& global, const std::vector<std::size_t>& measurements);

/// Restriction of an assignment over `domain` to the sub-domain `subset`.
/// Both lists hold measurement indices; subset must be contained in domain.
Assignment restrict_assignment(const Assignment& assignment, const std::vector<std::size_t>& domain,
                               const std::vector<std::size_t>& subset);

/// A context together with one of its local assignments.
struct LocalAssignment {
  std::size_t context = 0;
  Assignment outcomes;

  friend bool operator==(const LocalAssignment&, const LocalAssignment&) = default;
};

/// Bijection between {0, ..., m-1} and the pairs <C, s>, context-major.
class LocalIndex {
 public:
  explicit LocalIndex(const Scenario& scenario);

  std::size_t size() const { return size_; }
  std::size_t context_offset(std::size_t c) const { return offsets_.at(c); }
  std::size_t context_size(std::size_t c) const { return offsets_.at(c + 1) - offsets_.at(c); }
  std::size_t context_count() const { return offsets_.size() - 1; }

  std::size_t index_of(const LocalAssignment& local) const;
  std::size_t index_of(std::size_t context, std::size_t local_offset) const;
  LocalAssignment at(std::size_t index) const;
  /// Context that owns a row of the vectorised model.
  std::size_t context_of(std::size_t index) const;

 private:
  std::size_t outcomes_;
  std::vector<std::size_t> context_sizes_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

LocalIndex local_index(const Scenario& scenario);

}  // namespace ctxkit
