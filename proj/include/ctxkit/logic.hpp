#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ctxkit/empirical_model.hpp"
#include "ctxkit/inequality.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// Propositional formula over atoms "measurement = outcome".
///
/// Immutable; copies share structure.
class Formula {
 public:
  enum class Kind { constant, atom, negation, conjunction, disjunction, implication, equivalence, exclusive_or };

  static Formula constant(bool value);
  static Formula atom(std::string variable, std::string value = "0");

  Kind kind() const;
  bool constant_value() const;
  const std::string& variable() const;
  const std::string& value() const;
  const Formula& left() const;   ///< operand of negation, or left operand
  const Formula& right() const;  ///< right operand of a binary connective

  /// Variables in order of first appearance.
  std::vector<std::string> variables() const;

  /// Infix rendering that parse_formula reads back.
  std::string str() const;

  friend Formula operator!(const Formula& f);
  friend Formula operator&(const Formula& a, const Formula& b);
  friend Formula operator|(const Formula& a, const Formula& b);
  friend Formula operator^(const Formula& a, const Formula& b);
  friend Formula implies(const Formula& a, const Formula& b);
  friend Formula iff(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Kind kind, const Formula& a, const Formula& b);

  std::shared_ptr<const Node> node_;
};

/// Parses the text syntax: atoms "a=0" or "a" (short for a=0), constants
/// "true"/"false", and by increasing precedence "<->", "->" (right
/// associative), "|", "(+)", "&", "!", with parentheses. Throws
/// std::invalid_argument with the offending position.
Formula parse_formula(std::string_view text);

/// Measurement label -> outcome label.
using TruthAssignment = std::map<std::string, std::string>;

/// Throws std::out_of_range on a variable missing from t.
bool evaluate(const Formula& f, const TruthAssignment& t);

/// Largest number of formulas (with multiplicity) satisfied by a single
/// assignment of outcomes to all their variables, by exhaustive search.
/// Throws std::invalid_argument on an empty family.
std::size_t k_consistency(const std::vector<Formula>& formulas,
                          const std::vector<std::string>& outcomes = {"0", "1"});

/// A formula to be read in one context of a scenario.
struct ContextualizedFormula {
  Formula formula;
  std::vector<std::string> context;
};

/// Index of cf's context; throws std::invalid_argument when the context is
/// not in the scenario or the formula mentions measurements outside it.
std::size_t resolve_context(const Scenario& scenario, const ContextualizedFormula& cf);

/// sum of e_C(s) over the local assignments s satisfying the formula.
Rational event_probability(const EmpiricalModel& model, const ContextualizedFormula& cf);

/// Coefficient of <C,s> is the number of formulas read in C that s
/// satisfies; the bound is the family's K. Valid for every non-contextual
/// model but may be trivial (bound equal to the algebraic bound).
LinearInequality logical_bell_inequality(const Scenario& scenario, const std::vector<ContextualizedFormula>& family);

struct LogicalBellReport {
  Rational probability_sum;
  std::size_t k = 0;
  Rational violation;  ///< max(0, sum - K)
};

LogicalBellReport evaluate_logical_bell(const EmpiricalModel& model, const std::vector<ContextualizedFormula>& family);

/// max(0, sum_i p(phi_i) - K).
Rational check_logical_bell(const EmpiricalModel& model, const std::vector<ContextualizedFormula>& family);

}  // namespace ctxkit
