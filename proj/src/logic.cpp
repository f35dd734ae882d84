#include "ctxkit/logic.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ctxkit {

struct Formula::Node {
  Kind kind;
  bool constant = false;
  std::string variable;
  std::string value;
  Formula left{nullptr};
  Formula right{nullptr};
};

Formula Formula::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->constant = value;
  return Formula(std::move(n));
}

Formula Formula::atom(std::string variable, std::string value) {
  if (variable.empty()) throw std::invalid_argument("atom needs a variable");
  auto n = std::make_shared<Node>();
  n->kind = Kind::atom;
  n->variable = std::move(variable);
  n->value = std::move(value);
  return Formula(std::move(n));
}

Formula Formula::binary(Kind kind, const Formula& a, const Formula& b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = a;
  n->right = b;
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::constant_value() const { return node_->constant; }
const std::string& Formula::variable() const { return node_->variable; }
const std::string& Formula::value() const { return node_->value; }
const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }

Formula operator!(const Formula& f) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::negation;
  n->left = f;
  return Formula(std::move(n));
}
Formula operator&(const Formula& a, const Formula& b) { return Formula::binary(Formula::Kind::conjunction, a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::binary(Formula::Kind::disjunction, a, b); }
Formula operator^(const Formula& a, const Formula& b) { return Formula::binary(Formula::Kind::exclusive_or, a, b); }
Formula implies(const Formula& a, const Formula& b) { return Formula::binary(Formula::Kind::implication, a, b); }
Formula iff(const Formula& a, const Formula& b) { return Formula::binary(Formula::Kind::equivalence, a, b); }

namespace {

void collect_variables(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::constant: return;
    case Formula::Kind::atom:
      if (std::find(out.begin(), out.end(), f.variable()) == out.end()) out.push_back(f.variable());
      return;
    case Formula::Kind::negation: collect_variables(f.left(), out); return;
    default:
      collect_variables(f.left(), out);
      collect_variables(f.right(), out);
  }
}

const char* symbol(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::conjunction: return " & ";
    case Formula::Kind::disjunction: return " | ";
    case Formula::Kind::implication: return " -> ";
    case Formula::Kind::equivalence: return " <-> ";
    case Formula::Kind::exclusive_or: return " (+) ";
    default: return "?";
  }
}

bool combine(Formula::Kind kind, bool a, bool b) {
  switch (kind) {
    case Formula::Kind::conjunction: return a && b;
    case Formula::Kind::disjunction: return a || b;
    case Formula::Kind::implication: return !a || b;
    case Formula::Kind::equivalence: return a == b;
    case Formula::Kind::exclusive_or: return a != b;
    default: throw std::logic_error("not a binary connective");
  }
}

// Recursive-descent parser. Precedence, loosest first: <->, ->, |, (+), &, !.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = equivalence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("formula \"" + std::string(text_) + "\": " + what + " at position " +
                                std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  static bool label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
  }

  std::string label() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && label_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a label");
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula equivalence() {
    Formula f = implication();
    while (accept("<->")) f = iff(f, implication());
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (accept("->")) return implies(f, implication());
    return f;
  }

  Formula disjunction() {
    Formula f = exclusive();
    while (accept("|")) f = f | exclusive();
    return f;
  }

  Formula exclusive() {
    Formula f = conjunction();
    while (accept("(+)")) f = f ^ conjunction();
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = f & unary();
    return f;
  }

  Formula unary() {
    if (accept("!")) return !unary();
    if (accept("(+)")) fail("operator without left operand");
    if (accept("(")) {
      Formula f = equivalence();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    std::string var = label();
    if (var == "true") return Formula::constant(true);
    if (var == "false") return Formula::constant(false);
    if (accept("=")) return Formula::atom(std::move(var), label());
    return Formula::atom(std::move(var), "0");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Formula compiled against a fixed variable order and outcome list, for the
// exhaustive enumerations.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const std::vector<std::string>& variables, const std::vector<std::string>& outcomes) {
    compile(f, variables, outcomes);
  }

  bool operator()(const Assignment& a) const {
    std::vector<bool> stack;
    stack.reserve(code_.size());
    for (const auto& op : code_) {
      switch (op.kind) {
        case Formula::Kind::constant: stack.push_back(op.constant); break;
        case Formula::Kind::atom: stack.push_back(op.outcome >= 0 && a[op.variable] == static_cast<std::size_t>(op.outcome)); break;
        case Formula::Kind::negation: stack.back() = !stack.back(); break;
        default: {
          const bool rhs = stack.back();
          stack.pop_back();
          stack.back() = combine(op.kind, stack.back(), rhs);
        }
      }
    }
    return stack.back();
  }

 private:
  struct Op {
    Formula::Kind kind;
    bool constant = false;
    std::size_t variable = 0;
    long outcome = -1;  // -1: value outside the outcome set, never true
  };

  void compile(const Formula& f, const std::vector<std::string>& variables, const std::vector<std::string>& outcomes) {
    switch (f.kind()) {
      case Formula::Kind::constant: code_.push_back({f.kind(), f.constant_value()}); return;
      case Formula::Kind::atom: {
        auto v = std::find(variables.begin(), variables.end(), f.variable());
        if (v == variables.end()) throw std::out_of_range("unbound variable \"" + f.variable() + "\"");
        auto o = std::find(outcomes.begin(), outcomes.end(), f.value());
        code_.push_back({f.kind(), false, static_cast<std::size_t>(v - variables.begin()),
                         o == outcomes.end() ? -1L : static_cast<long>(o - outcomes.begin())});
        return;
      }
      case Formula::Kind::negation:
        compile(f.left(), variables, outcomes);
        code_.push_back({f.kind()});
        return;
      default:
        compile(f.left(), variables, outcomes);
        compile(f.right(), variables, outcomes);
        code_.push_back({f.kind()});
    }
  }

  std::vector<Op> code_;
};

}  // namespace

std::vector<std::string> Formula::variables() const {
  std::vector<std::string> out;
  collect_variables(*this, out);
  return out;
}

std::string Formula::str() const {
  switch (kind()) {
    case Kind::constant: return constant_value() ? "true" : "false";
    case Kind::atom: return variable() + "=" + value();
    case Kind::negation: return "!" + left().str();
    default: return "(" + left().str() + symbol(kind()) + right().str() + ")";
  }
}

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

bool evaluate(const Formula& f, const TruthAssignment& t) {
  switch (f.kind()) {
    case Formula::Kind::constant: return f.constant_value();
    case Formula::Kind::atom: {
      auto it = t.find(f.variable());
      if (it == t.end()) throw std::out_of_range("unbound variable \"" + f.variable() + "\"");
      return it->second == f.value();
    }
    case Formula::Kind::negation: return !evaluate(f.left(), t);
    default: return combine(f.kind(), evaluate(f.left(), t), evaluate(f.right(), t));
  }
}

std::size_t k_consistency(const std::vector<Formula>& formulas, const std::vector<std::string>& outcomes) {
  if (formulas.empty()) throw std::invalid_argument("k_consistency: empty family");
  if (outcomes.empty()) throw std::invalid_argument("k_consistency: empty outcome set");
  std::vector<std::string> variables;
  for (const auto& f : formulas) collect_variables(f, variables);

  std::vector<CompiledFormula> compiled;
  compiled.reserve(formulas.size());
  for (const auto& f : formulas) compiled.emplace_back(f, variables, outcomes);

  const std::size_t total = assignment_count(outcomes.size(), variables.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < total && best < formulas.size(); ++i) {
    const Assignment a = decode_assignment(i, outcomes.size(), variables.size());
    std::size_t satisfied = 0;
    for (const auto& f : compiled) satisfied += f(a) ? 1 : 0;
    best = std::max(best, satisfied);
  }
  return best;
}

std::size_t resolve_context(const Scenario& scenario, const ContextualizedFormula& cf) {
  std::size_t c = 0;
  try {
    c = scenario.context_index(cf.context);
  } catch (const std::out_of_range&) {
    std::string key;
    for (const auto& m : cf.context) key += (key.empty() ? "" : ",") + m;
    throw std::invalid_argument("formula context {" + key + "} is not a context of the scenario");
  }
  for (const auto& v : cf.formula.variables()) {
    if (std::find(cf.context.begin(), cf.context.end(), v) == cf.context.end()) {
      throw std::invalid_argument("formula " + cf.formula.str() + " mentions \"" + v +
                                  "\" outside its declared context");
    }
  }
  return c;
}

namespace {

// Truth value of cf.formula on each local assignment of its context.
std::vector<bool> satisfying_pattern(const Scenario& scenario, std::size_t c, const Formula& f) {
  std::vector<std::string> labels;
  for (auto m : scenario.context(c)) labels.push_back(scenario.measurements()[m]);
  const CompiledFormula compiled(f, labels, scenario.outcomes());
  std::vector<bool> out(scenario.context_size(c));
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] = compiled(decode_assignment(s, scenario.outcome_count(), labels.size()));
  }
  return out;
}

}  // namespace

Rational event_probability(const EmpiricalModel& model, const ContextualizedFormula& cf) {
  const auto& scenario = model.scenario();
  const std::size_t c = resolve_context(scenario, cf);
  const auto pattern = satisfying_pattern(scenario, c, cf.formula);
  Rational p(0);
  for (std::size_t s = 0; s < pattern.size(); ++s) {
    if (pattern[s]) p += model.table(c)(static_cast<Eigen::Index>(s));
  }
  return p;
}

LinearInequality logical_bell_inequality(const Scenario& scenario, const std::vector<ContextualizedFormula>& family) {
  if (family.empty()) throw std::invalid_argument("logical_bell_inequality: empty family");
  const LocalIndex index(scenario);
  LinearInequality out{RationalVector::Constant(static_cast<Eigen::Index>(index.size()), Rational(0)), Rational(0)};
  std::vector<Formula> formulas;
  for (const auto& cf : family) {
    const std::size_t c = resolve_context(scenario, cf);
    const auto pattern = satisfying_pattern(scenario, c, cf.formula);
    for (std::size_t s = 0; s < pattern.size(); ++s) {
      if (pattern[s]) out.coefficients(static_cast<Eigen::Index>(index.index_of(c, s))) += 1;
    }
    formulas.push_back(cf.formula);
  }
  out.bound = Rational(static_cast<long long>(k_consistency(formulas, scenario.outcomes())));
  return out;
}

LogicalBellReport evaluate_logical_bell(const EmpiricalModel& model, const std::vector<ContextualizedFormula>& family) {
  if (family.empty()) throw std::invalid_argument("evaluate_logical_bell: empty family");
  LogicalBellReport report;
  std::vector<Formula> formulas;
  for (const auto& cf : family) {
    report.probability_sum += event_probability(model, cf);
    formulas.push_back(cf.formula);
  }
  report.k = k_consistency(formulas, model.scenario().outcomes());
  const Rational excess = report.probability_sum - Rational(static_cast<long long>(report.k));
  report.violation = excess.sign() > 0 ? excess : Rational(0);
  return report;
}

Rational check_logical_bell(const EmpiricalModel& model, const std::vector<ContextualizedFormula>& family) {
  return evaluate_logical_bell(model, family).violation;
}

}  // namespace ctxkit
