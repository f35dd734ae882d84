#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctxkit/empirical_model.hpp"
#include "ctxkit/inequality.hpp"
#include "ctxkit/logic.hpp"
#include "ctxkit/polytope.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit::io {

using Json = nlohmann::ordered_json;

/// Malformed or unreadable input: bad JSON, wrong shapes, bad labels.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json load_file(const std::filesystem::path& path);
/// Exact bytes of a file; throws InputError when unreadable.
std::string read_file(const std::filesystem::path& path);

Json to_json(const Rational& r);
/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const Json& j);

Json to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

/// Tables keyed by context key and assignment key; every entry is written.
Json to_json(const EmpiricalModel& e);
/// "scenario" may be an object or a path relative to base_dir. Missing
/// table entries are 0. `check` as for make_model; validation failures
/// surface as DistributionError / CompatibilityError, not InputError.
EmpiricalModel model_from_json(const Json& j, const std::filesystem::path& base_dir = {},
                               ModelCheck check = ModelCheck::full);
EmpiricalModel load_model(const std::filesystem::path& path, ModelCheck check = ModelCheck::full);

/// {"coefficients": {"<context-key>|<assignment-key>": "p/q"}, "bound": "p/q"};
/// zero coefficients are omitted.
Json inequality_to_json(const Scenario& s, const RationalVector& coefficients, const Rational& bound);
Json to_json(const BellInequality& b);
LinearInequality inequality_from_json(const Scenario& s, const Json& j);

/// A JSON array, or an object with a "formulas" array, of
/// {"context": [...], "formula": "..."}.
std::vector<ContextualizedFormula> formulas_from_json(const Json& j);

/// {"events": [...], "formulas": ["..."], "vector": ["p/q", ...]}.
struct MembershipQuery {
  CorrelationPolytopeSpec spec;
  RationalVector vector;
};
MembershipQuery membership_query_from_json(const Json& j);

/// Key of a local assignment: outcome labels joined by ','.
std::string assignment_key(const Scenario& s, const Assignment& local);

}  // namespace ctxkit::io
