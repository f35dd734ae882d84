#include "ctxkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ctxkit::io {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream is(text);
  while (std::getline(is, part, sep)) out.push_back(part);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  if (text.empty()) out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

const Json& member(const Json& j, const char* key, const char* where) {
  if (!j.is_object()) throw InputError(std::string(where) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(where) + ": missing \"" + key + "\"");
  return *it;
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw InputError(what + ": expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

/// Resolves "a,b" to a context index and the permutation from key order
/// to context order.
struct ContextKey {
  std::size_t context;
  std::vector<std::size_t> measurements;  // in key order
};

ContextKey parse_context_key(const Scenario& s, const std::string& key) {
  ContextKey out{0, {}};
  for (const auto& label : split(key, ',')) {
    try {
      out.measurements.push_back(s.measurement_index(label));
    } catch (const std::out_of_range&) {
      throw InputError("unknown measurement \"" + label + "\" in context key \"" + key + "\"");
    }
  }
  try {
    out.context = s.context_index(out.measurements);
  } catch (const std::out_of_range&) {
    throw InputError("\"" + key + "\" is not a context of the scenario");
  }
  return out;
}

/// Offset within the context block of the assignment named by `key`,
/// whose outcomes are listed in the order of `key_measurements`.
std::size_t parse_assignment_key(const Scenario& s, std::size_t c, const std::vector<std::size_t>& key_measurements,
                                 const std::string& key) {
  const auto labels = split(key, ',');
  if (labels.size() != key_measurements.size()) {
    throw InputError("assignment \"" + key + "\" does not match context {" + s.context_key(c) + "}");
  }
  const auto& context = s.context(c);
  Assignment local(context.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::size_t outcome = 0;
    try {
      outcome = s.outcome_index(labels[i]);
    } catch (const std::out_of_range&) {
      throw InputError("unknown outcome \"" + labels[i] + "\" in assignment \"" + key + "\"");
    }
    const auto pos = static_cast<std::size_t>(std::find(context.begin(), context.end(), key_measurements[i]) - context.begin());
    local[pos] = outcome;
  }
  return encode_assignment(local, s.outcome_count());
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json load_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw InputError("expected a rational \"p/q\", got " + j.dump());
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

Json to_json(const Scenario& s) {
  Json contexts = Json::array();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    Json labels = Json::array();
    for (auto m : s.context(c)) labels.push_back(s.measurements()[m]);
    contexts.push_back(std::move(labels));
  }
  return Json{{"measurements", s.measurements()}, {"outcomes", s.outcomes()}, {"contexts", std::move(contexts)}};
}

Scenario scenario_from_json(const Json& j) {
  const auto measurements = string_list(member(j, "measurements", "scenario"), "scenario measurements");
  const auto outcomes = string_list(member(j, "outcomes", "scenario"), "scenario outcomes");
  const Json& raw = member(j, "contexts", "scenario");
  if (!raw.is_array()) throw InputError("scenario contexts: expected an array of arrays");
  std::vector<std::vector<std::string>> contexts;
  for (const auto& c : raw) contexts.push_back(string_list(c, "scenario context"));
  for (const auto* labels : {&measurements, &outcomes}) {
    for (const auto& l : *labels) {
      if (l.find_first_of(",|") != std::string::npos) throw InputError("label \"" + l + "\" contains ',' or '|'");
    }
  }
  try {
    return make_scenario(measurements, contexts, outcomes);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
}

std::string assignment_key(const Scenario& s, const Assignment& local) {
  std::vector<std::string> labels;
  for (auto o : local) labels.push_back(s.outcomes().at(o));
  return join(labels, ',');
}

Json to_json(const EmpiricalModel& e) {
  const auto& s = e.scenario();
  Json tables = Json::object();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    Json row = Json::object();
    for (std::size_t i = 0; i < s.context_size(c); ++i) {
      row[assignment_key(s, decode_assignment(i, s.outcome_count(), s.context(c).size()))] =
          to_json(e.table(c)(static_cast<Eigen::Index>(i)));
    }
    tables[s.context_key(c)] = std::move(row);
  }
  return Json{{"scenario", to_json(s)}, {"tables", std::move(tables)}};
}

EmpiricalModel model_from_json(const Json& j, const std::filesystem::path& base_dir, ModelCheck check) {
  const Json& raw_scenario = member(j, "scenario", "model");
  Scenario s = raw_scenario.is_string() ? scenario_from_json(load_file(base_dir / raw_scenario.get<std::string>()))
                                        : scenario_from_json(raw_scenario);
  const Json& raw_tables = member(j, "tables", "model");
  if (!raw_tables.is_object()) throw InputError("model tables: expected an object");

  std::vector<RationalVector> tables;
  std::vector<bool> present(s.context_count(), false);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    tables.push_back(RationalVector::Constant(static_cast<Eigen::Index>(s.context_size(c)), Rational(0)));
  }
  for (const auto& [key, row] : raw_tables.items()) {
    const ContextKey ck = parse_context_key(s, key);
    if (present[ck.context]) throw InputError("context {" + s.context_key(ck.context) + "} given twice");
    present[ck.context] = true;
    if (!row.is_object()) throw InputError("table \"" + key + "\": expected an object");
    for (const auto& [assignment, value] : row.items()) {
      const auto i = parse_assignment_key(s, ck.context, ck.measurements, assignment);
      tables[ck.context](static_cast<Eigen::Index>(i)) = rational_from_json(value);
    }
  }
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    if (!present[c]) throw DistributionError("missing table for context {" + s.context_key(c) + "}");
  }
  return EmpiricalModel(std::move(s), std::move(tables), check);
}

EmpiricalModel load_model(const std::filesystem::path& path, ModelCheck check) {
  return model_from_json(load_file(path), path.parent_path(), check);
}

Json inequality_to_json(const Scenario& s, const RationalVector& coefficients, const Rational& bound) {
  const LocalIndex index(s);
  Json coefs = Json::object();
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& a = coefficients(static_cast<Eigen::Index>(i));
    if (a.is_zero()) continue;
    const auto local = index.at(i);
    coefs[s.context_key(local.context) + "|" + assignment_key(s, local.outcomes)] = to_json(a);
  }
  return Json{{"coefficients", std::move(coefs)}, {"bound", to_json(bound)}};
}

Json to_json(const BellInequality& b) { return inequality_to_json(b.scenario(), b.coefficients(), b.bound()); }

LinearInequality inequality_from_json(const Scenario& s, const Json& j) {
  const LocalIndex index(s);
  LinearInequality out{RationalVector::Constant(static_cast<Eigen::Index>(index.size()), Rational(0)),
                       rational_from_json(member(j, "bound", "inequality"))};
  const Json& coefs = member(j, "coefficients", "inequality");
  if (!coefs.is_object()) throw InputError("inequality coefficients: expected an object");
  for (const auto& [key, value] : coefs.items()) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) throw InputError("coefficient key \"" + key + "\" lacks '|'");
    const ContextKey ck = parse_context_key(s, key.substr(0, bar));
    const auto i = parse_assignment_key(s, ck.context, ck.measurements, key.substr(bar + 1));
    out.coefficients(static_cast<Eigen::Index>(index.index_of(ck.context, i))) += rational_from_json(value);
  }
  return out;
}

std::vector<ContextualizedFormula> formulas_from_json(const Json& j) {
  const Json& list = j.is_object() ? member(j, "formulas", "formulas file") : j;
  if (!list.is_array()) throw InputError("formulas: expected an array");
  std::vector<ContextualizedFormula> out;
  for (const auto& item : list) {
    const Json& text = member(item, "formula", "formula entry");
    if (!text.is_string()) throw InputError("formula entry: \"formula\" must be a string");
    try {
      out.push_back({parse_formula(text.get<std::string>()),
                     string_list(member(item, "context", "formula entry"), "formula context")});
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (out.empty()) throw InputError("formulas: empty family");
  return out;
}

MembershipQuery membership_query_from_json(const Json& j) {
  MembershipQuery q;
  q.spec.events = string_list(member(j, "events", "membership query"), "events");
  const Json& formulas = member(j, "formulas", "membership query");
  if (!formulas.is_array()) throw InputError("membership query formulas: expected an array");
  for (const auto& f : formulas) {
    if (!f.is_string()) throw InputError("membership query formulas: expected strings");
    try {
      q.spec.formulas.push_back(parse_formula(f.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  const Json& vector = member(j, "vector", "membership query");
  if (!vector.is_array()) throw InputError("membership query vector: expected an array");
  q.vector = RationalVector(static_cast<Eigen::Index>(vector.size()));
  for (std::size_t i = 0; i < vector.size(); ++i) q.vector(static_cast<Eigen::Index>(i)) = rational_from_json(vector[i]);
  return q;
}

}  // namespace ctxkit::io
