#include "ctxkit/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "ctxkit/fraction.hpp"
#include "ctxkit/io.hpp"
#include "ctxkit/logic.hpp"
#include "ctxkit/polytope.hpp"
#include "ctxkit/possibilistic.hpp"
#include "ctxkit/quantum.hpp"

namespace ctxkit::cli {

using io::Json;

namespace {

/// A failed check whose report has already been produced.
struct CheckFailed {};

class Report {
 public:
  Report(std::string command, const std::vector<std::string>& args) {
    json_["command"] = std::move(command);
    json_["arguments"] = args;
    json_["inputs"] = Json::array();
    json_["result"] = Json::object();
  }

  /// Reads a file and records its digest.
  std::string input(const std::string& path) {
    std::string bytes = io::read_file(path);
    json_["inputs"].push_back(Json{{"path", path}, {"sha256", sha256_hex(bytes)}});
    return bytes;
  }

  Json& result() { return json_["result"]; }
  Json& json() { return json_; }

 private:
  Json json_;
};

Json parse_json(const std::string& bytes, const std::string& path) {
  try {
    return Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw io::InputError(path + ": " + e.what());
  }
}

EmpiricalModel read_model(Report& report, const std::string& path, ModelCheck check) {
  return io::model_from_json(parse_json(report.input(path), path), std::filesystem::path(path).parent_path(), check);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::InputError("cannot write " + path);
  out << text;
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

std::string local_label(const Scenario& s, const LocalIndex& index, std::size_t i) {
  const auto local = index.at(i);
  return s.context_key(local.context) + "|" + io::assignment_key(s, local.outcomes);
}

/// "+1 a,b|0,0 -1 a,b'|1,1 ... <= 0"
std::string inequality_text(const Scenario& s, const RationalVector& a, const Rational& bound) {
  const LocalIndex index(s);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& c = a(static_cast<Eigen::Index>(i));
    if (c.is_zero()) continue;
    if (!first) os << ' ';
    first = false;
    os << (c.sign() > 0 ? "+" : "") << c << ' ' << local_label(s, index, i);
  }
  if (first) os << '0';
  os << " <= " << bound;
  return os.str();
}

Json vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(io::to_json(v(i)));
  return out;
}

std::string global_text(const Scenario& s, const Assignment& g) {
  std::string out;
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (m > 0) out += ' ';
    out += s.measurements()[m] + "=" + s.outcomes()[g[m]];
  }
  return out;
}

Json global_json(const Scenario& s, const Assignment& g) {
  Json out = Json::object();
  for (std::size_t m = 0; m < g.size(); ++m) out[s.measurements()[m]] = s.outcomes()[g[m]];
  return out;
}

struct Options {
  bool json = false;
  bool timing = false;
};

// validate ------------------------------------------------------------------

void cmd_validate(Report& report, const std::string& path, std::ostream& text) {
  const EmpiricalModel e = read_model(report, path, ModelCheck::none);
  const auto& s = e.scenario();
  const auto problems = check_distributions(e);
  Json& r = report.result();
  r["distribution_errors"] = problems;
  r["violations"] = Json::array();
  for (const auto& p : problems) text << "distribution error: " << p << '\n';
  if (problems.empty()) {
    const auto compat = check_compatibility(e);
    for (const auto& v : compat.violations) {
      std::vector<std::string> overlap;
      for (auto m : v.overlap) overlap.push_back(s.measurements()[m]);
      Json mismatches = Json::array();
      text << "no-signalling violation: {" << s.context_key(v.first_context) << "} vs {"
           << s.context_key(v.second_context) << "} on {";
      for (std::size_t i = 0; i < overlap.size(); ++i) text << (i ? "," : "") << overlap[i];
      text << "}\n";
      for (const auto& mm : v.mismatches) {
        const std::string key = io::assignment_key(s, mm.assignment);
        text << "  " << key << ": " << mm.first << " vs " << mm.second << '\n';
        mismatches.push_back(
            Json{{"assignment", key}, {"first", io::to_json(mm.first)}, {"second", io::to_json(mm.second)}});
      }
      r["violations"].push_back(Json{{"contexts", {s.context_key(v.first_context), s.context_key(v.second_context)}},
                                     {"overlap", overlap},
                                     {"mismatches", std::move(mismatches)}});
    }
  }
  const bool valid = problems.empty() && r["violations"].empty();
  r["valid"] = valid;
  if (valid) text << "valid: " << s.context_count() << " contexts, distributions and no-signalling hold\n";
  if (!valid) throw CheckFailed{};
}

// fraction ------------------------------------------------------------------

struct FractionArgs {
  std::string model;
  bool witness = false;
  std::string witness_out;
  bool decompose = false;
  std::string decompose_out;
};

void cmd_fraction(Report& report, const FractionArgs& args, std::ostream& text) {
  const EmpiricalModel e = read_model(report, args.model, ModelCheck::full);
  const auto& s = e.scenario();
  const FractionResult f = noncontextual_fraction(e);
  Json& r = report.result();
  r["ncf"] = io::to_json(f.ncf);
  r["cf"] = io::to_json(f.cf);
  r["member"] = f.cf.is_zero();
  Json weights = Json::object();
  for (Eigen::Index g = 0; g < f.weights.size(); ++g) {
    if (f.weights(g).is_zero()) continue;
    weights[global_text(s, decode_assignment(static_cast<std::size_t>(g), s.outcome_count(), s.measurement_count()))] =
        io::to_json(f.weights(g));
  }
  r["weights"] = std::move(weights);
  text << "non-contextual fraction: " << f.ncf << '\n' << "contextual fraction:     " << f.cf << '\n';

  if (args.witness || !args.witness_out.empty()) {
    if (f.cf.is_zero()) {
      r["witness"] = nullptr;
      text << "witness: none (model is non-contextual)\n";
    } else {
      const BellInequality w = witness_inequality(e, f);
      Json wj = io::to_json(w);
      wj["algebraic_bound"] = io::to_json(algebraic_bound(s, w.coefficients()));
      wj["normalized_violation"] = io::to_json(normalized_violation(w, e));
      r["witness"] = wj;
      text << "witness: " << inequality_text(s, w.coefficients(), w.bound()) << '\n'
           << "  normalized violation: " << normalized_violation(w, e) << '\n';
      if (!args.witness_out.empty()) write_file(args.witness_out, pretty(io::to_json(w)));
    }
  }
  if (args.decompose || !args.decompose_out.empty()) {
    const Decomposition d = decompose(e, f);
    Json dj = Json::object();
    dj["noncontextual"] = d.noncontextual ? io::to_json(*d.noncontextual) : Json(nullptr);
    dj["strongly_contextual"] = d.strongly_contextual ? io::to_json(*d.strongly_contextual) : Json(nullptr);
    r["decomposition"] = dj;
    const auto show = [&](const char* name, const std::optional<EmpiricalModel>& part) {
      text << name << ":";
      if (!part) {
        text << " absent\n";
        return;
      }
      text << '\n';
      for (std::size_t c = 0; c < s.context_count(); ++c) {
        text << "  " << std::left << std::setw(12) << s.context_key(c);
        for (Eigen::Index i = 0; i < part->table(c).size(); ++i) text << ' ' << std::setw(6) << part->table(c)(i);
        text << '\n';
      }
    };
    show("e^NC", d.noncontextual);
    show("e^SC", d.strongly_contextual);
    if (!args.decompose_out.empty()) {
      if (d.noncontextual) write_file(args.decompose_out + "-nc.json", pretty(io::to_json(*d.noncontextual)));
      if (d.strongly_contextual) write_file(args.decompose_out + "-sc.json", pretty(io::to_json(*d.strongly_contextual)));
    }
  }
}

// facets --------------------------------------------------------------------

void cmd_facets(Report& report, const std::string& path, std::size_t limit, const std::string& out_path,
                std::ostream& text) {
  const Scenario s = io::scenario_from_json(parse_json(report.input(path), path));
  const NcPolytope p = nc_polytope_facets(s, limit);
  Json facets = Json::array();
  Json& r = report.result();
  std::size_t nontrivial = 0;
  text << "affine hull: " << p.equalities.size() << " equalities\n";
  text << "facets: " << p.facets.size() << " (" << p.facets.size() - p.nontrivial_facets().size()
       << " positivity)\n";
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    Json fj = io::inequality_to_json(s, p.facets[i].coefficients, p.facets[i].bound);
    fj["kind"] = p.positivity[i] ? "positivity" : "nontrivial";
    facets.push_back(std::move(fj));
    if (p.positivity[i]) continue;
    ++nontrivial;
    text << std::right << std::setw(4) << nontrivial << "  "
         << inequality_text(s, p.facets[i].coefficients, p.facets[i].bound) << '\n';
  }
  Json equalities = Json::array();
  for (const auto& eq : p.equalities) equalities.push_back(io::inequality_to_json(s, eq.coefficients, eq.bound));
  r["equalities"] = std::move(equalities);
  r["facet_count"] = p.facets.size();
  r["nontrivial_count"] = nontrivial;
  r["facets"] = facets;
  if (!out_path.empty()) write_file(out_path, pretty(facets));
}

// logical -------------------------------------------------------------------

void cmd_logical(Report& report, const std::string& model_path, const std::string& formulas_path,
                 std::ostream& text) {
  const EmpiricalModel e = read_model(report, model_path, ModelCheck::full);
  const auto family = io::formulas_from_json(parse_json(report.input(formulas_path), formulas_path));
  for (const auto& cf : family) {
    try {
      resolve_context(e.scenario(), cf);
    } catch (const std::invalid_argument& ex) {
      throw io::InputError(ex.what());
    }
  }
  const LogicalBellReport lb = evaluate_logical_bell(e, family);
  Json& r = report.result();
  Json probabilities = Json::array();
  for (const auto& cf : family) {
    const Rational p = event_probability(e, cf);
    probabilities.push_back(Json{{"formula", cf.formula.str()}, {"context", cf.context}, {"probability", io::to_json(p)}});
    text << "p(" << cf.formula.str() << ") = " << p << '\n';
  }
  r["probabilities"] = std::move(probabilities);
  r["probability_sum"] = io::to_json(lb.probability_sum);
  r["k"] = lb.k;
  r["violation"] = io::to_json(lb.violation);
  const LinearInequality ineq = logical_bell_inequality(e.scenario(), family);
  r["inequality"] = io::inequality_to_json(e.scenario(), ineq.coefficients, ineq.bound);
  const Rational norm = algebraic_bound(e.scenario(), ineq.coefficients);
  r["algebraic_bound"] = io::to_json(norm);
  text << "sum = " << lb.probability_sum << ", K = " << lb.k << ", violation = " << lb.violation << '\n';
  if (ineq.bound < norm) {
    const Rational nv = normalized_violation(BellInequality(e.scenario(), ineq), e);
    r["normalized_violation"] = io::to_json(nv);
    text << "normalized violation = " << nv << " (algebraic bound " << norm << ")\n";
  } else {
    r["normalized_violation"] = nullptr;
    text << "inequality is trivial (K equals the algebraic bound " << norm << ")\n";
  }
}

// possibilistic -------------------------------------------------------------

void cmd_possibilistic(Report& report, const std::string& path, std::ostream& text) {
  const EmpiricalModel e = read_model(report, path, ModelCheck::skip_compatibility);
  const auto& s = e.scenario();
  const PossibilisticReport p = analyse(support_of(e));
  Json& r = report.result();
  r["classification"] = to_string(p.classification);
  Json consistent = Json::array();
  for (const auto& g : p.consistent) consistent.push_back(global_json(s, g));
  r["consistent_globals"] = std::move(consistent);
  Json unexplained = Json::array();
  const LocalIndex index(s);
  for (const auto& u : p.unexplained) unexplained.push_back(local_label(s, index, index.index_of(u)));
  r["unexplained"] = unexplained;
  text << "classification: " << to_string(p.classification) << '\n'
       << "consistent global assignments: " << p.consistent.size() << " of " << s.global_assignment_count() << '\n';
  for (const auto& u : unexplained) text << "  no global extension: " << u.get<std::string>() << '\n';
}

// quantum -------------------------------------------------------------------

struct QuantumArgs {
  std::string state = "bell";
  std::vector<std::string> amplitudes;
  std::vector<std::string> settings;
  long long max_denominator = 1000;
  std::string out;
};

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw io::InputError("bad " + what + " \"" + text + "\"");
  return value;
}

void cmd_quantum(Report& report, const QuantumArgs& args, std::ostream& text) {
  StateVector state;
  if (!args.amplitudes.empty()) {
    state = StateVector(static_cast<Eigen::Index>(args.amplitudes.size()));
    for (std::size_t i = 0; i < args.amplitudes.size(); ++i) {
      const auto& a = args.amplitudes[i];
      const auto comma = a.find(',');
      const double re = parse_double(a.substr(0, comma), "amplitude");
      const double im = comma == std::string::npos ? 0.0 : parse_double(a.substr(comma + 1), "amplitude");
      state(static_cast<Eigen::Index>(i)) = {re, im};
    }
  } else if (args.state == "bell") {
    state = bell_state();
  } else {
    throw io::InputError("unknown state preset \"" + args.state + "\"");
  }
  if (args.settings.empty()) throw io::InputError("at least one --setting party:label:angle is required");
  std::vector<PlanarMeasurement> settings;
  for (const auto& spec : args.settings) {
    const auto first = spec.find(':');
    const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
    if (second == std::string::npos) throw io::InputError("setting \"" + spec + "\" is not party:label:angle");
    const double party = parse_double(spec.substr(0, first), "party");
    if (party < 0 || party != std::floor(party)) throw io::InputError("bad party in \"" + spec + "\"");
    settings.push_back({static_cast<std::size_t>(party), spec.substr(first + 1, second - first - 1),
                        parse_angle(spec.substr(second + 1))});
  }
  Json& r = report.result();
  const ApproxModel approx = [&] {
    try {
      return born_model(state, settings);
    } catch (const std::invalid_argument& e) {
      throw io::InputError(e.what());
    }
  }();
  const EmpiricalModel e = rationalize(approx, Rational::Integer(args.max_denominator));
  const Json model = io::to_json(e);
  r["model"] = model;
  if (!args.out.empty()) write_file(args.out, pretty(model));
  const auto& s = e.scenario();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    text << std::left << std::setw(12) << s.context_key(c);
    for (Eigen::Index i = 0; i < e.table(c).size(); ++i) text << ' ' << std::setw(6) << e.table(c)(i);
    text << '\n';
  }
}

// membership ----------------------------------------------------------------

void cmd_membership(Report& report, const std::string& path, std::ostream& text) {
  const io::MembershipQuery q = io::membership_query_from_json(parse_json(report.input(path), path));
  const CorrelationMembership m = [&] {
    try {
      return correlation_membership(q.spec, q.vector);
    } catch (const std::invalid_argument& e) {
      throw io::InputError(e.what());
    }
  }();
  Json& r = report.result();
  r["member"] = m.member;
  if (m.member) {
    r["weights"] = vector_json(m.weights);
    text << "member: yes\n";
    for (Eigen::Index i = 0; i < m.weights.size(); ++i) {
      if (!m.weights(i).is_zero()) text << "  vertex " << i << ": " << m.weights(i) << '\n';
    }
  } else {
    r["hyperplane"] = Json{{"normal", vector_json(m.normal)}, {"offset", io::to_json(m.offset)},
                           {"value", io::to_json(dot(m.normal, q.vector))}};
    text << "member: no\n  separating hyperplane: h.v <= " << m.offset << " on all vertices, h.v = "
         << dot(m.normal, q.vector) << '\n';
    text << "  h =";
    for (Eigen::Index i = 0; i < m.normal.size(); ++i) text << ' ' << m.normal(i);
    text << '\n';
  }
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

double parse_angle(const std::string& text) {
  const auto pi = text.find("pi");
  if (pi == std::string::npos) return parse_double(text, "angle");
  std::string prefix = text.substr(0, pi);
  const std::string suffix = text.substr(pi + 2);
  if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
  double value = std::numbers::pi;
  if (prefix == "-") {
    value = -value;
  } else if (!prefix.empty() && prefix != "+") {
    value *= parse_double(prefix, "angle");
  }
  if (!suffix.empty()) {
    if (suffix.front() != '/') throw io::InputError("bad angle \"" + text + "\"");
    value /= parse_double(suffix.substr(1), "angle");
  }
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact contextuality analysis of empirical models", "ctxkit"};
  app.require_subcommand(1);
  Options opt;
  const auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "Emit a JSON report instead of text");
    sub->add_flag("--timing", opt.timing, "Include wall-clock time in the output");
  };

  std::string model_path, second_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check distributions and no-signalling");
  validate_cmd->add_option("model", model_path, "Model JSON file")->required();
  common(validate_cmd);

  FractionArgs fraction_args;
  auto* fraction_cmd = app.add_subcommand("fraction", "Non-contextual fraction by linear programming");
  fraction_cmd->add_option("model", fraction_args.model, "Model JSON file")->required();
  fraction_cmd->add_flag("--witness", fraction_args.witness, "Report a witnessing Bell inequality");
  fraction_cmd->add_option("--witness-out", fraction_args.witness_out, "Write the witness inequality here");
  fraction_cmd->add_flag("--decompose", fraction_args.decompose, "Report e = ncf e^NC + cf e^SC");
  fraction_cmd->add_option("--decompose-out", fraction_args.decompose_out,
                           "Write PREFIX-nc.json and PREFIX-sc.json");
  common(fraction_cmd);

  std::size_t limit = default_row_limit;
  std::string facets_out;
  auto* facets_cmd = app.add_subcommand("facets", "Facets of the non-contextual polytope");
  facets_cmd->add_option("scenario", model_path, "Scenario JSON file")->required();
  facets_cmd->add_option("--limit", limit, "Abort when an elimination step exceeds this many rows");
  facets_cmd->add_option("--out", facets_out, "Write the facet list here");
  common(facets_cmd);

  auto* logical_cmd = app.add_subcommand("logical", "Logical Bell inequality of a formula family");
  logical_cmd->add_option("model", model_path, "Model JSON file")->required();
  logical_cmd->add_option("formulas", second_path, "Formulas JSON file")->required();
  common(logical_cmd);

  auto* possibilistic_cmd = app.add_subcommand("possibilistic", "Support-level contextuality");
  possibilistic_cmd->add_option("model", model_path, "Model JSON file")->required();
  common(possibilistic_cmd);

  QuantumArgs quantum_args;
  auto* quantum_cmd = app.add_subcommand("quantum", "Model from a pure state and planar qubit measurements");
  quantum_cmd->add_option("--state", quantum_args.state, "State preset (bell)");
  quantum_cmd->add_option("--amplitude", quantum_args.amplitudes, "Amplitude re,im; repeat for each basis state");
  quantum_cmd->add_option("--setting", quantum_args.settings, "party:label:angle; repeat per setting");
  quantum_cmd->add_option("--max-den", quantum_args.max_denominator, "Largest denominator after rationalising")
      ->check(CLI::PositiveNumber);
  quantum_cmd->add_option("--out", quantum_args.out, "Write the model JSON here");
  common(quantum_cmd);

  auto* membership_cmd = app.add_subcommand("membership", "Correlation polytope membership");
  membership_cmd->add_option("query", model_path, "Query JSON file")->required();
  common(membership_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Report report(chosen->get_name(), args);
  std::ostringstream text;
  const auto start = std::chrono::steady_clock::now();
  int code = ok;
  std::string error_kind, error_message;
  try {
    if (chosen == validate_cmd) cmd_validate(report, model_path, text);
    if (chosen == fraction_cmd) cmd_fraction(report, fraction_args, text);
    if (chosen == facets_cmd) cmd_facets(report, model_path, limit, facets_out, text);
    if (chosen == logical_cmd) cmd_logical(report, model_path, second_path, text);
    if (chosen == possibilistic_cmd) cmd_possibilistic(report, model_path, text);
    if (chosen == quantum_cmd) cmd_quantum(report, quantum_args, text);
    if (chosen == membership_cmd) cmd_membership(report, model_path, text);
  } catch (const CheckFailed&) {
    code = failure;
  } catch (const io::InputError& e) {
    code = input_error;
    error_kind = "input";
    error_message = e.what();
  } catch (const CompatibilityError& e) {
    code = failure;
    error_kind = "compatibility";
    error_message = e.what();
  } catch (const DistributionError& e) {
    code = failure;
    error_kind = "distribution";
    error_message = e.what();
  } catch (const ResourceLimitExceeded& e) {
    code = resource_limit;
    error_kind = "resource-limit";
    error_message = e.what();
  } catch (const std::exception& e) {
    code = failure;
    error_kind = "internal";
    error_message = e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!error_kind.empty()) {
    err << "ctxkit " << chosen->get_name() << ": " << error_message << '\n';
    report.json().erase("result");
    report.json()["error"] = Json{{"kind", error_kind}, {"message", error_message}};
  }
  if (opt.timing) report.json()["timing"] = Json{{"seconds", seconds}};
  if (opt.json) {
    out << pretty(report.json());
  } else {
    out << text.str();
    if (opt.timing) out << "time: " << seconds << " s\n";
  }
  return code;
}

}  // namespace ctxkit::cli
