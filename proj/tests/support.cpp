#include "support.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace ctxkit::testing {

Rational q(const char* text) { return Rational::parse(text); }

RationalVector vec(std::initializer_list<const char*> entries) {
  RationalVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const char* e : entries) v(i++) = q(e);
  return v;
}

std::string data_path(const std::string& name) { return std::string(CTXKIT_DATA_DIR) + "/" + name; }

Scenario chsh_scenario() {
  return make_scenario({"a", "a'", "b", "b'"}, {{"a", "b"}, {"a", "b'"}, {"a'", "b"}, {"a'", "b'"}}, {"0", "1"});
}

EmpiricalModel bell_table() {
  return make_model(chsh_scenario(), {vec({"1/2", "0", "0", "1/2"}), vec({"3/8", "1/8", "1/8", "3/8"}),
                                      vec({"3/8", "1/8", "1/8", "3/8"}), vec({"1/8", "3/8", "3/8", "1/8"})});
}

EmpiricalModel pr_box() { return pr_variant(0, 0, 0); }

EmpiricalModel hardy_model() {
  return make_model(chsh_scenario(), {vec({"1/4", "1/10", "1/10", "11/20"}), vec({"0", "11/20", "7/20", "1/10"}),
                                      vec({"0", "7/20", "11/20", "1/10"}), vec({"1/10", "9/20", "9/20", "0"})});
}

EmpiricalModel uniform_model() {
  const auto u = vec({"1/4", "1/4", "1/4", "1/4"});
  return make_model(chsh_scenario(), {u, u, u, u});
}

EmpiricalModel bell_noncontextual_part() {
  return make_model(chsh_scenario(), {vec({"1/2", "0", "0", "1/2"}), vec({"1/3", "1/6", "1/6", "1/3"}),
                                      vec({"1/3", "1/6", "1/6", "1/3"}), vec({"1/6", "1/3", "1/3", "1/6"})});
}

std::vector<ContextualizedFormula> bell_formulas() {
  return {{parse_formula("a <-> b"), {"a", "b"}},
          {parse_formula("a <-> b'"), {"a", "b'"}},
          {parse_formula("a' <-> b"), {"a'", "b"}},
          {parse_formula("a' (+) b'"), {"a'", "b'"}}};
}

EmpiricalModel pr_variant(int alpha, int beta, int gamma) {
  // Contexts in order {a,b}, {a,b'}, {a',b}, {a',b'}: (x, y) = (0,0), (0,1), (1,0), (1,1).
  const int xs[] = {0, 0, 1, 1};
  const int ys[] = {0, 1, 0, 1};
  std::vector<RationalVector> tables;
  for (int c = 0; c < 4; ++c) {
    const int target = (xs[c] * ys[c]) ^ (alpha * xs[c]) ^ (beta * ys[c]) ^ gamma;
    RationalVector row(4);
    for (int s = 0; s < 4; ++s) {
      const int a = s & 1, b = (s >> 1) & 1;
      row(s) = (a ^ b) == target ? Rational(1, 2) : Rational(0);
    }
    tables.push_back(row);
  }
  return make_model(chsh_scenario(), tables);
}

std::vector<Rational> random_distribution(Rng& rng, std::size_t n, double zero_chance, int max_weight) {
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::bernoulli_distribution zero(zero_chance);
  std::vector<long long> raw(n);
  long long total = 0;
  for (auto& w : raw) {
    w = zero(rng) ? 0 : weight(rng);
    total += w;
  }
  if (total == 0) {
    raw[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (auto w : raw) out.emplace_back(Rational::Integer(w), Rational::Integer(total));
  return out;
}

RationalVector oracle_model_vector(const Scenario& s, const std::vector<Rational>& d) {
  if (s.outcome_count() != 2) throw std::invalid_argument("oracle handles binary scenarios only");
  std::vector<RationalVector> tables;
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    tables.push_back(RationalVector::Constant(static_cast<Eigen::Index>(std::size_t{1} << s.context(c).size()), Rational(0)));
  }
  for (std::size_t g = 0; g < d.size(); ++g) {
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      std::size_t local = 0;
      const auto& ctx = s.context(c);
      for (std::size_t i = 0; i < ctx.size(); ++i) local |= ((g >> ctx[i]) & 1U) << i;
      tables[c](static_cast<Eigen::Index>(local)) += d[g];
    }
  }
  RationalVector out(0);
  for (const auto& t : tables) {
    RationalVector joined(out.size() + t.size());
    joined << out, t;
    out = joined;
  }
  return out;
}

EmpiricalModel random_ns_model(Rng& rng, double local_chance) {
  const Scenario s = chsh_scenario();
  std::vector<EmpiricalModel> local, boxes;
  for (std::size_t g = 0; g < 16; ++g) local.push_back(deterministic_model(s, decode_assignment(g, 2, 4)));
  const EmpiricalModel local_part = mix(local, random_distribution(rng, local.size(), 0.6));
  if (std::bernoulli_distribution(local_chance)(rng)) return local_part;
  // A sparse mixture of PR boxes, so that the boxes do not average out.
  for (int v = 0; v < 8; ++v) boxes.push_back(pr_variant(v & 1, (v >> 1) & 1, (v >> 2) & 1));
  const EmpiricalModel box_part = mix(boxes, random_distribution(rng, boxes.size(), 0.8));
  const Rational lambda(std::uniform_int_distribution<int>(0, 12)(rng), 12);
  return mix({box_part, local_part}, {lambda, Rational(1) - lambda});
}

EmpiricalModel random_nc_model(Rng& rng, const Scenario& s) {
  const auto d = random_distribution(rng, s.global_assignment_count());
  return model_from_vector(s, oracle_model_vector(s, d));
}

Formula random_formula(Rng& rng, const std::vector<std::string>& variables, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  const int choice = pick(rng);
  if (choice <= 1) {
    const auto& var = variables[std::uniform_int_distribution<std::size_t>(0, variables.size() - 1)(rng)];
    return Formula::atom(var, choice == 0 ? "0" : "1");
  }
  if (choice == 2) return !random_formula(rng, variables, depth - 1);
  const Formula l = random_formula(rng, variables, depth - 1);
  const Formula r = random_formula(rng, variables, depth - 1);
  switch (choice) {
    case 3: return l & r;
    case 4: return l | r;
    case 5: return implies(l, r);
    case 6: return iff(l, r);
    default: return l ^ r;
  }
}

Rational oracle_deterministic_max(const Scenario& s, const RationalVector& a) {
  std::optional<Rational> best;
  for (std::size_t g = 0; g < (std::size_t{1} << s.measurement_count()); ++g) {
    std::vector<Rational> d(std::size_t{1} << s.measurement_count(), Rational(0));
    d[g] = 1;
    const Rational value = dot(a, oracle_model_vector(s, d));
    if (!best || value > *best) best = value;
  }
  return *best;
}

std::vector<Rational> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return {};
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

bool brute_force_lp(const lp::Problem<Rational>& p, Rational& best) {
  const auto q = static_cast<std::size_t>(p.constraints.cols());
  const auto r = static_cast<std::size_t>(p.constraints.rows());
  // All constraints as rows: the LP rows, then -x_j <= 0.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<bool> equality;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> row(q);
    for (std::size_t j = 0; j < q; ++j) row[j] = p.constraints(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    rows.push_back(row);
    rhs.push_back(p.rhs(static_cast<Eigen::Index>(i)));
    equality.push_back(p.senses[i] == lp::RowSense::equal);
  }
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<Rational> row(q, Rational(0));
    row[j] = -1;
    rows.push_back(row);
    rhs.push_back(0);
    equality.push_back(false);
  }
  const std::size_t total = rows.size();
  bool found = false;
  // Every subset of q rows; equalities are enforced by the feasibility check.
  std::vector<bool> chosen(total, false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(std::min(q, total)), true);
  std::sort(chosen.begin(), chosen.end());
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < total; ++i) {
      if (chosen[i]) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
    }
    const auto x = solve_square(a, b);
    if (x.empty()) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < total && feasible; ++i) {
      Rational lhs(0);
      for (std::size_t j = 0; j < q; ++j) lhs += rows[i][j] * x[j];
      feasible = equality[i] ? lhs == rhs[i] : lhs <= rhs[i];
    }
    if (!feasible) continue;
    Rational value(0);
    for (std::size_t j = 0; j < q; ++j) value += p.objective(static_cast<Eigen::Index>(j)) * x[j];
    if (!found || value > best) best = value;
    found = true;
  } while (std::next_permutation(chosen.begin(), chosen.end()));
  return found;
}

lp::Problem<Rational> random_bounded_lp(Rng& rng, int variables, int rows) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> rhs(-4, 12);
  std::uniform_int_distribution<int> den(1, 4);
  lp::Problem<Rational> p;
  p.objective = RationalVector(variables);
  for (int j = 0; j < variables; ++j) p.objective(j) = Rational(coef(rng), den(rng));
  p.constraints = RationalMatrix::Constant(rows + variables, variables, Rational(0));
  p.rhs = RationalVector(rows + variables);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < variables; ++j) {
      const int c = coef(rng);
      if (c != 0 && std::bernoulli_distribution(0.8)(rng)) p.constraints(i, j) = Rational(c, den(rng));
    }
    p.rhs(i) = Rational(rhs(rng), den(rng));
    p.senses.push_back(std::bernoulli_distribution(0.15)(rng) ? lp::RowSense::equal : lp::RowSense::less_equal);
  }
  for (int j = 0; j < variables; ++j) {
    p.constraints(rows + j, j) = 1;
    p.rhs(rows + j) = 10;
    p.senses.push_back(lp::RowSense::less_equal);
  }
  return p;
}

}  // namespace ctxkit::testing
