#pragma once

// Fixtures, random generators and brute-force oracles shared by the tests.
// Oracles here avoid the library code paths they are used to check.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "ctxkit/empirical_model.hpp"
#include "ctxkit/logic.hpp"
#include "ctxkit/lp.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit::testing {

using Rng = std::mt19937_64;

Rational q(const char* text);
RationalVector vec(std::initializer_list<const char*> entries);

std::string data_path(const std::string& name);

/// X = (a, a', b, b'), contexts {a,b}, {a,b'}, {a',b}, {a',b'}, O = {0, 1}.
Scenario chsh_scenario();

EmpiricalModel bell_table();
EmpiricalModel pr_box();
EmpiricalModel hardy_model();
EmpiricalModel uniform_model();
/// Expected e^NC of the Bell table.
EmpiricalModel bell_noncontextual_part();
/// The four formulas picking out the correlated cells of the Bell table.
std::vector<ContextualizedFormula> bell_formulas();

/// PR box variant: outcomes with a xor b = x y xor alpha x xor beta y xor
/// gamma get 1/2, where x (y) is 1 for a' (b').
EmpiricalModel pr_variant(int alpha, int beta, int gamma);

/// Non-negative rational weights summing to 1; roughly `zero_chance` of
/// them are zero (at least one is positive).
std::vector<Rational> random_distribution(Rng& rng, std::size_t n, double zero_chance = 0.3, int max_weight = 12);

/// Model vector sum_g d_g delta^g for binary scenarios, computed directly
/// from bits of g (measurement k has outcome bit k).
RationalVector oracle_model_vector(const Scenario& s, const std::vector<Rational>& d);

/// Random no-signalling (2,2,2) model: a mixture of deterministic models
/// and PR boxes. With probability local_chance no PR box takes part.
EmpiricalModel random_ns_model(Rng& rng, double local_chance = 0.3);

/// Random non-contextual model on a binary scenario.
EmpiricalModel random_nc_model(Rng& rng, const Scenario& s);

/// Random formula over the given variables (atoms a=0 / a=1).
Formula random_formula(Rng& rng, const std::vector<std::string>& variables, int depth);

/// a . v over the values of every global assignment, computed from bits.
Rational oracle_deterministic_max(const Scenario& s, const RationalVector& a);

/// Exact solution of a square system, or empty when singular.
std::vector<Rational> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

/// Optimum of an LP by enumerating the basic feasible solutions. Returns
/// false when the feasible set is empty; requires a bounded feasible set.
bool brute_force_lp(const lp::Problem<Rational>& p, Rational& best);

/// Random bounded LP in q variables: random rows, box rows x_i <= U and
/// occasionally an equality.
lp::Problem<Rational> random_bounded_lp(Rng& rng, int variables, int rows);

}  // namespace ctxkit::testing
