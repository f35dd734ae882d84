#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ctxkit/quantum.hpp"
#include "support.hpp"

namespace ctxkit {
namespace {

constexpr double pi = std::numbers::pi;

std::vector<PlanarMeasurement> chsh_settings(double a, double a2, double b, double b2) {
  return {{0, "a", a}, {0, "a'", a2}, {1, "b", b}, {1, "b'", b2}};
}

TEST(Quantum, BellStateReproducesTable) {
  const ApproxModel approx = born_model(bell_state(), chsh_settings(0, pi / 3, 0, pi / 3));
  EXPECT_EQ(approx.scenario, testing::chsh_scenario());
  EXPECT_NEAR(approx.tables[0](0), 0.5, 1e-12);
  EXPECT_NEAR(approx.tables[1](0), 0.375, 1e-12);
  EXPECT_NEAR(approx.tables[3](0), 0.125, 1e-12);
  EXPECT_EQ(rationalize(approx, 8), testing::bell_table());
}

TEST(Quantum, AllZeroAnglesArePerfectlyCorrelated) {
  const EmpiricalModel e = rationalize(born_model(bell_state(), chsh_settings(0, 0, 0, 0)), 8);
  for (const auto& row : e.tables()) EXPECT_EQ(row, testing::vec({"1/2", "0", "0", "1/2"}));
}

TEST(Quantum, ProductStateGivesProductDistributions) {
  StateVector zero_zero = StateVector::Zero(4);
  zero_zero(0) = 1;
  testing::Rng rng(71);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int trial = 0; trial < 20; ++trial) {
    const ApproxModel m = born_model(zero_zero, chsh_settings(angle(rng), angle(rng), angle(rng), angle(rng)));
    for (const auto& row : m.tables) {
      for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(row(i), 0.25, 1e-12);
    }
  }
}

TEST(Quantum, BellCorrelationIdentity) {
  testing::Rng rng(72);
  std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = angle(rng), a2 = angle(rng), b = angle(rng), b2 = angle(rng);
    const ApproxModel m = born_model(bell_state(), chsh_settings(a, a2, b, b2));
    const double pairs[4][2] = {{a, b}, {a, b2}, {a2, b}, {a2, b2}};
    for (int c = 0; c < 4; ++c) {
      const double equal = m.tables[static_cast<std::size_t>(c)](0) + m.tables[static_cast<std::size_t>(c)](3);
      EXPECT_NEAR(equal, (1 + std::cos(pairs[c][0] + pairs[c][1])) / 2, 1e-9);
    }
  }
}

TEST(Quantum, RandomStatesAreNormalisedAndNoSignalling) {
  testing::Rng rng(73);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t parties = trial % 2 == 0 ? 2 : 3;
    StateVector psi(1 << parties);
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = {gauss(rng), gauss(rng)};
    psi.normalize();
    std::vector<PlanarMeasurement> settings;
    for (std::size_t p = 0; p < parties; ++p) {
      for (int k = 0; k < 2; ++k) settings.push_back({p, std::string(1, static_cast<char>('a' + p)) + std::to_string(k), angle(rng)});
    }
    const ApproxModel m = born_model(psi, settings);
    const Scenario& s = m.scenario;
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      EXPECT_NEAR(m.tables[c].sum(), 1.0, 1e-12);
      EXPECT_GE(m.tables[c].minCoeff(), 0.0);
    }
    // marginal of each measurement agrees across contexts
    for (std::size_t x = 0; x < s.measurement_count(); ++x) {
      std::optional<double> first;
      for (std::size_t c = 0; c < s.context_count(); ++c) {
        const auto& ctx = s.context(c);
        const auto pos = std::find(ctx.begin(), ctx.end(), x) - ctx.begin();
        if (static_cast<std::size_t>(pos) == ctx.size()) continue;
        double p0 = 0;
        for (Eigen::Index i = 0; i < m.tables[c].size(); ++i) {
          if (((static_cast<std::size_t>(i) >> pos) & 1U) == 0) p0 += m.tables[c](i);
        }
        if (!first) first = p0;
        EXPECT_NEAR(p0, *first, 1e-12);
      }
    }
  }
}

TEST(Quantum, RejectsBadStates) {
  EXPECT_THROW(born_model(StateVector::Zero(4), chsh_settings(0, 0, 0, 0)), std::invalid_argument);
  StateVector three = StateVector::Zero(8);
  three(0) = 1;
  EXPECT_THROW(born_model(three, chsh_settings(0, 0, 0, 0)), std::invalid_argument);
  EXPECT_THROW(born_model(bell_state(), {{0, "a", 0}}), std::invalid_argument);
}

TEST(Quantum, RationalizeRounding) {
  const Scenario single = make_scenario({"x"}, {{"x"}}, {"0", "1"});
  Eigen::VectorXd thirds(2);
  thirds << 1.0 / 3, 2.0 / 3;
  EXPECT_EQ(rationalize({single, {thirds}}, 2).table(0), testing::vec({"1/2", "1/2"}));
  EXPECT_EQ(rationalize({single, {thirds}}, 3).table(0), testing::vec({"1/3", "2/3"}));

  const EmpiricalModel exact = testing::hardy_model();
  ApproxModel approx{exact.scenario(), {}};
  for (const auto& row : exact.tables()) {
    Eigen::VectorXd d(row.size());
    for (Eigen::Index i = 0; i < row.size(); ++i) d(i) = row(i).to_double();
    approx.tables.push_back(d);
  }
  EXPECT_EQ(rationalize(approx, 20), exact);
  EXPECT_EQ(rationalize(approx, 1000), exact);
  EXPECT_THROW(rationalize(approx, 0), std::invalid_argument);
}

TEST(Quantum, RationalizeReportsSignalling) {
  const Scenario s = make_scenario({"a", "b", "b'"}, {{"a", "b"}, {"a", "b'"}}, {"0", "1"});
  Eigen::VectorXd r1(4), r2(4);
  // p(a=0) = 1/2 in both rows; with D = 3 the first row keeps 1/2 and the
  // second ends at 1/3 after absorbing its residue.
  r1 << 0.45, 0.05, 0.05, 0.45;
  r2 << 0.2, 0.3, 0.3, 0.2;
  EXPECT_NO_THROW(rationalize({s, {r1, r2}}, 20));
  EXPECT_THROW(rationalize({s, {r1, r2}}, 3), CompatibilityError);
}

}  // namespace
}  // namespace ctxkit
