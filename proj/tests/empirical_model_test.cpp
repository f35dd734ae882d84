#include <gtest/gtest.h>

#include "ctxkit/empirical_model.hpp"
#include "support.hpp"

namespace ctxkit {
namespace {

using testing::q;
using testing::vec;

TEST(EmpiricalModel, BellTableIsCompatible) {
  const EmpiricalModel e = testing::bell_table();
  EXPECT_TRUE(check_distributions(e).empty());
  EXPECT_TRUE(check_compatibility(e).ok());
  EXPECT_EQ(e.probability(3, {0, 1}), q("3/8"));
  EXPECT_EQ(e.probability(0, {1, 1}), q("1/2"));
}

TEST(EmpiricalModel, RejectsBadTables) {
  const Scenario s = testing::chsh_scenario();
  const auto u = vec({"1/4", "1/4", "1/4", "1/4"});
  EXPECT_THROW(make_model(s, {u, u, u}), DistributionError);
  EXPECT_THROW(make_model(s, {u, u, u, vec({"1/4", "1/4", "1/4"})}), DistributionError);
  EXPECT_THROW(make_model(s, {u, u, u, vec({"1/2", "1/4", "1/4", "1/4"})}), DistributionError);
  EXPECT_THROW(make_model(s, {u, u, u, vec({"-1/4", "3/4", "1/4", "1/4"})}), DistributionError);
}

TEST(EmpiricalModel, SignallingIsReportedPerPair) {
  const Scenario s = testing::chsh_scenario();
  const auto bell = testing::bell_table();
  std::vector<RationalVector> tables = bell.tables();
  tables[1] = vec({"1/2", "0", "1/2", "0"});
  EXPECT_THROW(make_model(s, tables), CompatibilityError);
  const EmpiricalModel e = make_model(s, tables, ModelCheck::skip_compatibility);
  const auto report = check_compatibility(e);
  ASSERT_EQ(report.violations.size(), 1U);
  const auto& v = report.violations.front();
  EXPECT_EQ(v.first_context, 0U);
  EXPECT_EQ(v.second_context, 1U);
  EXPECT_EQ(v.overlap, (std::vector<std::size_t>{0}));
  ASSERT_EQ(v.mismatches.size(), 2U);
  EXPECT_EQ(v.mismatches[0].first, q("1/2"));
  EXPECT_EQ(v.mismatches[0].second, q("1"));
  try {
    make_model(s, tables);
  } catch (const CompatibilityError& err) {
    EXPECT_EQ(err.report().violations.size(), 1U);
  }
}

TEST(EmpiricalModel, MixingReproducesBellTable) {
  const EmpiricalModel mixed = mix({testing::bell_noncontextual_part(), testing::pr_box()}, {q("3/4"), q("1/4")});
  EXPECT_EQ(mixed, testing::bell_table());
  EXPECT_THROW(mix({testing::pr_box()}, {q("1/2")}), std::invalid_argument);
  EXPECT_THROW(mix({testing::pr_box(), testing::pr_box()}, {q("3/2"), q("-1/2")}), std::invalid_argument);
}

TEST(EmpiricalModel, MarginalizeExample) {
  const Distribution d = testing::bell_table().distribution(3);
  const Distribution a = marginalize(d, {1});
  EXPECT_EQ(a.probabilities, vec({"1/2", "1/2"}));
  const Distribution swapped = marginalize(d, {3, 1});
  EXPECT_EQ(swapped.probabilities, vec({"1/8", "3/8", "3/8", "1/8"}));
  EXPECT_EQ(marginalize(d, {}).probabilities, vec({"1"}));
  EXPECT_THROW(marginalize(d, {0}), std::invalid_argument);
}

TEST(EmpiricalModel, MarginalizationIsLinear) {
  testing::Rng rng(5);
  const Scenario s = make_scenario({"x", "y", "z"}, {{"x", "y", "z"}}, {"0", "1", "2"});
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_distribution(rng, 27);
    const auto r = testing::random_distribution(rng, 27);
    const Rational lambda(std::uniform_int_distribution<int>(0, 10)(rng), 10);
    Distribution dp{{0, 1, 2}, 3, RationalVector(27)}, dr = dp, dm = dp;
    for (int i = 0; i < 27; ++i) {
      dp.probabilities(i) = p[i];
      dr.probabilities(i) = r[i];
      dm.probabilities(i) = lambda * p[i] + (Rational(1) - lambda) * r[i];
    }
    for (const std::vector<std::size_t>& sub : {std::vector<std::size_t>{0}, {2, 0}, {1, 2}}) {
      const RationalVector expected =
          lambda * marginalize(dp, sub).probabilities + (Rational(1) - lambda) * marginalize(dr, sub).probabilities;
      EXPECT_EQ(marginalize(dm, sub).probabilities, expected);
      // marginalizing in two steps agrees with one step
      EXPECT_EQ(marginalize(marginalize(dp, {0, 1, 2}), sub).probabilities, marginalize(dp, sub).probabilities);
    }
  }
}

TEST(EmpiricalModel, IncidenceMatrixColumnsAreDeterministicModels) {
  for (const Scenario& s : {testing::chsh_scenario(), bell_scenario(3, 2, 2), bell_scenario(2, 2, 3)}) {
    const RationalMatrix m = incidence_matrix(s);
    const auto globals = global_assignments(s);
    ASSERT_EQ(static_cast<std::size_t>(m.cols()), globals.size());
    for (std::size_t g = 0; g < globals.size(); ++g) {
      const RationalVector column = m.col(static_cast<Eigen::Index>(g));
      EXPECT_EQ(column, vectorize(deterministic_model(s, globals[g])));
      Rational ones(0);
      for (Eigen::Index i = 0; i < column.size(); ++i) {
        EXPECT_TRUE(column(i) == Rational(0) || column(i) == Rational(1));
        ones += column(i);
      }
      EXPECT_EQ(ones, Rational(static_cast<long>(s.context_count())));
    }
  }
}

TEST(EmpiricalModel, IncidenceMatrixMatchesBitOracle) {
  testing::Rng rng(6);
  const Scenario s = testing::chsh_scenario();
  const RationalMatrix m = incidence_matrix(s);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = testing::random_distribution(rng, 16);
    RationalVector dv(16);
    for (int g = 0; g < 16; ++g) dv(g) = d[g];
    EXPECT_EQ(RationalVector(m * dv), testing::oracle_model_vector(s, d));
  }
}

TEST(EmpiricalModel, VectorizeRoundTrip) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const EmpiricalModel e = testing::random_ns_model(rng);
    EXPECT_TRUE(check_compatibility(e).ok());
    EXPECT_EQ(model_from_vector(e.scenario(), vectorize(e)), e);
  }
  EXPECT_THROW(model_from_vector(testing::chsh_scenario(), vec({"1"})), std::invalid_argument);
}

TEST(EmpiricalModel, DeterministicModelsAreCompatible) {
  const Scenario s = bell_scenario(3, 2, 2);
  for (const auto& g : global_assignments(s)) {
    const EmpiricalModel e = deterministic_model(s, g);
    EXPECT_TRUE(check_distributions(e).empty());
    EXPECT_TRUE(check_compatibility(e).ok());
  }
}

}  // namespace
}  // namespace ctxkit
