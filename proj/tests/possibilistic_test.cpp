#include <gtest/gtest.h>

#include "ctxkit/fraction.hpp"
#include "ctxkit/possibilistic.hpp"
#include "support.hpp"

namespace ctxkit {
namespace {

TEST(Possibilistic, SupportExamples) {
  const SupportModel bell = support_of(testing::bell_table());
  EXPECT_EQ(bell.supports[0], (std::vector<bool>{true, false, false, true}));
  EXPECT_TRUE(bell.supported(0, {1, 1}));
  EXPECT_FALSE(bell.supported(0, {1, 0}));
  const SupportModel pr = support_of(testing::pr_box());
  EXPECT_EQ(pr.supports[3], (std::vector<bool>{false, true, true, false}));
  for (const auto& row : support_of(testing::uniform_model()).supports) {
    EXPECT_EQ(row, (std::vector<bool>{true, true, true, true}));
  }
}

TEST(Possibilistic, ConsistentGlobalsExamples) {
  const Scenario s = testing::chsh_scenario();
  for (const auto& g : global_assignments(s)) {
    EXPECT_EQ(consistent_globals(support_of(deterministic_model(s, g))), (std::vector<Assignment>{g}));
  }
  EXPECT_TRUE(consistent_globals(support_of(testing::pr_box())).empty());
  EXPECT_EQ(consistent_globals(support_of(testing::uniform_model())).size(), 16U);
}

TEST(Possibilistic, Classification) {
  const auto bell = analyse(support_of(testing::bell_table()));
  EXPECT_EQ(bell.classification, PossibilisticClass::noncontextual);
  EXPECT_EQ(bell.consistent.size(), 8U);
  EXPECT_TRUE(bell.unexplained.empty());
  const auto hardy = analyse(support_of(testing::hardy_model()));
  EXPECT_EQ(hardy.classification, PossibilisticClass::possibilistically_contextual);
  ASSERT_EQ(hardy.unexplained.size(), 1U);
  EXPECT_EQ(hardy.unexplained[0], (LocalAssignment{0, {0, 0}}));
  EXPECT_EQ(classify(support_of(testing::pr_box())), PossibilisticClass::strongly_contextual);
  EXPECT_STREQ(to_string(PossibilisticClass::noncontextual), "non-contextual-possibilistically");
  EXPECT_STREQ(to_string(PossibilisticClass::possibilistically_contextual), "possibilistically-contextual");
  EXPECT_STREQ(to_string(PossibilisticClass::strongly_contextual), "strongly-contextual");
}

TEST(Possibilistic, RejectsEmptySupport) {
  SupportModel sm = support_of(testing::bell_table());
  sm.supports[2].assign(4, false);
  EXPECT_THROW(validate(sm), std::invalid_argument);
}

TEST(Possibilistic, NoncontextualSupportsHaveCheckedWitnesses) {
  testing::Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const EmpiricalModel e = testing::random_ns_model(rng);
    const SupportModel sm = support_of(e);
    const auto report = analyse(sm);
    const Scenario& s = e.scenario();
    for (const auto& g : report.consistent) {
      for (std::size_t c = 0; c < s.context_count(); ++c) {
        EXPECT_TRUE(sm.supported(c, restrict_assignment(g, s.context(c))));
      }
    }
    const LocalIndex idx(s);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const LocalAssignment local = idx.at(i);
      if (!sm.supported(local.context, local.outcomes)) continue;
      bool witnessed = false;
      for (const auto& g : report.consistent) {
        witnessed = witnessed || restrict_assignment(g, s.context(local.context)) == local.outcomes;
      }
      const bool listed =
          std::find(report.unexplained.begin(), report.unexplained.end(), local) != report.unexplained.end();
      EXPECT_NE(witnessed, listed);
    }
    if (report.classification == PossibilisticClass::noncontextual) {
      EXPECT_TRUE(report.unexplained.empty());
    }
    // a non-contextual model is never strongly contextual, and strong
    // contextuality forces ncf = 0
    if (membership_nc(e).member) {
      EXPECT_NE(report.classification, PossibilisticClass::strongly_contextual);
    }
    if (report.classification == PossibilisticClass::strongly_contextual) {
      EXPECT_EQ(noncontextual_fraction(e).ncf, Rational(0));
    }
  }
}

}  // namespace
}  // namespace ctxkit
