#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace geu;

namespace {

std::size_t cases_for(const std::string& name) {
  if (name == "thm2" || name == "thm2-nonuniform" || name == "thm3") return 6;
  return 10;
}

}  // namespace

class SuiteRun : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteRun, SmallRunIsClean) {
  const auto& suite = find_suite(GetParam());
  auto rep = run_suite(suite, 7, cases_for(suite.name), 1);
  EXPECT_EQ(rep.passed + rep.failed, cases_for(suite.name));
  if (suite.expected_failures) {
    EXPECT_GT(rep.passed, 0u);
    EXPECT_FALSE(rep.first_witness.empty());
  } else {
    EXPECT_TRUE(rep.ok()) << rep.first_failure;
    EXPECT_FALSE(rep.shrunk.has_value());
  }
}

INSTANTIATE_TEST_SUITE_P(All, SuiteRun,
                         ::testing::Values("eu-geu", "maximin-rep", "regret-rep", "mmeu-rep", "thm2",
                                           "thm2-nonuniform", "thm3", "prop-a3", "choquet-core",
                                           "respects-utility", "lift-lottery", "flatten", "ceu-uniformity"),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (auto& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

TEST(Fuzzing, RegistryHasEverySuite) {
  EXPECT_EQ(suite_registry().size(), 13u);
  EXPECT_THROW(find_suite("nope"), Error);
}

TEST(Fuzzing, CeuWitnessesNameActs) {
  const auto& suite = find_suite("ceu-uniformity");
  std::size_t found = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    auto r = suite.run(case_seed(5, i), suite.caps);
    if (!r.ok) continue;
    ++found;
    EXPECT_EQ(r.detail.rfind("a1=a", 0), 0u) << r.detail;
  }
  EXPECT_GT(found, 0u);
}

TEST(Fuzzing, ReportDoesNotDependOnThreads) {
  const auto& suite = find_suite("choquet-core");
  auto one = run_suite(suite, 11, 8, 1);
  auto three = run_suite(suite, 11, 8, 3);
  EXPECT_EQ(one.passed, three.passed);
  EXPECT_EQ(one.failed, three.failed);
  EXPECT_EQ(one.first_failing_seed, three.first_failing_seed);
}

TEST(Fuzzing, FailuresAreReportedAndShrunk) {
  Suite broken{"broken", false,
               [](std::uint64_t seed, const Caps& caps) {
                 return CaseResult{seed % 2 == 0 && caps.states > 2, "even seed"};
               },
               Caps{5, 5, 5}};
  auto rep = run_suite(broken, 3, 6, 1);
  EXPECT_FALSE(rep.ok());
  ASSERT_TRUE(rep.first_failing_seed);
  ASSERT_TRUE(rep.shrunk);
  EXPECT_EQ(rep.shrunk->states, 1u);
  EXPECT_EQ(rep.shrunk->acts, 1u);
}

TEST(Fuzzing, ZeroCases) {
  auto rep = run_suite(find_suite("eu-geu"), 1, 0, 1);
  EXPECT_EQ(rep.passed, 0u);
  EXPECT_TRUE(rep.ok());
}
