#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qcf/errors.hpp"
#include "qcf/protocols.hpp"

using namespace qcf;

namespace {

// Test-side evaluation of (cos^2(pi/2N))^N, independent of the library.
double keep_formula(int n) {
  const double c = std::cos(std::numbers::pi / (2.0 * n));
  return std::pow(c * c, n);
}

double probability_of(const BranchDistribution& dist, std::initializer_list<std::pair<const char*, int>> want) {
  double p = 0.0;
  for (const auto& b : dist.branches) {
    bool match = true;
    for (const auto& [label, bit] : want) match = match && b.bit(label) == bit;
    if (match) p += b.probability;
  }
  return p;
}

Branch make_branch(std::vector<Record> record, bool discarded = false) {
  return Branch{1.0, std::move(record), zero_state(2), discarded};
}

}  // namespace

// ---------- Mach-Zehnder ----------

TEST(MachZehnder, WithoutDetectorPhotonAlwaysReachesF) {
  const auto dist = enumerate_branches(mach_zehnder(false));
  EXPECT_NEAR(probability_of(dist, {{"path", 0}}), 1.0, 1e-12);
  EXPECT_NEAR(probability_of(dist, {{"path", 1}}), 0.0, 1e-12);
}

TEST(MachZehnder, DetectorSpoilsInterference) {
  const auto dist = enumerate_branches(mach_zehnder(true));
  for (int path = 0; path < 2; ++path) {
    for (int det = 0; det < 2; ++det) {
      EXPECT_NEAR(probability_of(dist, {{"path", path}, {"detector", det}}), 0.25, 1e-12);
    }
    EXPECT_NEAR(probability_of(dist, {{"path", path}}), 0.5, 1e-12);
  }
}

TEST(MachZehnder, BeamsplitterTwiceIsIdentity) {
  // Beamsplitter: |U> -> (F+G)/sqrt2, |L> -> (F-G)/sqrt2.
  const auto h = gates::hadamard();
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(h(0, 0) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 0) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(0, 1) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 1) + s), 0.0, 1e-15);
  const auto twice = apply_local(apply_local(basis_state(1, 1), h, std::vector{0}), h, std::vector{0});
  EXPECT_NEAR(std::norm(twice[1]), 1.0, 1e-15);
}

TEST(MachZehnder, ReportCarriesMarginals) {
  const auto report = run_mach_zehnder(false, RunOptions{});
  ASSERT_EQ(report.marginals.size(), 1U);
  EXPECT_EQ(report.marginals[0].values[0].first, "F");
  EXPECT_NEAR(report.marginals[0].values[0].second, 1.0, 1e-12);
  EXPECT_EQ(report.marginals[0].values[1].second, 0.0);
}

// ---------- basic scheme ----------

TEST(BasicCounterfactual, ROneQuarterEach) {
  const auto dist = enumerate_branches(basic_counterfactual(ComputerModel{1}));
  for (int sw = 0; sw < 2; ++sw) {
    for (int out = 0; out < 2; ++out) {
      EXPECT_NEAR(probability_of(dist, {{"switch", sw}, {"output", out}}), 0.25, 1e-12);
    }
  }
  EXPECT_NEAR(probability_of(dist, {{"switch", 1}}), 0.5, 1e-12);
}

TEST(BasicCounterfactual, RZeroNeverShowsOn) {
  const auto dist = enumerate_branches(basic_counterfactual(ComputerModel{0}));
  ASSERT_EQ(dist.branches.size(), 1U);
  EXPECT_EQ(dist.branches[0].bit("switch"), 0);
  EXPECT_EQ(dist.branches[0].bit("output"), 0);
  EXPECT_NEAR(probability_of(dist, {{"switch", 1}}), 0.0, 1e-15);
}

TEST(BasicCounterfactual, ReportFreeProbabilityIsQuarter) {
  const auto report = run_basic(ComputerModel{1}, RunOptions{});
  EXPECT_NEAR(report.counterfactual_free_probability, 0.25, 1e-12);
  EXPECT_NEAR(report.total_probability(), 1.0, 1e-10);
  const auto r0 = run_basic(ComputerModel{0}, RunOptions{});
  EXPECT_EQ(r0.counterfactual_free_probability, 0.0);
}

TEST(BasicCounterfactual, RejectsNonBitResult) { EXPECT_THROW(basic_counterfactual(ComputerModel{2}), DomainError); }

// ---------- classification ----------

TEST(ClassifyHistory, BasicExamples) {
  EXPECT_EQ(classify_history(make_branch({{"switch", 1}, {"output", 0}}), kBasic, 1), OutcomeClass::LearnedR1Free);
  EXPECT_EQ(classify_history(make_branch({{"switch", 0}, {"output", 0}}), kBasic, 1), OutcomeClass::Inconclusive);
  EXPECT_EQ(classify_history(make_branch({{"switch", 1}, {"output", 1}}), kBasic, 1),
            OutcomeClass::LearnedR1Computed);
  EXPECT_EQ(classify_history(make_branch({{"switch", 0}, {"output", 1}}), kBasic, 1),
            OutcomeClass::LearnedR1Computed);
}

TEST(ClassifyHistory, ZenoExamples) {
  EXPECT_EQ(classify_history(make_branch({{"output1", 0}, {"switch", 1}}), kZeno, 0),
            OutcomeClass::LearnedR0Computed);
  EXPECT_EQ(classify_history(make_branch({{"output1", 0}, {"switch", 0}}), kZeno, 1), OutcomeClass::LearnedR1Free);
  EXPECT_EQ(classify_history(make_branch({{"output1", 1}}, true), kZeno, 1), OutcomeClass::Discarded);
  EXPECT_TRUE(computation_ran(make_branch({{"output1", 1}}, true), kZeno));
  EXPECT_TRUE(computation_ran(make_branch({{"output1", 0}, {"switch", 1}}), kZeno));
  EXPECT_FALSE(computation_ran(make_branch({{"output1", 0}, {"switch", 0}}), kZeno));
}

TEST(ClassifyHistory, UnknownProtocol) {
  EXPECT_THROW(classify_history(make_branch({}), "teleport", 1), DomainError);
  EXPECT_THROW(classify_history(make_branch({}), kMachZehnder, 1), DomainError);
}

TEST(ClassifyHistory, SoundnessNoFreeResultWhenRIsZero) {
  std::vector<std::pair<std::string_view, MeasurementProgram>> runs;
  runs.emplace_back(kBasic, basic_counterfactual(ComputerModel{0}));
  for (int n = 1; n <= 20; ++n) runs.emplace_back(kZeno, zeno_counterfactual(ComputerModel{0}, ZenoConfig::with_stages(n)));
  for (const auto& [name, program] : runs) {
    for (const auto& b : enumerate_branches(program).branches) {
      EXPECT_NE(classify_history(b, name, 0), OutcomeClass::LearnedR1Free);
    }
  }
}

// ---------- Zeno scheme ----------

TEST(ZenoCounterfactual, RZeroRotatesSwitchToOn) {
  for (int n = 1; n <= 64; ++n) {
    const auto dist = enumerate_branches(zeno_counterfactual(ComputerModel{0}, ZenoConfig::with_stages(n)));
    ASSERT_EQ(dist.branches.size(), 1U) << "N=" << n;
    EXPECT_FALSE(dist.branches[0].discarded);
    EXPECT_NEAR(dist.branches[0].probability, 1.0, 1e-12);
    EXPECT_EQ(dist.branches[0].bit("switch"), 1);
    EXPECT_EQ(classify_history(dist.branches[0], kZeno, 0), OutcomeClass::LearnedR0Computed);
  }
}

TEST(ZenoCounterfactual, ROneKeepProbabilityMatchesFormula) {
  for (int n = 1; n <= 64; ++n) {
    const auto dist = enumerate_branches(zeno_counterfactual(ComputerModel{1}, ZenoConfig::with_stages(n)));
    EXPECT_NEAR(dist.kept_probability(), keep_formula(n), 1e-12) << "N=" << n;
    EXPECT_NEAR(dist.total_probability(), 1.0, 1e-10);
    for (const auto& b : dist.branches) {
      if (b.discarded) continue;
      for (int s = 1; s <= n; ++s) EXPECT_EQ(b.bit("output" + std::to_string(s)), 0);
      EXPECT_EQ(b.bit("switch"), 0);
      EXPECT_EQ(classify_history(b, kZeno, 1), OutcomeClass::LearnedR1Free);
    }
  }
}

TEST(ZenoCounterfactual, TenStages) {
  const auto report = run_zeno(ComputerModel{1}, ZenoConfig::with_stages(10), RunOptions{});
  ASSERT_TRUE(report.p_keep_all.has_value());
  EXPECT_NEAR(*report.p_keep_all, 0.7805460697811405, 1e-12);
  EXPECT_NEAR(report.counterfactual_free_probability, 0.7805460697811405, 1e-12);
  EXPECT_NEAR(report.total_probability(), 1.0, 1e-10);
}

TEST(ZenoCounterfactual, OneStageNeverKeeps) {
  const auto dist = enumerate_branches(zeno_counterfactual(ComputerModel{1}, ZenoConfig::with_stages(1)));
  EXPECT_NEAR(dist.kept_probability(), 0.0, 1e-15);
}

TEST(ZenoCounterfactual, SampledModeRestarts) {
  RunOptions options{RunMode::Sampled, 42, 2000, kDefaultRestartCap};
  const auto report = run_zeno(ComputerModel{1}, ZenoConfig::with_stages(4), options);
  ASSERT_TRUE(report.restarts && report.gave_up && report.discarded_attempt_ran);
  EXPECT_GT(*report.restarts, 0U);
  EXPECT_EQ(*report.gave_up, 0U);
  EXPECT_TRUE(*report.discarded_attempt_ran);
  // Every trial eventually keeps all stages, so every counted outcome is free.
  EXPECT_EQ(report.counterfactual_free_probability, 1.0);
  // Attempt-level keep rate near (cos^2(pi/8))^4 = 0.5183.
  EXPECT_NEAR(*report.p_keep_all, keep_formula(4), 0.03);

  RunOptions capped{RunMode::Sampled, 42, 100, 0};
  const auto no_retry = run_zeno(ComputerModel{1}, ZenoConfig::with_stages(1), capped);
  EXPECT_EQ(*no_retry.gave_up, 100U);
}

TEST(ZenoKeepProbability, Examples) {
  EXPECT_NEAR(zeno_keep_probability(1), 0.0, 1e-15);
  EXPECT_NEAR(zeno_keep_probability(10), 0.7805460697811405, 1e-12);
  EXPECT_GE(zeno_keep_probability(1000), 0.9975);
  EXPECT_NEAR(1.0 - zeno_keep_probability(1000), std::numbers::pi * std::numbers::pi / 4000.0, 1e-5);
  EXPECT_THROW(zeno_keep_probability(0), ConfigurationError);
}

TEST(ZenoKeepProbability, Monotone) {
  for (int n = 1; n < 10000; ++n) ASSERT_GT(zeno_keep_probability(n + 1), zeno_keep_probability(n)) << n;
}

TEST(ChooseStageCount, Examples) {
  auto scan = [](double eps) {
    int n = 1;
    while (keep_formula(n) < 1.0 - eps) ++n;
    return n;
  };
  EXPECT_EQ(choose_stage_count(0.1), 24);
  EXPECT_EQ(scan(0.1), 24);
  EXPECT_EQ(choose_stage_count(0.999999), 2);
  for (double eps : {0.5, 0.2, 0.05, 0.01, 0.001}) EXPECT_EQ(choose_stage_count(eps), scan(eps)) << eps;
  EXPECT_THROW(choose_stage_count(0.0), DomainError);
  EXPECT_THROW(choose_stage_count(1.0), DomainError);
  EXPECT_THROW(choose_stage_count(-0.5), DomainError);
}

TEST(SwitchRotation, MapsOffAndOn) {
  const double a = 0.3;
  const auto m = SwitchRotation{a}.matrix();
  EXPECT_NEAR(std::abs(m(0, 0) - std::cos(a)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 0) - std::sin(a)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1) + std::sin(a)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1) - std::cos(a)), 0.0, 1e-15);
  EXPECT_LT(m.unitarity_defect(), 1e-15);
}

TEST(ZenoConfig, AlphaAndEpsilon) {
  EXPECT_DOUBLE_EQ(ZenoConfig::with_stages(10).alpha() * 10, std::numbers::pi / 2);
  const auto cfg = ZenoConfig::for_epsilon(0.1);
  EXPECT_EQ(cfg.stages, 24);
  EXPECT_EQ(cfg.epsilon, 0.1);
}
