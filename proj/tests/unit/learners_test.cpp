#include <gtest/gtest.h>

#include "ogis/engine.hpp"
#include "ogis/errors.hpp"
#include "ogis/families.hpp"
#include "ogis/finite_lab.hpp"
#include "ogis/learners.hpp"

namespace ogis {
namespace {

Language L(std::string_view text) { return parse_language(text); }

TEST(LearnStep, GoldFiniteAddsThePositive) {
  const LearnerState s{L("Finite{2}"), {}};
  EXPECT_EQ(learn_step(kGoldFinite, s, 6, std::nullopt).hypothesis, L("Finite{2,6}"));
}

TEST(LearnStep, GoldFiniteDropsTheCounterexample) {
  const LearnerState s{L("Finite{2,6}"), {}};
  EXPECT_EQ(learn_step(kGoldFinite, s, std::nullopt, 6).hypothesis, L("Finite{2}"));
}

TEST(LearnStep, ChainClimbsWhileSilent) {
  const auto chain = make_learner(kChain);
  const LearnerState s{L("UpTo(1)"), {1, 0}};
  EXPECT_EQ(chain->step(s, std::nullopt, std::nullopt).hypothesis, L("UpTo(2)"));
}

TEST(LearnStep, ChainFallsBackOnCounterexampleAndStops) {
  const auto chain = make_learner(kChain);
  const LearnerState s{L("UpTo(4)"), {4, 0}};
  const LearnerState next = chain->step(s, std::nullopt, 4);
  EXPECT_EQ(next.hypothesis, L("UpTo(3)"));
  EXPECT_FALSE(chain->query(next).has_value());
  EXPECT_EQ(chain->step(next, 2, std::nullopt), next);
}

TEST(LearnStep, RejectsEqualPositiveAndCounterexample) {
  for (const auto& id : {kGoldFinite, kChain, kPbcegisFamily3, kGoldLast3, kBatchSample}) {
    const auto learner = make_learner(id);
    EXPECT_THROW(learner->step(learner->initial_state(), 5, 5), InconsistentInput) << id;
  }
}

TEST(Registry, UnknownIdThrows) {
  EXPECT_THROW(make_learner("perceptron"), UnknownLearner);
  EXPECT_EQ(learner_ids().size(), 7u);
  for (const auto& id : learner_ids()) {
    LearnerContext ctx;
    ctx.concepts = {L("Empty")};
    EXPECT_EQ(make_learner(id, ctx)->id(), id);
  }
}

TEST(LearnBatch, Examples) {
  EXPECT_EQ(learn_batch(kBatchFamily3, {{2, 6}, {}}), L("Pow32Finite{(0,1),(1,1)}"));
  EXPECT_EQ(learn_batch(kBatchSample, {{}, {}}), L("Universe"));
  EXPECT_EQ(learn_batch(kBatchFamily3, {{}, {}}), L("Universe"));
  EXPECT_EQ(learn_batch(kBatchSample, {{0, 1}, {1}}), L("Empty"));
}

TEST(LearnBatch, ConsistentWithConsistentHistories) {
  const std::vector<History> histories = {
      {{2, 4}, {}}, {{4, 8}, {2}}, {{4}, {8}}, {{}, {3, 7}}, {{1, 5}, {2}}, {{6, 16}, {1}},
  };
  for (const auto& id : {kBatchSample, kBatchFamily3}) {
    for (const History& h : histories) {
      const Language l = learn_batch(id, h);
      for (Example p : h.positives) EXPECT_TRUE(contains(l, p)) << id << " " << l;
      for (Example n : h.negatives) EXPECT_FALSE(contains(l, n)) << id << " " << l;
    }
  }
  EXPECT_EQ(learn_batch(kBatchFamily3, {{4, 8}, {2}}), L("Pow2AtLeast(2)"));
}

// 3^k by repeated multiplication, independent of the library helper.
Example power3(unsigned k) {
  Example v = 1;
  while (k-- > 0) v *= 3;
  return v;
}

// Least k >= 2 whose {3^k} draws no counterexample, computed by membership.
unsigned expected_bound(const Language& target, const std::vector<Example>& seen) {
  const Example top = *std::max_element(seen.begin(), seen.end());
  for (unsigned k = 2;; ++k) {
    if (contains(target, power3(k)) || power3(k) >= top) return k;
  }
}

TEST(PbDiscoverBound, Examples) {
  const std::vector<std::pair<Language, std::vector<Example>>> cases = {
      {L("Finite{2,6,16}"), {16, 6, 2}},
      {L("Finite{2,6}"), {6, 2}},
      {L("Finite{6}"), {6}},
  };
  const std::vector<unsigned> expected = {3, 2, 2};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    HcheckOracle oracle(cases[i].first, cases[i].second);
    const unsigned b = pb_discover_bound(oracle);
    EXPECT_EQ(b, expected[i]);
    EXPECT_EQ(b, expected_bound(cases[i].first, cases[i].second));
  }
}

TEST(PbDiscoverBound, NeedsAThreeTimesPowerOfTwo) {
  HcheckOracle oracle(L("Pow2AtLeast(1)"), {2, 4});
  EXPECT_THROW(pb_discover_bound(oracle), PhaseError);
}

TEST(PbRecoverPositives, Examples) {
  {
    HcheckOracle oracle(L("Finite{2,6,16}"), {16, 6, 2});
    EXPECT_EQ(pb_recover_positives(oracle, 3, 16), (std::vector<Example>{2, 16}));
    EXPECT_EQ(oracle.queries(), 4u);  // 1, 2, 4, 8
  }
  {
    HcheckOracle oracle(L("Finite{6}"), {6});
    EXPECT_TRUE(pb_recover_positives(oracle, 2, 6).empty());
    EXPECT_EQ(oracle.queries(), 3u);  // 1, 2, 4
  }
  {
    HcheckOracle oracle(L("Finite{2,6}"), {6, 2});
    EXPECT_EQ(pb_recover_positives(oracle, 2, 6), (std::vector<Example>{2}));
  }
}

RunResult run(const Language& target, std::string_view learner, VerifierKind verifier,
              TranscriptOrder order = AscendingOrder{}, LearnerContext ctx = {}) {
  RunConfig c;
  c.target = target;
  c.learner = std::string(learner);
  c.verifier = std::move(verifier);
  c.order = std::move(order);
  c.context = std::move(ctx);
  return run_cegis(c);
}

TEST(PbcegisFamily3, IdentifiesTheDocumentedTargets) {
  for (const auto* text : {"Pow2AtLeast(2)", "Pow32Finite{(0,1),(1,1),(0,4)}", "Pow32Finite{(1,1)}"}) {
    const RunResult r = run(L(text), kPbcegisFamily3, PositiveBoundedVerifier{});
    EXPECT_TRUE(r.identified) << text << " ended at " << r.final_hypothesis;
  }
}

TEST(PbcegisFamily3, TailPhaseSettlesOnceTheLeastPowerAppears) {
  const RunResult r = run(L("Pow2AtLeast(2)"), kPbcegisFamily3, PositiveBoundedVerifier{});
  ASSERT_GE(r.hypothesis_trace.size(), 2u);
  EXPECT_EQ(r.hypothesis_trace[1].hypothesis, L("Pow2AtLeast(2)"));
  EXPECT_EQ(r.hypothesis_trace[1].step, 1u);
}

TEST(PbcegisFamily3, RecoversPowersSeenBeforeTheTrigger) {
  // Powers first, trigger last: the learner must query them back.
  const RunResult r =
      run(L("Finite{1,4,8,48}"), kPbcegisFamily3, PositiveBoundedVerifier{}, ScriptedOrder{{4, 1, 8, 48}});
  EXPECT_TRUE(r.identified) << r.final_hypothesis;
  EXPECT_GT(r.probe_queries, 0u);
}

TEST(PbcegisFamily3, StateSizeIsConstant) {
  const std::size_t bound = *make_learner(kPbcegisFamily3)->memory_bound();
  for (const auto& target : family_pb_members({10, 20, 5, 8})) {
    const RunResult r = run(target, kPbcegisFamily3, PositiveBoundedVerifier{}, ShuffledOrder{5});
    EXPECT_LE(r.max_state_bytes, bound);
  }
}

TEST(ConsistentEnum, PowersetOfTwoConvergesWithFewExamples) {
  const auto cls = powerset_class(2);
  LearnerContext ctx;
  for (std::size_t c = 0; c < cls.size(); ++c) ctx.concepts.push_back(Language::finite(cls.concept_elements(c)));
  const RunResult r = run(L("Finite{0}"), kConsistentEnum, ArbitraryVerifier{AscendingStrategy{}}, AscendingOrder{}, ctx);
  EXPECT_TRUE(r.identified);
  std::size_t examples = 0;
  for (const auto& s : r.steps) examples += (s.positive ? 1 : 0) + (s.counterexample ? 1 : 0);
  EXPECT_LE(examples, 2u);
}

TEST(ConsistentEnum, SingleConceptNeedsNoCounterexamples) {
  LearnerContext ctx;
  ctx.concepts = {L("Finite{3}")};
  const RunResult r = run(L("Finite{3}"), kConsistentEnum, ArbitraryVerifier{AscendingStrategy{}}, AscendingOrder{}, ctx);
  EXPECT_TRUE(r.identified);
  EXPECT_EQ(r.counterexamples, 0u);
}

TEST(ConsistentEnum, BoundedChainWithBcheck) {
  LearnerContext ctx;
  ctx.concepts = family_cbnotpb(4);
  const RunResult r = run(L("UpTo(2)"), kConsistentEnum, ConstantBoundedVerifier{4}, AscendingOrder{}, ctx);
  EXPECT_TRUE(r.identified);
  EXPECT_EQ(r.final_hypothesis, L("UpTo(2)"));
}

TEST(ConsistentEnum, ThrowsWhenEveryConceptIsEliminated) {
  LearnerContext ctx;
  ctx.concepts = {L("Finite{1}"), L("Finite{2}")};
  const auto learner = make_learner(kConsistentEnum, ctx);
  EXPECT_THROW(learner->step(learner->initial_state(), 7, std::nullopt), NoConsistentConcept);
  EXPECT_THROW(make_learner(kConsistentEnum, {}), InvalidConfig);
}

TEST(GoldFinite, ConvergesToFiniteTargetsAfterExhaustion) {
  for (const auto* text : {"Finite{9,12}", "Finite{0,5,7,100}", "UpTo(6)", "Empty"}) {
    const RunResult r = run(L(text), kGoldFinite, ArbitraryVerifier{AscendingStrategy{}}, ShuffledOrder{11});
    EXPECT_TRUE(r.identified) << text;
  }
}

TEST(Chain, IssuesIPlusTwoQueriesUnderEveryStrategy) {
  LearnerContext ctx;
  ctx.chain_limit = 30;
  for (const CheckStrategy& s :
       std::vector<CheckStrategy>{AscendingStrategy{}, DescendingCappedStrategy{7}, SeededRandomStrategy{2}}) {
    for (Example i = 0; i <= 12; ++i) {
      const RunResult r = run(Language::up_to(i), kChain, ArbitraryVerifier{s}, AscendingOrder{}, ctx);
      EXPECT_TRUE(r.identified);
      EXPECT_EQ(r.correctness_queries, i + 2);
    }
  }
}

TEST(FiniteMemory, DeclaredBoundsHoldOnCorpusRuns) {
  LearnerContext ctx;
  ctx.concepts = family_notpb(10);
  ctx.chain_limit = 11;
  for (const auto& id : {kChain, kGoldLast3, kConsistentEnum}) {
    const std::size_t bound = *make_learner(id, ctx)->memory_bound();
    for (const auto& target : family_notpb(10)) {
      const RunResult r = run(target, id, ArbitraryVerifier{AscendingStrategy{}}, ShuffledOrder{1}, ctx);
      EXPECT_LE(r.max_state_bytes, bound) << id;
    }
  }
  EXPECT_FALSE(make_learner(kGoldFinite)->memory_bound().has_value());
  EXPECT_FALSE(make_learner(kBatchSample)->memory_bound().has_value());
}

TEST(Consistency, ConvergedHypothesisRespectsTheDialogue) {
  for (const auto& target : family_pb_members({8, 10, 3, 6})) {
    const RunResult r = run(target, kPbcegisFamily3, PositiveBoundedVerifier{}, ShuffledOrder{9});
    ASSERT_TRUE(r.converged);
    for (const auto& s : r.steps) {
      if (s.positive) {
        EXPECT_TRUE(contains(r.final_hypothesis, *s.positive));
      }
      if (s.counterexample && !s.probe) {
        EXPECT_FALSE(contains(r.final_hypothesis, *s.counterexample));
      }
    }
  }
}

TEST(Serialization, EncodingSizes) {
  EXPECT_EQ(encoded_size(L("Empty")), 1u);
  EXPECT_EQ(encoded_size(L("UpTo(4)")), 9u);
  EXPECT_EQ(encoded_size(L("Pow32Finite{(1,1)}")), 17u);
  EXPECT_EQ(encoded_size(L("Finite{1,2}")), 1u + 4u + 16u);
  const LearnerState s{L("UpTo(4)"), {1, 2}};
  EXPECT_EQ(s.serialized_size(), 9u + 4u + 16u);
}

}  // namespace
}  // namespace ogis
