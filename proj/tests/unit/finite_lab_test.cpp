#include <gtest/gtest.h>

#include "ogis/errors.hpp"
#include "ogis/finite_lab.hpp"
#include "oracles.hpp"

namespace ogis {
namespace {

FiniteConceptClass single_concept() { return FiniteConceptClass({0, 1, 2}, {{1}}); }

// True when the labeled examples leave only concept c standing.
bool uniquely_consistent(const FiniteConceptClass& cls, std::size_t c, const std::vector<LabeledExample>& seq) {
  for (const auto& e : seq) {
    if (cls.contains(c, e.x) != e.positive) return false;
  }
  return count_consistent(cls, seq) == 1;
}

bool distinguishes(const FiniteConceptClass& cls, std::size_t target, const std::vector<Example>& set) {
  for (std::size_t o = 0; o < cls.size(); ++o) {
    if (o == target) continue;
    bool split = false;
    for (Example x : set) split = split || cls.contains(o, x) != cls.contains(target, x);
    if (!split) return false;
  }
  return true;
}

TEST(VcDimension, Examples) {
  EXPECT_EQ(vc_dimension(powerset_class(3)), 3u);
  EXPECT_EQ(vc_dimension(singletons_class(4)), 1u);
  EXPECT_EQ(vc_dimension(single_concept()), 0u);
  EXPECT_EQ(oracle::vc_dimension(powerset_class(3)), 3u);
  EXPECT_EQ(oracle::vc_dimension(singletons_class(4)), 1u);
}

TEST(TeachingDimension, Examples) {
  EXPECT_EQ(teaching_dimension(powerset_class(3)).dimension, 3u);
  EXPECT_EQ(teaching_dimension(singletons_class(4)).dimension, 1u);
  EXPECT_EQ(teaching_dimension(single_concept()).dimension, 0u);
  EXPECT_EQ(oracle::teaching_dimension(powerset_class(3)), 3u);
  EXPECT_EQ(oracle::teaching_dimension(singletons_class(4)), 1u);
}

TEST(TeachingDimension, SequencesAreMinimalAndUnique) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const FiniteConceptClass cls = random_class(seed);
    const TeachingResult r = teaching_dimension(cls);
    ASSERT_EQ(r.sequences.size(), cls.size());
    EXPECT_EQ(r.dimension, oracle::teaching_dimension(cls)) << render_class(cls);
    for (std::size_t c = 0; c < cls.size(); ++c) {
      EXPECT_TRUE(uniquely_consistent(cls, c, r.sequences[c]));
      EXPECT_EQ(r.sequences[c].size(), oracle::teaching_dimension_of(cls, c));
    }
  }
}

TEST(Dimensions, RejectLargeDomains) {
  std::vector<Example> domain(17);
  for (std::size_t i = 0; i < domain.size(); ++i) domain[i] = i;
  const FiniteConceptClass cls(domain, {{0}, {1}});
  EXPECT_THROW(vc_dimension(cls), DomainTooLarge);
  EXPECT_THROW(teaching_dimension(cls), DomainTooLarge);
}

TEST(FiniteConceptClass, RejectsMalformedClasses) {
  EXPECT_THROW(FiniteConceptClass({0, 1}, {{0}, {0}}), InvalidConfig);
  EXPECT_THROW(FiniteConceptClass({0, 1}, {{2}}), InvalidConfig);
  EXPECT_THROW(FiniteConceptClass({0, 1}, {{0}}, 1), InvalidConfig);
}

TEST(TdBounds, Examples) {
  const BoundsReport p = td_bounds_check(powerset_class(3));
  EXPECT_TRUE(p.pass);
  EXPECT_EQ(p.render(), "1 <= 3 <= 7");
  const BoundsReport s = td_bounds_check(singletons_class(4));
  EXPECT_TRUE(s.pass);
  EXPECT_EQ(s.render(), "0.5 <= 1 <= 3");
  EXPECT_FALSE(td_bounds_check(single_concept()).applicable);
}

TEST(TdBounds, HoldOnRandomClasses) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const FiniteConceptClass cls = random_class(seed, 6, 32);
    ASSERT_GE(cls.size(), 2u);
    ASSERT_LE(cls.size(), 32u);
    const BoundsReport r = td_bounds_check(cls);
    const std::size_t vc = oracle::vc_dimension(cls);
    const std::size_t td = oracle::teaching_dimension(cls);
    EXPECT_EQ(r.vc, vc);
    EXPECT_EQ(r.td, td);
    // 2^vc <= |C|^td in exact integers; vc <= log2 32, so saturating at 64 is safe.
    std::uint64_t power = 1;
    for (std::size_t i = 0; i < td && power < 64; ++i) power *= cls.size();
    EXPECT_LE(std::uint64_t{1} << vc, power);
    EXPECT_LE(td, cls.size() - 1);
    EXPECT_TRUE(r.pass) << render_class(cls);
  }
}

TEST(MinCounterexampleSet, Examples) {
  const FiniteConceptClass reduced = setcover_to_fis({2, {{0}, {1}, {0, 1}}});
  EXPECT_EQ(min_counterexample_set(reduced, *reduced.target()).size(), 1u);
  EXPECT_TRUE(min_counterexample_set(single_concept(), 0).empty());
  const FiniteConceptClass p2 = powerset_class(2);
  for (std::size_t t = 0; t < p2.size(); ++t) EXPECT_EQ(min_counterexample_set(p2, t).size(), 2u);
}

TEST(MinCounterexampleSet, ValidAndMinimalOnRandomClasses) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const FiniteConceptClass cls = random_class(seed);
    for (std::size_t t = 0; t < cls.size(); ++t) {
      const auto set = min_counterexample_set(cls, t);
      EXPECT_TRUE(distinguishes(cls, t, set));
      EXPECT_EQ(set.size(), oracle::min_counterexample_size(cls, t));
    }
  }
}

TEST(SetCoverReduction, Examples) {
  const FiniteConceptClass cls = setcover_to_fis({2, {{0}, {1}}});
  ASSERT_EQ(cls.size(), 3u);
  EXPECT_EQ(cls.domain(), (std::vector<Example>{0, 1}));
  EXPECT_EQ(cls.concept_elements(0), (std::vector<Example>{0}));
  EXPECT_EQ(cls.concept_elements(1), (std::vector<Example>{1}));
  EXPECT_TRUE(cls.concept_elements(2).empty());
  EXPECT_EQ(cls.target(), std::optional<std::size_t>{2});

  const FiniteConceptClass useless = setcover_to_fis({1, {{}, {0}}});
  for (std::size_t c = 0; c < useless.size(); ++c) EXPECT_FALSE(useless.contains(c, 0));

  EXPECT_THROW(setcover_to_fis({2, {{0}}}), Uncoverable);
}

TEST(SetCoverReduction, CoverSizeMatchesCounterexampleSize) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SetCoverInstance inst = random_cover(seed, 8, 6);
    ASSERT_LE(inst.sets.size(), 8u);
    ASSERT_LE(inst.universe, 6u);
    const FiniteConceptClass cls = setcover_to_fis(inst);
    const std::size_t cover = oracle::min_cover_size(inst);
    EXPECT_EQ(min_set_cover(inst).size(), cover);
    EXPECT_EQ(min_counterexample_set(cls, *cls.target()).size(), cover) << render_cover(inst);
    EXPECT_EQ(oracle::min_counterexample_size(cls, *cls.target()), cover);
  }
}

TEST(MinSetCover, Examples) {
  EXPECT_EQ(min_set_cover({3, {{0, 1}, {1, 2}, {2}}}), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(min_set_cover({3, {{0}, {0, 1, 2}}}).size(), 1u);
  EXPECT_EQ(min_set_cover({1, {{0}, {0}, {0}}}).size(), 1u);
  EXPECT_THROW(min_set_cover({2, {{0}}}), Uncoverable);
}

TEST(DistinguishingInput, Examples) {
  const FiniteConceptClass p2 = powerset_class(2);
  const auto r = distinguishing_input(p2, {}, 0);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(p2.concept_elements(r->first), (std::vector<Example>{0}));
  EXPECT_EQ(r->second, 0u);
  EXPECT_EQ(distinguishing_input(single_concept(), {1}, 0), std::nullopt);
  const FiniteConceptClass s = singletons_class(3);
  EXPECT_EQ(distinguishing_input(s, {1}, *s.index_of(1)), std::nullopt);
}

TEST(MembershipLabel, Examples) {
  const FiniteConceptClass cls({0, 1, 2}, {{0, 2}, {}});
  EXPECT_EQ(membership_label(cls, 0, 2), Label::kPositive);
  EXPECT_EQ(membership_label(cls, 0, 1), Label::kNegative);
  for (Example x : {0, 1, 2}) EXPECT_EQ(membership_label(cls, 1, x), Label::kNegative);
}

TEST(SampleComplexity, Examples) {
  const auto ogis = OracleInterfaceSpec::finite_ogis();
  const auto single = ogis_sample_complexity(single_concept(), ogis);
  EXPECT_EQ(single.worst, 0u);
  EXPECT_EQ(single.td, 0u);
  EXPECT_TRUE(single.at_least_td);
  const auto p2 = ogis_sample_complexity(powerset_class(2), ogis);
  EXPECT_GE(p2.worst, 2u);
  EXPECT_THROW(ogis_sample_complexity(powerset_class(2), OracleInterfaceSpec::cegis()), UnsupportedInterface);
}

TEST(SampleComplexity, AtLeastTeachingDimensionOnRandomClasses) {
  const auto ogis = OracleInterfaceSpec::finite_ogis();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const FiniteConceptClass cls = random_class(seed, 6, 32);
    const auto r = ogis_sample_complexity(cls, ogis);
    ASSERT_EQ(r.per_target.size(), cls.size());
    EXPECT_EQ(r.td, oracle::teaching_dimension(cls));
    EXPECT_GE(r.worst, r.td);
    // Each target's count bounds its own teaching set size from above.
    for (std::size_t t = 0; t < cls.size(); ++t) EXPECT_GE(r.per_target[t], oracle::teaching_dimension_of(cls, t));
  }
}

TEST(ClassFiles, RoundTrip) {
  const FiniteConceptClass cls = parse_class("# three\ndomain: 0 1 5\n0 5\n{}\n1  # one\n");
  EXPECT_EQ(cls.domain(), (std::vector<Example>{0, 1, 5}));
  EXPECT_EQ(cls.size(), 3u);
  EXPECT_EQ(cls.concept_elements(0), (std::vector<Example>{0, 5}));
  EXPECT_EQ(parse_class(render_class(cls)).masks(), cls.masks());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SetCoverInstance inst = random_cover(seed);
    const SetCoverInstance back = parse_cover(render_cover(inst));
    EXPECT_EQ(back.universe, inst.universe);
    EXPECT_EQ(back.sets, inst.sets);
  }
}

TEST(ClassFiles, ParseErrorsCarryLineNumbers) {
  auto line_of = [](auto&& f) -> std::size_t {
    try {
      f();
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of([] { parse_class("domain: 0 1\n0\n7\n"); }), 3u);
  EXPECT_EQ(line_of([] { parse_class("\nconcepts: 0\n"); }), 2u);
  EXPECT_EQ(line_of([] { parse_class("domain: 0 x\n"); }), 1u);
  EXPECT_EQ(line_of([] { parse_class("domain: 0 1\n1\n# c\n1\n"); }), 4u);
  EXPECT_EQ(line_of([] { parse_cover("universe: 2\n0 1\n2\n"); }), 3u);
}

}  // namespace
}  // namespace ogis
