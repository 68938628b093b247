#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "ogis/dialogue.hpp"
#include "ogis/errors.hpp"
#include "ogis/language.hpp"
#include "oracles.hpp"

namespace ogis {
namespace {

Language L(std::string_view text) { return parse_language(text); }

TEST(Contains, FormBoundaries) {
  EXPECT_TRUE(contains(Language::up_to(3), 3));
  EXPECT_FALSE(contains(Language::up_to(3), 4));
  EXPECT_FALSE(contains(Language::all_above(8), 8));
  EXPECT_TRUE(contains(Language::all_above(8), 9));
  EXPECT_TRUE(contains(Language::pow32_finite({{1, 1}}), 6));
  EXPECT_FALSE(contains(Language::pow2_at_least(2), 2));
  EXPECT_TRUE(contains(Language::pow2_at_least(2), 1ULL << 63));
  EXPECT_FALSE(contains(Language::empty(), 0));
  EXPECT_TRUE(contains(Language::universe(), 0));
}

TEST(SubsetOf, Examples) {
  EXPECT_TRUE(subset_of(L("UpTo(2)"), L("UpTo(5)")));
  EXPECT_TRUE(subset_of(L("Pow2AtLeast(3)"), L("Pow2AtLeast(1)")));
  EXPECT_TRUE(subset_of(L("Finite{9,12}"), L("AllAbove(8)")));
  EXPECT_FALSE(subset_of(L("Pow2AtLeast(1)"), L("Pow2AtLeast(3)")));
  EXPECT_FALSE(subset_of(L("AllAbove(3)"), L("Pow2AtLeast(0)")));
  EXPECT_FALSE(subset_of(L("Universe"), L("AllAbove(0)")));
}

TEST(SubsetOf, AgreesWithBruteForceOnCatalogPairs) {
  const auto langs = corpus::languages();
  for (const auto& a : langs) {
    for (const auto& b : langs) {
      EXPECT_EQ(subset_of(a, b), oracle::subset(a, b)) << a << " ⊆ " << b;
    }
  }
}

TEST(DifferenceWitnesses, Examples) {
  EXPECT_EQ(difference_witnesses(L("UpTo(4)"), L("UpTo(2)"), 2), (std::vector<Example>{3, 4}));
  EXPECT_EQ(difference_witnesses(L("Finite{2,4,6}"), L("Finite{2,6}"), 3), (std::vector<Example>{4}));
  // Powers of two below 2^2, found by scanning membership.
  std::vector<Example> expected;
  for (Example x = 0; x < 4; ++x) {
    if (oracle::member(L("Pow2AtLeast(0)"), x) && !oracle::member(L("Pow2AtLeast(2)"), x)) expected.push_back(x);
  }
  EXPECT_EQ(difference_witnesses(L("Pow2AtLeast(0)"), L("Pow2AtLeast(2)"), 2), expected);
}

TEST(DifferenceWitnesses, SortedSoundAndEmptyExactlyOnSubsets) {
  const auto langs = corpus::languages();
  for (const auto& a : langs) {
    for (const auto& b : langs) {
      const auto w = difference_witnesses(a, b, 3);
      EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
      EXPECT_EQ(std::adjacent_find(w.begin(), w.end()), w.end());
      for (Example x : w) {
        EXPECT_TRUE(contains(a, x) && !contains(b, x)) << a << " \\ " << b << " gave " << x;
      }
      EXPECT_EQ(w.empty(), subset_of(a, b)) << a << " \\ " << b;
      EXPECT_EQ(w, oracle::difference(a, b, 3)) << a << " \\ " << b;
    }
  }
}

TEST(MinElement, Examples) {
  EXPECT_EQ(min_element(L("Pow2AtLeast(3)")), 8u);
  EXPECT_EQ(min_element(L("Empty")), std::nullopt);
  EXPECT_EQ(min_element(L("Finite{5,9}")), 5u);
  EXPECT_EQ(min_element(L("AllAbove(8)")), 9u);
}

TEST(LanguagesEqual, Examples) {
  EXPECT_TRUE(languages_equal(L("UpTo(2)"), L("Finite{0,1,2}")));
  EXPECT_FALSE(languages_equal(L("Universe"), L("AllAbove(0)")));
  EXPECT_TRUE(languages_equal(L("Pow32Finite{(0,1)}"), L("Finite{2}")));
}

TEST(LanguagesEqual, IsAnEquivalenceOnTheCatalog) {
  auto langs = corpus::languages();
  langs.push_back(L("Finite{0,1,2}"));
  langs.push_back(L("Finite{2}"));
  langs.push_back(L("Finite{}"));
  for (const auto& a : langs) {
    EXPECT_TRUE(languages_equal(a, a));
    for (const auto& b : langs) {
      EXPECT_EQ(languages_equal(a, b), languages_equal(b, a));
      if (!languages_equal(a, b)) continue;
      for (const auto& c : langs) {
        if (languages_equal(b, c)) {
          EXPECT_TRUE(languages_equal(a, c));
        }
      }
    }
  }
}

TEST(Rendering, RoundTripsThroughParse) {
  for (const auto& l : corpus::languages()) {
    EXPECT_EQ(parse_language(to_string(l)), l) << l;
  }
  EXPECT_EQ(to_string(L("Finite{16,2,6,2}")), "Finite{2,6,16}");
  EXPECT_EQ(to_string(Language::up_to(5)), "UpTo(5)");
}

TEST(Rendering, RejectsMalformedText) {
  EXPECT_THROW(parse_language("UpTo(x)"), ParseError);
  EXPECT_THROW(parse_language("Finite{1,2"), ParseError);
  EXPECT_THROW(parse_language("Nope"), ParseError);
  EXPECT_THROW(parse_language("Pow32Finite{(2,1)}"), Error);
}

TEST(SingletonRestriction, IsFiniteOrEmpty) {
  EXPECT_EQ(singleton_restriction(L("UpTo(3)"), 2), L("Finite{2}"));
  EXPECT_EQ(singleton_restriction(L("UpTo(3)"), 4), Language::empty());
}

TEST(Pow32, TermDecomposition) {
  EXPECT_EQ(as_pow32_term(6), (Pow32Term{1, 1}));
  EXPECT_EQ(as_pow32_term(16), (Pow32Term{0, 4}));
  EXPECT_EQ(as_pow32_term(9), std::nullopt);
  EXPECT_EQ(as_pow32_term(0), std::nullopt);
}

TEST(Transcript, AscendingFiniteSourceEndsInBottom) {
  Transcript t(L("Finite{2,6,16}"), AscendingOrder{});
  EXPECT_EQ(t.next(), 2u);
  EXPECT_EQ(t.next(), 6u);
  EXPECT_EQ(t.next(), 16u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(t.next(), std::nullopt);
  EXPECT_EQ(t.sample(), (std::vector<Example>{2, 6, 16}));
}

TEST(Transcript, ShuffledNeverRepeatsAndStaysInSource) {
  for (const auto& source : corpus::languages()) {
    Transcript t(source, ShuffledOrder{7});
    std::set<Example> seen;
    for (int i = 0; i < 100; ++i) {
      const MaybeExample e = t.next();
      if (!e) continue;
      EXPECT_TRUE(contains(source, *e));
      EXPECT_TRUE(seen.insert(*e).second) << "repeat " << *e << " from " << source;
    }
    if (is_finite(source)) {
      EXPECT_EQ(seen.size(), members(source).size());
    }
  }
}

TEST(Transcript, ShuffleIsDeterministicPerSeed) {
  const auto draw = [](std::uint64_t seed) {
    Transcript t(L("UpTo(40)"), ShuffledOrder{seed});
    std::vector<MaybeExample> out;
    for (int i = 0; i < 41; ++i) out.push_back(t.next());
    return out;
  };
  EXPECT_EQ(draw(3), draw(3));
  EXPECT_NE(draw(3), draw(4));
}

TEST(Transcript, ScriptedOrderIsValidated) {
  EXPECT_THROW(Transcript(L("UpTo(3)"), ScriptedOrder{{1, 7}}), InvalidConfig);
  EXPECT_THROW(Transcript(L("UpTo(3)"), ScriptedOrder{{1, 1}}), InvalidConfig);
  Transcript t(L("UpTo(3)"), ScriptedOrder{{3, 0}});
  EXPECT_EQ(t.next(), 3u);
  EXPECT_EQ(t.next(), 0u);
  EXPECT_EQ(t.next(), std::nullopt);
}

TEST(OracleInterface, CegisPresetIsExactlyWitnessAndCorrectness) {
  const auto cegis = OracleInterfaceSpec::cegis();
  const std::set<std::pair<QueryType, ResponseType>> expected = {
      {QueryType::kPositiveWitness, ResponseType::kWitness},
      {QueryType::kCorrectness, ResponseType::kVerdict},
  };
  EXPECT_EQ(cegis.allowed(), expected);
  EXPECT_TRUE(cegis.conforms(CorrectnessQuery{Language::empty()}, VerdictResponse{}));
  EXPECT_FALSE(cegis.conforms(MembershipQuery{1}, LabelResponse{}));
  EXPECT_FALSE(cegis.conforms(CorrectnessQuery{Language::empty()}, LabelResponse{}));
}

}  // namespace
}  // namespace ogis
