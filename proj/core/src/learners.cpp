#include "ogis/learners.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>

#include "ogis/errors.hpp"
#include "ogis/verifiers.hpp"

namespace ogis {

namespace {

constexpr Example kMaxExample = std::numeric_limits<Example>::max();

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void encode(std::vector<std::uint8_t>& out, const Language& language) {
  out.push_back(static_cast<std::uint8_t>(language.kind()));
  switch (language.kind()) {
    case FormKind::kEmpty:
    case FormKind::kUniverse:
      break;
    case FormKind::kFinite:
      put_u32(out, static_cast<std::uint32_t>(language.elements().size()));
      for (Example e : language.elements()) put_u64(out, e);
      break;
    case FormKind::kUpTo:
    case FormKind::kAllAbove:
    case FormKind::kPow2AtLeast:
      put_u64(out, language.parameter());
      break;
    case FormKind::kPow32Finite:
      put_u64(out, language.pow32_mask(0));
      put_u64(out, language.pow32_mask(1));
      break;
  }
}

std::size_t state_size_bound(std::size_t hypothesis_bytes, std::size_t aux_count) {
  return hypothesis_bytes + 4 + 8 * aux_count;
}

Language with_term(const Language& hypothesis, Pow32Term term) {
  std::vector<Pow32Term> terms;
  if (hypothesis.kind() == FormKind::kPow32Finite) terms = hypothesis.pow32_terms();
  terms.push_back(term);
  return Language::pow32_finite(terms);
}

Language without_term(const Language& hypothesis, Example x) {
  if (hypothesis.kind() != FormKind::kPow32Finite) return hypothesis;
  std::vector<Pow32Term> terms;
  for (const Pow32Term& t : hypothesis.pow32_terms()) {
    if (t.value() != x) terms.push_back(t);
  }
  return Language::pow32_finite(terms);
}

// ---------------------------------------------------------------------------

class GoldFiniteLearner final : public Learner {
 public:
  std::string_view id() const override { return kGoldFinite; }

  LearnerState initial_state() const override { return {Language::empty(), {}}; }

  std::optional<ProposedQuery> query(const LearnerState& state) const override {
    return ProposedQuery{state.hypothesis, false};
  }

 protected:
  LearnerState advance(const LearnerState& state, MaybeExample positive, MaybeExample cex) const override {
    std::vector<Example> sample = members(state.hypothesis);
    if (positive) sample.push_back(*positive);
    if (cex) std::erase(sample, *cex);
    if (sample.empty() && state.hypothesis.kind() == FormKind::kEmpty) return state;
    return {Language::finite(std::move(sample)), {}};
  }
};

// Gold-style guess over only the last K positives. Deliberately lossy: it is
// the baseline the adversary construction is expected to confuse.
class GoldLastLearner final : public Learner {
 public:
  static constexpr std::size_t kKeep = 3;

  std::string_view id() const override { return kGoldLast3; }

  LearnerState initial_state() const override { return {Language::empty(), {}}; }

  std::optional<ProposedQuery> query(const LearnerState& state) const override {
    return ProposedQuery{state.hypothesis, false};
  }

  std::optional<std::size_t> memory_bound() const override {
    return state_size_bound(encoded_size(Language::finite({1, 2, 3})), kKeep);
  }

 protected:
  LearnerState advance(const LearnerState& state, MaybeExample positive, MaybeExample cex) const override {
    std::vector<std::uint64_t> recent = state.aux;
    if (cex) std::erase(recent, *cex);
    if (positive) {
      recent.push_back(*positive);
      if (recent.size() > kKeep) recent.erase(recent.begin());
    }
    Language hypothesis = recent.empty() ? Language::empty() : Language::finite(recent);
    return {std::move(hypothesis), std::move(recent)};
  }
};

// Guesses UpTo(0), UpTo(1), ... while CHECK stays silent and settles on the
// previous guess at the first counterexample.
class ChainLearner final : public Learner {
 public:
  explicit ChainLearner(Example limit) : limit_(limit) {}

  std::string_view id() const override { return kChain; }

  LearnerState initial_state() const override { return {Language::up_to(0), {0, 0}}; }

  std::optional<ProposedQuery> query(const LearnerState& state) const override {
    if (state.aux[kDone] != 0) return std::nullopt;
    return ProposedQuery{state.hypothesis, false};
  }

  std::optional<std::size_t> memory_bound() const override {
    return state_size_bound(encoded_size(Language::up_to(0)), 2);
  }

 protected:
  LearnerState advance(const LearnerState& state, MaybeExample, MaybeExample cex) const override {
    if (state.aux[kDone] != 0) return state;
    const Example index = state.aux[kIndex];
    if (cex) {
      if (index == 0) return {Language::empty(), {0, 1}};
      return {Language::up_to(index - 1), {index - 1, 1}};
    }
    if (index >= limit_) return {state.hypothesis, {index, 1}};
    return {Language::up_to(index + 1), {index + 1, 0}};
  }

 private:
  static constexpr std::size_t kIndex = 0;
  static constexpr std::size_t kDone = 1;
  Example limit_;
};

// Two-phase learner for finite subsets of {3^j 2^i} and tails of the powers
// of two, driven by positive-bounded counterexamples.
//
// Tail phase: hypothesis Pow2AtLeast(least exponent seen).
// After the first 3*2^j positive the learner is sure the target is finite. It
// probes {3^k} for k = 2, 3, ... until one is silent, giving an exponent B
// with 3^B above every positive seen; then it probes each {2^j} below both 3^B
// and the largest positive seen and keeps the silent ones. Positives arriving
// meanwhile go straight into the Pow32Finite hypothesis, which afterwards
// grows Gold-style.
class PbcegisFamily3Learner final : public Learner {
 public:
  std::string_view id() const override { return kPbcegisFamily3; }

  LearnerState initial_state() const override {
    return {Language::universe(), {kTail, kNoExponent, 0, 0, 0}};
  }

  std::optional<ProposedQuery> query(const LearnerState& state) const override {
    switch (state.aux[kPhase]) {
      case kBound:
        return ProposedQuery{Language::finite({pow3(static_cast<unsigned>(state.aux[kCursor]))}), true};
      case kRecover:
        return ProposedQuery{Language::finite({Example{1} << state.aux[kCursor]}), true};
      default:
        return ProposedQuery{state.hypothesis, false};
    }
  }

  std::optional<std::size_t> memory_bound() const override {
    const std::size_t widest = std::max({encoded_size(Language::universe()), encoded_size(Language::pow2_at_least(0)),
                                         encoded_size(Language::pow32_finite({}))});
    return state_size_bound(widest, 5);
  }

 protected:
  LearnerState advance(const LearnerState& state, MaybeExample positive, MaybeExample cex) const override {
    LearnerState next = state;
    auto& aux = next.aux;
    const std::uint64_t phase = aux[kPhase];
    bool start_recovery = false;

    if (phase == kBound) {
      if (cex && aux[kCursor] < kMaxPow3Exponent) {
        ++aux[kCursor];
      } else {
        aux[kBoundExp] = cex ? kMaxPow3Exponent + 1 : aux[kCursor];
        start_recovery = true;
      }
    } else if (phase == kRecover) {
      if (!cex) next.hypothesis = with_term(next.hypothesis, Pow32Term{0, static_cast<unsigned>(aux[kCursor])});
    } else if (phase == kGold && cex) {
      next.hypothesis = without_term(next.hypothesis, *cex);
    }

    if (positive) {
      aux[kTop] = std::max<std::uint64_t>(aux[kTop], *positive);
      const auto term = as_pow32_term(*positive);
      if (phase == kTail) {
        if (term && term->three == 0) {
          aux[kMinExp] = std::min<std::uint64_t>(aux[kMinExp], term->two);
          next.hypothesis = Language::pow2_at_least(static_cast<unsigned>(aux[kMinExp]));
        } else if (term && term->two <= kMaxPow32Exponent) {
          aux[kPhase] = kBound;
          aux[kCursor] = 2;
          next.hypothesis = Language::pow32_finite({*term});
        }
      } else if (term && term->two <= kMaxPow32Exponent) {
        next.hypothesis = with_term(next.hypothesis, *term);
      }
    }

    if (start_recovery) {
      aux[kPhase] = kRecover;
      seek_probe(next, 0);
    } else if (phase == kRecover) {
      seek_probe(next, aux[kCursor] + 1);
    }
    return next;
  }

 private:
  static constexpr std::size_t kPhase = 0;
  static constexpr std::size_t kMinExp = 1;
  static constexpr std::size_t kCursor = 2;
  static constexpr std::size_t kBoundExp = 3;
  static constexpr std::size_t kTop = 4;

  static constexpr std::uint64_t kTail = 0;
  static constexpr std::uint64_t kBound = 1;
  static constexpr std::uint64_t kRecover = 2;
  static constexpr std::uint64_t kGold = 3;
  static constexpr std::uint64_t kNoExponent = 64;

  // Points the cursor at the next exponent worth probing, or finishes recovery.
  static void seek_probe(LearnerState& state, std::uint64_t from) {
    auto& aux = state.aux;
    const Example ceiling = pow3(static_cast<unsigned>(aux[kBoundExp]));
    for (std::uint64_t j = from; j <= kMaxPow32Exponent; ++j) {
      const Example power = Example{1} << j;
      if (power >= ceiling || power >= aux[kTop]) break;
      aux[kCursor] = j;
      return;
    }
    const Example top = aux[kTop];
    if (is_power_of_two(top) && std::countr_zero(top) <= static_cast<int>(kMaxPow32Exponent)) {
      state.hypothesis = with_term(state.hypothesis, Pow32Term{0, static_cast<unsigned>(std::countr_zero(top))});
    }
    aux[kPhase] = kGold;
    aux[kCursor] = 0;
  }
};

// Walks a fixed enumeration of concepts, moving forward to the first concept
// consistent with the newest labeled example whenever the current one is not.
class ConsistentEnumLearner final : public Learner {
 public:
  explicit ConsistentEnumLearner(std::vector<Language> concepts) : concepts_(std::move(concepts)) {
    if (concepts_.empty()) throw InvalidConfig("consistent-enum needs a nonempty concept list");
  }

  std::string_view id() const override { return kConsistentEnum; }

  LearnerState initial_state() const override { return {concepts_.front(), {0}}; }

  std::optional<ProposedQuery> query(const LearnerState& state) const override {
    return ProposedQuery{state.hypothesis, false};
  }

  std::optional<std::size_t> memory_bound() const override {
    std::size_t widest = 0;
    for (const Language& c : concepts_) widest = std::max(widest, encoded_size(c));
    return state_size_bound(widest, 1);
  }

 protected:
  LearnerState advance(const LearnerState& state, MaybeExample positive, MaybeExample cex) const override {
    const auto consistent = [&](const Language& c) {
      return (!positive || contains(c, *positive)) && (!cex || !contains(c, *cex));
    };
    const std::size_t index = static_cast<std::size_t>(state.aux[0]);
    if (consistent(concepts_[index])) return state;
    for (std::size_t j = index + 1; j < concepts_.size(); ++j) {
      if (consistent(concepts_[j])) return {concepts_[j], {j}};
    }
    throw NoConsistentConcept("no concept after index " + std::to_string(index) + " is consistent with the dialogue");
  }

 private:
  std::vector<Language> concepts_;
};

// Stores the full history in its state; hypothesis from learn_batch.
class BatchLearner final : public Learner {
 public:
  explicit BatchLearner(std::string_view id) : id_(id) {}

  std::string_view id() const override { return id_; }

  LearnerState initial_state() const override { return {learn_batch(id_, History{}), {0}}; }

  std::optional<ProposedQuery> query(const LearnerState& state) const override {
    return ProposedQuery{state.hypothesis, false};
  }

 protected:
  LearnerState advance(const LearnerState& state, MaybeExample positive, MaybeExample cex) const override {
    History history;
    const std::size_t npos = static_cast<std::size_t>(state.aux[0]);
    history.positives.insert(state.aux.begin() + 1, state.aux.begin() + 1 + static_cast<std::ptrdiff_t>(npos));
    history.negatives.insert(state.aux.begin() + 1 + static_cast<std::ptrdiff_t>(npos), state.aux.end());
    if (positive) history.positives.insert(*positive);
    if (cex) history.negatives.insert(*cex);

    LearnerState next{learn_batch(id_, history), {history.positives.size()}};
    next.aux.insert(next.aux.end(), history.positives.begin(), history.positives.end());
    next.aux.insert(next.aux.end(), history.negatives.begin(), history.negatives.end());
    return next;
  }

 private:
  std::string_view id_;
};

}  // namespace

std::size_t encoded_size(const Language& language) {
  std::vector<std::uint8_t> bytes;
  encode(bytes, language);
  return bytes.size();
}

std::vector<std::uint8_t> LearnerState::serialize() const {
  std::vector<std::uint8_t> out;
  encode(out, hypothesis);
  put_u32(out, static_cast<std::uint32_t>(aux.size()));
  for (std::uint64_t v : aux) put_u64(out, v);
  return out;
}

std::size_t LearnerState::serialized_size() const { return serialize().size(); }

LearnerState Learner::step(const LearnerState& state, MaybeExample positive, MaybeExample counterexample) const {
  if (positive && counterexample && *positive == *counterexample) {
    throw InconsistentInput("example " + std::to_string(*positive) + " delivered as both positive and counterexample");
  }
  return advance(state, positive, counterexample);
}

std::vector<std::string> learner_ids() {
  return {std::string(kGoldFinite),     std::string(kGoldLast3),   std::string(kChain),
          std::string(kPbcegisFamily3), std::string(kConsistentEnum), std::string(kBatchSample),
          std::string(kBatchFamily3)};
}

std::unique_ptr<Learner> make_learner(std::string_view id, const LearnerContext& context) {
  if (id == kGoldFinite) return std::make_unique<GoldFiniteLearner>();
  if (id == kGoldLast3) return std::make_unique<GoldLastLearner>();
  if (id == kChain) return std::make_unique<ChainLearner>(context.chain_limit);
  if (id == kPbcegisFamily3) return std::make_unique<PbcegisFamily3Learner>();
  if (id == kConsistentEnum) return std::make_unique<ConsistentEnumLearner>(context.concepts);
  if (id == kBatchSample) return std::make_unique<BatchLearner>(kBatchSample);
  if (id == kBatchFamily3) return std::make_unique<BatchLearner>(kBatchFamily3);
  throw UnknownLearner("unknown learner '" + std::string(id) + "'");
}

LearnerState learn_step(std::string_view id, const LearnerState& state, MaybeExample positive,
                        MaybeExample counterexample, const LearnerContext& context) {
  return make_learner(id, context)->step(state, positive, counterexample);
}

bool History::consistent() const {
  return std::none_of(positives.begin(), positives.end(), [&](Example p) { return negatives.contains(p); });
}

namespace {

Language sample_hypothesis(const History& history) {
  if (history.positives.empty()) {
    if (history.negatives.empty()) return Language::universe();
    const Example top = *history.negatives.rbegin();
    if (top == kMaxExample) return Language::empty();
    return Language::all_above(top);
  }
  return Language::finite({history.positives.begin(), history.positives.end()});
}

std::optional<Language> family3_hypothesis(const History& history) {
  if (history.positives.empty()) return std::nullopt;
  std::vector<Pow32Term> terms;
  bool has_three = false;
  for (Example p : history.positives) {
    const auto term = as_pow32_term(p);
    if (!term || term->two > kMaxPow32Exponent) return std::nullopt;
    has_three = has_three || term->three == 1;
    terms.push_back(*term);
  }
  if (!has_three) {
    const unsigned least = terms.front().two;
    const Language tail = Language::pow2_at_least(least);
    const bool clean = std::none_of(history.negatives.begin(), history.negatives.end(),
                                    [&](Example n) { return contains(tail, n); });
    if (clean) return tail;
  }
  return Language::pow32_finite(terms);
}

}  // namespace

Language learn_batch(std::string_view id, const History& history) {
  if (!history.consistent()) return Language::empty();
  if (id == kBatchFamily3) {
    if (auto h = family3_hypothesis(history)) return *h;
    return sample_hypothesis(history);
  }
  if (id == kBatchSample) return sample_hypothesis(history);
  throw UnknownLearner("unknown infinite-memory learner '" + std::string(id) + "'");
}

MaybeExample HcheckOracle::correctness(const Language& candidate) {
  ++queries_;
  return hcheck(target_, candidate, seen_);
}

Example pow3(unsigned k) {
  Example v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (v > kMaxExample / 3) return kMaxExample;
    v *= 3;
  }
  return v;
}

unsigned pb_discover_bound(HcheckOracle& oracle) {
  const auto seen = oracle.seen();
  const bool triggered = std::any_of(seen.begin(), seen.end(), [](Example e) {
    const auto term = as_pow32_term(e);
    return term && term->three == 1;
  });
  if (!triggered) throw PhaseError("bound discovery needs a positive of the form 3*2^j");
  for (unsigned k = 2; k <= kMaxPow3Exponent; ++k) {
    if (!oracle.correctness(Language::finite({pow3(k)}))) return k;
  }
  return kMaxPow3Exponent + 1;
}

std::vector<Example> pb_recover_positives(HcheckOracle& oracle, unsigned bound_exponent, Example largest_seen) {
  std::vector<Example> recovered;
  const Example ceiling = pow3(bound_exponent);
  for (unsigned j = 0; j <= kMaxPow32Exponent; ++j) {
    const Example power = Example{1} << j;
    if (power >= ceiling || power > largest_seen) break;
    if (power == largest_seen || !oracle.correctness(Language::finite({power}))) recovered.push_back(power);
  }
  return recovered;
}

}  // namespace ogis
