#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ogis/language.hpp"

namespace ogis {

// Hypothesis plus a learner-specific record of naturals. Together they are
// the learner's whole memory between dialogue steps.
struct LearnerState {
  Language hypothesis;
  std::vector<std::uint64_t> aux;

  std::vector<std::uint8_t> serialize() const;
  std::size_t serialized_size() const;

  friend bool operator==(const LearnerState&, const LearnerState&) = default;
};

// Byte length of the encoding used by LearnerState::serialize.
std::size_t encoded_size(const Language& language);

// The correctness query a learner issues in a step. Probes ask about a
// language other than the current hypothesis.
struct ProposedQuery {
  Language candidate;
  bool probe = false;
};

class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string_view id() const = 0;
  virtual LearnerState initial_state() const = 0;

  // Correctness query for the coming step; bottom when the learner has
  // nothing to ask.
  virtual std::optional<ProposedQuery> query(const LearnerState& state) const = 0;

  // One learn(L_n, τ(n), cex(n)) step. Throws InconsistentInput when the
  // positive example and the counterexample coincide.
  LearnerState step(const LearnerState& state, MaybeExample positive, MaybeExample counterexample) const;

  // Constant bound on serialized state size, or bottom for learners whose
  // memory grows with the dialogue.
  virtual std::optional<std::size_t> memory_bound() const { return std::nullopt; }

 protected:
  virtual LearnerState advance(const LearnerState& state, MaybeExample positive,
                               MaybeExample counterexample) const = 0;
};

struct LearnerContext {
  // Largest index the chain learner may guess.
  Example chain_limit = 64;
  // Enumeration order for consistent-enum.
  std::vector<Language> concepts;
};

inline constexpr std::string_view kGoldFinite = "gold-finite";
inline constexpr std::string_view kGoldLast3 = "gold-last3";
inline constexpr std::string_view kChain = "chain";
inline constexpr std::string_view kPbcegisFamily3 = "pbcegis-family3";
inline constexpr std::string_view kConsistentEnum = "consistent-enum";
inline constexpr std::string_view kBatchSample = "batch-sample";
inline constexpr std::string_view kBatchFamily3 = "batch-family3";

std::vector<std::string> learner_ids();
// Throws UnknownLearner.
std::unique_ptr<Learner> make_learner(std::string_view id, const LearnerContext& context = {});

// Registry-level learn step.
LearnerState learn_step(std::string_view id, const LearnerState& state, MaybeExample positive,
                        MaybeExample counterexample, const LearnerContext& context = {});

// ---------------------------------------------------------------------------
// Infinite-memory learners
// ---------------------------------------------------------------------------

struct History {
  std::set<Example> positives;
  std::set<Example> negatives;

  bool consistent() const;
};

// A catalog hypothesis containing every positive and no negative; Empty when
// the history itself is inconsistent. `id` is kBatchSample or kBatchFamily3.
Language learn_batch(std::string_view id, const History& history);

// ---------------------------------------------------------------------------
// Positive-history recovery used by the pbcegis family-3 learner
// ---------------------------------------------------------------------------

// Answers correctness queries with HCHECK against a fixed seen prefix.
class HcheckOracle {
 public:
  HcheckOracle(Language target, std::vector<Example> seen) : target_(std::move(target)), seen_(std::move(seen)) {}

  MaybeExample correctness(const Language& candidate);

  std::span<const Example> seen() const { return seen_; }
  std::size_t queries() const { return queries_; }

 private:
  Language target_;
  std::vector<Example> seen_;
  std::size_t queries_ = 0;
};

// Largest k for which 3^k is representable.
inline constexpr unsigned kMaxPow3Exponent = 40;

// Least k >= 2 such that the singleton {3^k} draws no counterexample, so 3^k
// bounds every seen positive. Returns kMaxPow3Exponent + 1 when even 3^40 is
// exceeded. Throws PhaseError unless some seen positive has the form 3*2^j.
unsigned pb_discover_bound(HcheckOracle& oracle);

// Powers 2^j < 3^bound_exponent that are in the target and were seen. Each
// 2^j below `largest_seen` is probed with {2^j}; 2^j == largest_seen is taken
// directly since a silent probe there would not separate "member" from
// "beyond every positive".
std::vector<Example> pb_recover_positives(HcheckOracle& oracle, unsigned bound_exponent, Example largest_seen);

// 3^k, saturating at the largest representable value.
Example pow3(unsigned k);

}  // namespace ogis
