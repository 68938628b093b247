#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ogis/language.hpp"

namespace ogis {

// ---------------------------------------------------------------------------
// Transcripts
// ---------------------------------------------------------------------------

struct AscendingOrder {
  friend bool operator==(const AscendingOrder&, const AscendingOrder&) = default;
};

// Members are drawn in ascending blocks of kShuffleBlock and each block is
// permuted by a seeded Fisher-Yates pass. Finite sources no larger than one
// block are fully shuffled.
struct ShuffledOrder {
  std::uint64_t seed = 0;
  friend bool operator==(const ShuffledOrder&, const ShuffledOrder&) = default;
};

// An explicit prefix; bottom follows once it is used up.
struct ScriptedOrder {
  std::vector<Example> script;
  friend bool operator==(const ScriptedOrder&, const ScriptedOrder&) = default;
};

using TranscriptOrder = std::variant<AscendingOrder, ShuffledOrder, ScriptedOrder>;

inline constexpr std::size_t kShuffleBlock = 32;

std::string to_string(const TranscriptOrder& order);

// Positive-example stream for a source language. Never repeats an example;
// once the source (or the script) is exhausted every further entry is bottom.
class Transcript {
 public:
  Transcript(Language source, TranscriptOrder order);

  MaybeExample next();

  const Language& source() const { return source_; }
  const TranscriptOrder& order() const { return order_; }
  const std::vector<MaybeExample>& emitted() const { return emitted_; }

  // SAMPLE of the emitted prefix, ascending.
  std::vector<Example> sample() const;

 private:
  void refill();

  Language source_;
  TranscriptOrder order_;
  std::vector<MaybeExample> emitted_;
  std::deque<Example> pending_;
  std::optional<Example> cursor_ = Example{0};  // next value to enumerate from
  std::mt19937_64 rng_;
  std::size_t script_pos_ = 0;
};

// ---------------------------------------------------------------------------
// Counterexample sequences
// ---------------------------------------------------------------------------

struct CexEntry {
  MaybeExample counterexample;
  std::string verifier;
  Language candidate;
  bool probe = false;
};

class CexSequence {
 public:
  void push(CexEntry entry) { entries_.push_back(std::move(entry)); }
  const std::vector<CexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Every non-bottom entry lies in its candidate and outside the target.
  bool sound_for(const Language& target) const;
  // No counterexample coincides with a transcript example.
  bool consistent_with(const Transcript& transcript) const;

 private:
  std::vector<CexEntry> entries_;
};

// ---------------------------------------------------------------------------
// Queries and responses
// ---------------------------------------------------------------------------

enum class QueryType : std::uint8_t {
  kMembership,
  kPositiveWitness,
  kNegativeWitness,
  kCorrectness,
  kCraftedCorrectness,
  kDistinguishingInput,
};

enum class ResponseType : std::uint8_t {
  kLabel,
  kWitness,
  kVerdict,
  kDistinguisher,
};

struct MembershipQuery {
  Example x = 0;
};
struct PositiveWitnessQuery {};
struct NegativeWitnessQuery {};
struct CorrectnessQuery {
  Language candidate;
};
// Modeled for interface completeness only; no oracle answers it.
struct CraftedCorrectnessQuery {
  Language candidate;
  Language reference;
};
struct DistinguishingInputQuery {
  std::vector<Example> examples;
  Language candidate;
};

using Query = std::variant<MembershipQuery, PositiveWitnessQuery, NegativeWitnessQuery, CorrectnessQuery,
                           CraftedCorrectnessQuery, DistinguishingInputQuery>;

enum class Label : std::uint8_t { kPositive, kNegative };

struct LabelResponse {
  Label label = Label::kNegative;
};
struct WitnessResponse {
  MaybeExample witness;
};
// counterexample == bottom means "yes, correct".
struct VerdictResponse {
  MaybeExample counterexample;
};
struct DistinguisherResponse {
  std::optional<std::pair<Language, Example>> other;
};

using Response = std::variant<LabelResponse, WitnessResponse, VerdictResponse, DistinguisherResponse>;

QueryType type_of(const Query& query);
ResponseType type_of(const Response& response);
std::string_view to_string(QueryType type);
std::string_view to_string(ResponseType type);
std::string_view to_string(Label label);

// The (query type, response type) pairs an oracle is allowed to exchange.
class OracleInterfaceSpec {
 public:
  OracleInterfaceSpec() = default;
  explicit OracleInterfaceSpec(std::set<std::pair<QueryType, ResponseType>> allowed)
      : allowed_(std::move(allowed)) {}

  // {PositiveWitness -> Witness, Correctness -> Verdict}
  static OracleInterfaceSpec cegis();
  // CEGIS plus membership and distinguishing-input queries.
  static OracleInterfaceSpec finite_ogis();

  bool allows(QueryType type) const;
  bool conforms(const Query& query, const Response& response) const;
  const std::set<std::pair<QueryType, ResponseType>>& allowed() const { return allowed_; }

  friend bool operator==(const OracleInterfaceSpec&, const OracleInterfaceSpec&) = default;

 private:
  std::set<std::pair<QueryType, ResponseType>> allowed_;
};

}  // namespace ogis
