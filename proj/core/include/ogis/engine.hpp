#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ogis/dialogue.hpp"
#include "ogis/language.hpp"
#include "ogis/learners.hpp"
#include "ogis/verifiers.hpp"

namespace ogis {

struct RunConfig {
  // Family label echoed in reports, e.g. "notpb:20".
  std::string family;
  Language target;
  VerifierKind verifier = ArbitraryVerifier{AscendingStrategy{}};
  std::string learner{kChain};
  LearnerContext context;
  TranscriptOrder order = AscendingOrder{};
  // Maximum number of dialogue steps. Zero runs nothing.
  std::size_t budget = 1000;
  // Unchanged hypothesis for this many non-probe steps counts as converged.
  std::size_t window = 25;
  // Limit on the serialized state of finite-memory learners, in bytes.
  std::size_t memory_bound = 4096;
  std::uint64_t seed = 42;
};

// Throws InvalidConfig unless window >= 1 and budget is 0 or >= window.
void validate(const RunConfig& config);

// One round of the dialogue: a positive-witness query answered from the
// transcript and, if the learner asked one, a correctness query.
struct StepRecord {
  std::size_t step = 0;
  MaybeExample positive;
  std::optional<Language> candidate;
  bool probe = false;
  MaybeExample counterexample;
};

struct TraceEntry {
  std::size_t step = 0;
  Language hypothesis;
};

struct RunResult {
  RunConfig config;
  bool converged = false;
  bool identified = false;
  Language final_hypothesis;
  std::size_t steps_used = 0;
  std::size_t positive_queries = 0;
  std::size_t correctness_queries = 0;
  std::size_t probe_queries = 0;
  std::size_t counterexamples = 0;
  // Step 0 holds the initial hypothesis; later entries record changes only.
  std::vector<TraceEntry> hypothesis_trace;
  // Serialized learner state size before the first step and after each step.
  std::vector<std::size_t> state_bytes;
  std::size_t max_state_bytes = 0;
  std::vector<StepRecord> steps;
};

// Throws InvalidConfig, UnknownLearner, MemoryBoundExceeded and
// InconsistentOracle.
RunResult run_cegis(const RunConfig& config);

// Every exchange of the run as (query, response) pairs, in dialogue order.
std::vector<std::pair<Query, Response>> dialogue(const RunResult& result);

// Largest entry; 0 for an empty span.
std::size_t audit_memory(std::span<const std::size_t> state_bytes);

struct OrdersResult {
  std::vector<RunResult> runs;  // same order as the input orders
  bool identified_all = false;
  std::size_t identified_count = 0;
};

// Runs `config` once per transcript order, concurrently, and merges the
// results by input position. Throws InvalidConfig when `orders` is empty.
OrdersResult identify_over_orders(const RunConfig& config, std::span<const TranscriptOrder> orders);

// Orders used by the separation battery: ascending followed by `shuffles`
// seeded shuffles derived from `seed`.
std::vector<TranscriptOrder> standard_orders(std::size_t shuffles, std::uint64_t seed);

struct AdversaryParams {
  // Powers of two 2^0..2^max_exponent and triggers 3*2^p with p <= max_exponent.
  unsigned max_exponent = 4;
  // Number of times the trigger 3*2^p is repeated.
  std::size_t repeats = 3;
  // Bottom steps with an unchanged state after which a run is considered settled.
  std::size_t settle = 16;
};

// Two transcripts of different targets after which the learner ends in the
// same state: prefix then trigger repeated, and prefix, extra, trigger repeated.
struct ConfusionWitness {
  std::vector<Example> prefix;
  Example extra = 0;
  Example trigger = 0;
  Language target_without;
  Language target_with;
  Language hypothesis_without;
  Language hypothesis_with;
  std::size_t steps_used = 0;
};

struct AdversaryOutcome {
  std::optional<ConfusionWitness> witness;
  std::size_t steps_used = 0;
  std::size_t pairs_tried = 0;
};

// Searches for a ConfusionWitness spending at most `budget` learner steps.
// Counterexamples come from HCHECK for pbcegis-family3 and from ascending
// CHECK otherwise, each computed against the run's own target.
AdversaryOutcome adversary_search(std::string_view learner_id, const AdversaryParams& params, std::size_t budget,
                                  const LearnerContext& context = {});

nlohmann::json to_json(const RunConfig& config);
// {schema, config, metrics, hypothesis_trace}
nlohmann::json to_json(const RunResult& result);
nlohmann::json to_json(const ConfusionWitness& witness);

inline constexpr std::string_view kRunResultSchema = "ogis-lab/run-result/1";

}  // namespace ogis
