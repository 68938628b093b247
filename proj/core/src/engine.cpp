#include "ogis/engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "ogis/errors.hpp"

namespace ogis {

namespace {

void check_oracle(const StepRecord& record, const Language& target, const std::set<Example>& positives,
                  const std::set<Example>& counterexamples) {
  if (record.counterexample) {
    const Example c = *record.counterexample;
    if (!contains(*record.candidate, c) || contains(target, c)) {
      throw InconsistentOracle("counterexample " + std::to_string(c) + " is not in " + to_string(*record.candidate) +
                               " \\ " + to_string(target));
    }
    if (positives.contains(c) || (record.positive && *record.positive == c)) {
      throw InconsistentOracle("example " + std::to_string(c) + " is both positive and a counterexample");
    }
  }
  if (record.positive) {
    const Example p = *record.positive;
    if (positives.contains(p)) throw InconsistentOracle("positive example " + std::to_string(p) + " repeated");
    if (counterexamples.contains(p)) {
      throw InconsistentOracle("example " + std::to_string(p) + " is both positive and a counterexample");
    }
  }
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.window == 0) throw InvalidConfig("stability window must be at least 1");
  if (config.budget != 0 && config.budget < config.window) {
    throw InvalidConfig("step budget " + std::to_string(config.budget) + " is smaller than the stability window " +
                        std::to_string(config.window));
  }
}

RunResult run_cegis(const RunConfig& config) {
  validate(config);
  const auto learner = make_learner(config.learner, config.context);
  const bool audited = learner->memory_bound().has_value();
  const bool complete = is_complete(config.verifier);

  RunResult result;
  result.config = config;

  LearnerState state = learner->initial_state();
  const auto record_bytes = [&](const LearnerState& s) {
    const std::size_t bytes = s.serialized_size();
    result.state_bytes.push_back(bytes);
    if (audited && bytes > config.memory_bound) throw MemoryBoundExceeded(bytes, config.memory_bound);
  };
  record_bytes(state);
  result.hypothesis_trace.push_back({0, state.hypothesis});

  Transcript transcript(config.target, config.order);
  std::vector<Example> seen;
  std::set<Example> positives;
  std::set<Example> counterexamples;
  // Latest verdict for each hypothesis rendering that was proposed as such.
  std::map<std::string, MaybeExample> verdicts;
  std::size_t stable = 0;

  for (std::size_t step = 1; step <= config.budget; ++step) {
    StepRecord record;
    record.step = step;
    const std::optional<ProposedQuery> query = learner->query(state);
    if (query) {
      record.candidate = query->candidate;
      record.probe = query->probe;
      record.counterexample = verify(config.verifier, config.target, query->candidate, seen);
      ++result.correctness_queries;
      if (query->probe) ++result.probe_queries;
      if (record.counterexample) ++result.counterexamples;
      if (!query->probe) verdicts[to_string(query->candidate)] = record.counterexample;
    }
    record.positive = transcript.next();
    ++result.positive_queries;
    check_oracle(record, config.target, positives, counterexamples);
    if (record.positive) {
      positives.insert(*record.positive);
      seen.push_back(*record.positive);
    }
    if (record.counterexample) counterexamples.insert(*record.counterexample);

    LearnerState next = learner->step(state, record.positive, record.counterexample);
    record_bytes(next);
    if (next.hypothesis != state.hypothesis) {
      stable = 0;
      result.hypothesis_trace.push_back({step, next.hypothesis});
    } else if (!record.probe) {
      ++stable;
    }
    state = std::move(next);
    result.steps.push_back(std::move(record));
    result.steps_used = step;

    if (stable >= config.window) {
      if (!complete) {
        result.converged = true;
        break;
      }
      const auto it = verdicts.find(to_string(state.hypothesis));
      if (it != verdicts.end() && !it->second) {
        result.converged = true;
        break;
      }
    }
  }

  result.final_hypothesis = state.hypothesis;
  result.identified = result.converged && languages_equal(state.hypothesis, config.target);
  result.max_state_bytes = audit_memory(result.state_bytes);
  return result;
}

std::vector<std::pair<Query, Response>> dialogue(const RunResult& result) {
  std::vector<std::pair<Query, Response>> out;
  for (const StepRecord& r : result.steps) {
    if (r.candidate) out.emplace_back(CorrectnessQuery{*r.candidate}, VerdictResponse{r.counterexample});
    out.emplace_back(PositiveWitnessQuery{}, WitnessResponse{r.positive});
  }
  return out;
}

std::size_t audit_memory(std::span<const std::size_t> state_bytes) {
  return state_bytes.empty() ? 0 : *std::max_element(state_bytes.begin(), state_bytes.end());
}

OrdersResult identify_over_orders(const RunConfig& config, std::span<const TranscriptOrder> orders) {
  if (orders.empty()) throw InvalidConfig("at least one transcript order is required");
  std::vector<std::future<RunResult>> pending;
  pending.reserve(orders.size());
  for (const TranscriptOrder& order : orders) {
    RunConfig c = config;
    c.order = order;
    pending.push_back(std::async(std::launch::async, [c = std::move(c)] { return run_cegis(c); }));
  }
  OrdersResult out;
  for (auto& f : pending) out.runs.push_back(f.get());
  out.identified_count = static_cast<std::size_t>(
      std::count_if(out.runs.begin(), out.runs.end(), [](const RunResult& r) { return r.identified; }));
  out.identified_all = out.identified_count == out.runs.size();
  return out;
}

std::vector<TranscriptOrder> standard_orders(std::size_t shuffles, std::uint64_t seed) {
  std::vector<TranscriptOrder> orders{AscendingOrder{}};
  for (std::size_t i = 0; i < shuffles; ++i) orders.emplace_back(ShuffledOrder{seed + i});
  return orders;
}

namespace {

struct Replay {
  LearnerState state;
  std::size_t steps = 0;
  bool exhausted = false;
};

// Feeds `positives` and then bottoms until the state holds still for
// `settle` steps, answering correctness queries against `target`.
Replay replay(const Learner& learner, const Language& target, std::span<const Example> positives, bool bounded,
              std::size_t settle, std::size_t budget) {
  Replay out{learner.initial_state()};
  std::vector<Example> seen;
  std::size_t still = 0;
  const std::size_t cap = positives.size() + settle + 256;
  for (std::size_t i = 0; i < cap; ++i) {
    if (out.steps == budget) {
      out.exhausted = true;
      return out;
    }
    MaybeExample cex;
    if (const auto q = learner.query(out.state)) {
      cex = bounded ? hcheck(target, q->candidate, seen) : check(target, q->candidate, AscendingStrategy{});
    }
    const MaybeExample positive = i < positives.size() ? MaybeExample(positives[i]) : std::nullopt;
    if (positive) seen.push_back(*positive);
    LearnerState next = learner.step(out.state, positive, cex);
    ++out.steps;
    if (i >= positives.size()) {
      still = next == out.state ? still + 1 : 0;
      if (still >= settle) {
        out.state = std::move(next);
        return out;
      }
    }
    out.state = std::move(next);
  }
  return out;
}

}  // namespace

AdversaryOutcome adversary_search(std::string_view learner_id, const AdversaryParams& params, std::size_t budget,
                                  const LearnerContext& context) {
  const auto learner = make_learner(learner_id, context);
  const bool bounded = learner_id == kPbcegisFamily3;
  const unsigned top = std::min(params.max_exponent, kMaxPow32Exponent);
  AdversaryOutcome outcome;

  for (unsigned s = 1; s <= top; ++s) {
    std::vector<Example> prefix;
    for (unsigned j = 0; j < s; ++j) prefix.push_back(Example{1} << j);
    for (unsigned m = s; m <= top; ++m) {
      for (unsigned p = 0; p <= top; ++p) {
        const Example extra = Example{1} << m;
        const Example trigger = Example{3} << p;
        std::vector<Example> without = prefix;
        without.insert(without.end(), params.repeats, trigger);
        std::vector<Example> with = prefix;
        with.push_back(extra);
        with.insert(with.end(), params.repeats, trigger);

        std::vector<Example> base = prefix;
        base.push_back(trigger);
        const Language target_without = Language::finite(base);
        base.push_back(extra);
        const Language target_with = Language::finite(base);

        ++outcome.pairs_tried;
        const Replay a = replay(*learner, target_without, without, bounded, params.settle, budget - outcome.steps_used);
        outcome.steps_used += a.steps;
        if (a.exhausted) return outcome;
        const Replay b = replay(*learner, target_with, with, bounded, params.settle, budget - outcome.steps_used);
        outcome.steps_used += b.steps;
        if (b.exhausted) return outcome;

        if (a.state.serialize() == b.state.serialize()) {
          outcome.witness = ConfusionWitness{prefix,
                                             extra,
                                             trigger,
                                             target_without,
                                             target_with,
                                             a.state.hypothesis,
                                             b.state.hypothesis,
                                             outcome.steps_used};
          return outcome;
        }
      }
    }
  }
  return outcome;
}

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json j;
  j["family"] = config.family;
  j["target"] = to_string(config.target);
  j["verifier"] = to_string(config.verifier);
  if (const auto* arbitrary = std::get_if<ArbitraryVerifier>(&config.verifier)) {
    j["strategy"] = to_string(arbitrary->strategy);
  } else {
    j["strategy"] = nullptr;
  }
  j["learner"] = config.learner;
  j["order"] = to_string(config.order);
  j["budget"] = config.budget;
  j["window"] = config.window;
  j["memory_bound"] = config.memory_bound;
  j["seed"] = config.seed;
  return j;
}

nlohmann::json to_json(const RunResult& result) {
  nlohmann::json metrics;
  metrics["converged"] = result.converged;
  metrics["identified"] = result.identified;
  metrics["final_hypothesis"] = to_string(result.final_hypothesis);
  metrics["steps_used"] = result.steps_used;
  metrics["positive_queries"] = result.positive_queries;
  metrics["correctness_queries"] = result.correctness_queries;
  metrics["probe_queries"] = result.probe_queries;
  metrics["counterexamples"] = result.counterexamples;
  metrics["max_state_bytes"] = result.max_state_bytes;

  nlohmann::json trace = nlohmann::json::array();
  for (const TraceEntry& e : result.hypothesis_trace) {
    trace.push_back({{"step", e.step}, {"hypothesis", to_string(e.hypothesis)}});
  }
  return {{"schema", kRunResultSchema}, {"config", to_json(result.config)}, {"metrics", metrics}, {"hypothesis_trace", trace}};
}

nlohmann::json to_json(const ConfusionWitness& witness) {
  return {{"prefix", witness.prefix},
          {"extra", witness.extra},
          {"trigger", witness.trigger},
          {"target_without", to_string(witness.target_without)},
          {"target_with", to_string(witness.target_with)},
          {"hypothesis_without", to_string(witness.hypothesis_without)},
          {"hypothesis_with", to_string(witness.hypothesis_with)},
          {"steps_used", witness.steps_used}};
}

}  // namespace ogis
