#include "ogis/dialogue.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "ogis/errors.hpp"

namespace ogis {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string to_string(const TranscriptOrder& order) {
  return std::visit(Overloaded{
                        [](const AscendingOrder&) { return std::string("ascending"); },
                        [](const ShuffledOrder& o) { return "shuffle:" + std::to_string(o.seed); },
                        [](const ScriptedOrder& o) {
                          std::string out = "scripted:";
                          for (std::size_t i = 0; i < o.script.size(); ++i) {
                            if (i != 0) out += ',';
                            out += std::to_string(o.script[i]);
                          }
                          return out;
                        },
                    },
                    order);
}

Transcript::Transcript(Language source, TranscriptOrder order) : source_(std::move(source)), order_(std::move(order)) {
  if (const auto* scripted = std::get_if<ScriptedOrder>(&order_)) {
    std::unordered_set<Example> seen;
    for (Example e : scripted->script) {
      if (!contains(source_, e)) {
        throw InvalidConfig("scripted transcript entry " + std::to_string(e) + " is not in " + to_string(source_));
      }
      if (!seen.insert(e).second) {
        throw InvalidConfig("scripted transcript repeats " + std::to_string(e));
      }
    }
  }
  if (const auto* shuffled = std::get_if<ShuffledOrder>(&order_)) {
    rng_.seed(shuffled->seed);
  }
}

void Transcript::refill() {
  const std::size_t block = std::holds_alternative<ShuffledOrder>(order_) ? kShuffleBlock : 1;
  std::vector<Example> chunk;
  while (chunk.size() < block && cursor_) {
    const MaybeExample m = next_member(source_, *cursor_);
    if (!m) {
      cursor_.reset();
      break;
    }
    chunk.push_back(*m);
    if (*m == std::numeric_limits<Example>::max()) {
      cursor_.reset();
    } else {
      cursor_ = *m + 1;
    }
  }
  if (std::holds_alternative<ShuffledOrder>(order_)) {
    for (std::size_t i = chunk.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng_() % i);
      std::swap(chunk[i - 1], chunk[j]);
    }
  }
  pending_.insert(pending_.end(), chunk.begin(), chunk.end());
}

MaybeExample Transcript::next() {
  MaybeExample out;
  if (const auto* scripted = std::get_if<ScriptedOrder>(&order_)) {
    if (script_pos_ < scripted->script.size()) out = scripted->script[script_pos_++];
  } else {
    if (pending_.empty()) refill();
    if (!pending_.empty()) {
      out = pending_.front();
      pending_.pop_front();
    }
  }
  emitted_.push_back(out);
  return out;
}

std::vector<Example> Transcript::sample() const {
  std::vector<Example> out;
  for (const MaybeExample& e : emitted_) {
    if (e) out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool CexSequence::sound_for(const Language& target) const {
  return std::all_of(entries_.begin(), entries_.end(), [&](const CexEntry& e) {
    return !e.counterexample || (contains(e.candidate, *e.counterexample) && !contains(target, *e.counterexample));
  });
}

bool CexSequence::consistent_with(const Transcript& transcript) const {
  const std::vector<Example> sample = transcript.sample();
  return std::none_of(entries_.begin(), entries_.end(), [&](const CexEntry& e) {
    return e.counterexample && std::binary_search(sample.begin(), sample.end(), *e.counterexample);
  });
}

QueryType type_of(const Query& query) {
  return std::visit(Overloaded{
                        [](const MembershipQuery&) { return QueryType::kMembership; },
                        [](const PositiveWitnessQuery&) { return QueryType::kPositiveWitness; },
                        [](const NegativeWitnessQuery&) { return QueryType::kNegativeWitness; },
                        [](const CorrectnessQuery&) { return QueryType::kCorrectness; },
                        [](const CraftedCorrectnessQuery&) { return QueryType::kCraftedCorrectness; },
                        [](const DistinguishingInputQuery&) { return QueryType::kDistinguishingInput; },
                    },
                    query);
}

ResponseType type_of(const Response& response) {
  return std::visit(Overloaded{
                        [](const LabelResponse&) { return ResponseType::kLabel; },
                        [](const WitnessResponse&) { return ResponseType::kWitness; },
                        [](const VerdictResponse&) { return ResponseType::kVerdict; },
                        [](const DistinguisherResponse&) { return ResponseType::kDistinguisher; },
                    },
                    response);
}

std::string_view to_string(QueryType type) {
  switch (type) {
    case QueryType::kMembership:
      return "membership";
    case QueryType::kPositiveWitness:
      return "positive-witness";
    case QueryType::kNegativeWitness:
      return "negative-witness";
    case QueryType::kCorrectness:
      return "correctness";
    case QueryType::kCraftedCorrectness:
      return "crafted-correctness";
    case QueryType::kDistinguishingInput:
      return "distinguishing-input";
  }
  return "?";
}

std::string_view to_string(ResponseType type) {
  switch (type) {
    case ResponseType::kLabel:
      return "label";
    case ResponseType::kWitness:
      return "witness";
    case ResponseType::kVerdict:
      return "verdict";
    case ResponseType::kDistinguisher:
      return "distinguisher";
  }
  return "?";
}

std::string_view to_string(Label label) { return label == Label::kPositive ? "positive" : "negative"; }

OracleInterfaceSpec OracleInterfaceSpec::cegis() {
  return OracleInterfaceSpec({
      {QueryType::kPositiveWitness, ResponseType::kWitness},
      {QueryType::kCorrectness, ResponseType::kVerdict},
  });
}

OracleInterfaceSpec OracleInterfaceSpec::finite_ogis() {
  return OracleInterfaceSpec({
      {QueryType::kPositiveWitness, ResponseType::kWitness},
      {QueryType::kCorrectness, ResponseType::kVerdict},
      {QueryType::kMembership, ResponseType::kLabel},
      {QueryType::kDistinguishingInput, ResponseType::kDistinguisher},
  });
}

bool OracleInterfaceSpec::allows(QueryType type) const {
  return std::any_of(allowed_.begin(), allowed_.end(), [&](const auto& p) { return p.first == type; });
}

bool OracleInterfaceSpec::conforms(const Query& query, const Response& response) const {
  return allowed_.contains({type_of(query), type_of(response)});
}

}  // namespace ogis
