#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>

#include "ogis/language.hpp"

namespace ogis {

// Deterministic stand-ins for the nondeterministic choice made by an
// arbitrary counterexample verifier.
struct AscendingStrategy {
  friend bool operator==(const AscendingStrategy&, const AscendingStrategy&) = default;
};
// Largest witness <= cap; falls back to the least witness when none is <= cap.
struct DescendingCappedStrategy {
  Example cap = 0;
  friend bool operator==(const DescendingCappedStrategy&, const DescendingCappedStrategy&) = default;
};
// Picks among the kRandomPool smallest witnesses using a hash of the seed and
// both languages.
struct SeededRandomStrategy {
  std::uint64_t seed = 0;
  friend bool operator==(const SeededRandomStrategy&, const SeededRandomStrategy&) = default;
};

using CheckStrategy = std::variant<AscendingStrategy, DescendingCappedStrategy, SeededRandomStrategy>;

inline constexpr std::size_t kRandomPool = 64;

// "ascending", "descending:H", "random:SEED"
std::string to_string(const CheckStrategy& strategy);
CheckStrategy parse_strategy(std::string_view text);

struct ArbitraryVerifier {
  CheckStrategy strategy;
  friend bool operator==(const ArbitraryVerifier&, const ArbitraryVerifier&) = default;
};
struct MinimalVerifier {
  friend bool operator==(const MinimalVerifier&, const MinimalVerifier&) = default;
};
struct ConstantBoundedVerifier {
  Example bound = 0;
  friend bool operator==(const ConstantBoundedVerifier&, const ConstantBoundedVerifier&) = default;
};
struct PositiveBoundedVerifier {
  friend bool operator==(const PositiveBoundedVerifier&, const PositiveBoundedVerifier&) = default;
};

using VerifierKind = std::variant<ArbitraryVerifier, MinimalVerifier, ConstantBoundedVerifier, PositiveBoundedVerifier>;

// "check", "mincheck", "bcheck:B", "hcheck"; the check strategy is rendered separately.
std::string to_string(const VerifierKind& kind);
// Accepts the forms produced by to_string; `strategy` fills in ArbitraryVerifier.
VerifierKind parse_verifier(std::string_view text, const CheckStrategy& strategy = AscendingStrategy{});

// CHECK and MINCHECK answer bottom exactly on subset candidates; BCHECK and
// HCHECK may stay silent on wrong ones.
bool is_complete(const VerifierKind& kind);

// A candidate language with some elements removed and an optional exclusive
// ceiling. Used by the simulations of bounded verifiers on top of CHECK.
class WorkingCandidate {
 public:
  explicit WorkingCandidate(Language base) : base_(std::move(base)) {}

  void excise(Example x) { excised_.insert(x); }
  void set_ceiling(Example ceiling) { ceiling_ = ceiling; }

  bool contains(Example x) const;
  const Language& base() const { return base_; }
  std::size_t excised_count() const { return excised_.size(); }
  std::optional<Example> ceiling() const { return ceiling_; }

  // Least/greatest element of (this \ target) bounded by from/upto.
  MaybeExample next_witness(const Language& target, Example from) const;
  MaybeExample prev_witness(const Language& target, Example upto) const;

  Language restricted_to(Example j) const;

 private:
  Language base_;
  std::unordered_set<Example> excised_;
  std::optional<Example> ceiling_;
};

// CHECK: bottom iff candidate ⊆ target, otherwise some element of
// candidate \ target chosen by the strategy.
MaybeExample check(const Language& target, const Language& candidate, const CheckStrategy& strategy);
MaybeExample check(const Language& target, const WorkingCandidate& candidate, const CheckStrategy& strategy);

// MINCHECK: least element of candidate \ target.
MaybeExample mincheck(const Language& target, const Language& candidate);

// BCHECK: least m < bound in candidate \ target. Bottom does not imply subset.
MaybeExample bcheck(Example bound, const Language& target, const Language& candidate);

// HCHECK: least m in candidate \ target with m < some seen positive.
// Bottom does not imply subset.
MaybeExample hcheck(const Language& target, const Language& candidate, std::span<const Example> seen);

// MINCHECK computed only from CHECK calls: c = CHECK(target, candidate), then
// the least j <= c with CHECK(target ∩ {j}, candidate ∩ {j}) != bottom, j
// running over the members of the candidate.
MaybeExample mincheck_via_check(const Language& target, const Language& candidate, const CheckStrategy& strategy);

inline constexpr std::size_t kMaxExcisions = 100000;
// After this many single excisions the filters drop the candidate's whole tail
// at or above the threshold in one step.
inline constexpr std::size_t kExcisionsBeforeCeiling = 32;

// BCHECK simulated with CHECK: witnesses >= bound are excised and CHECK is
// asked again. Throws BudgetExhausted past kMaxExcisions.
MaybeExample cb_filter_via_check(Example bound, const Language& target, const Language& candidate,
                                 const CheckStrategy& strategy);

// HCHECK simulated with CHECK; the threshold is the largest seen positive.
MaybeExample pb_filter_via_check(const Language& target, const Language& candidate, std::span<const Example> seen,
                                 const CheckStrategy& strategy);

// Dispatches on the verifier kind. `seen` is only read by HCHECK.
MaybeExample verify(const VerifierKind& kind, const Language& target, const Language& candidate,
                    std::span<const Example> seen);

}  // namespace ogis
