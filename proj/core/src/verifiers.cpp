#include "ogis/verifiers.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <vector>

#include "ogis/errors.hpp"

namespace ogis {

namespace {

constexpr Example kMaxExample = std::numeric_limits<Example>::max();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(0, "invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

MaybeExample choose(const Language& target, const WorkingCandidate& candidate, const CheckStrategy& strategy) {
  const MaybeExample least = candidate.next_witness(target, 0);
  if (!least) return std::nullopt;
  return std::visit(
      Overloaded{
          [&](const AscendingStrategy&) -> MaybeExample { return least; },
          [&](const DescendingCappedStrategy& s) -> MaybeExample {
            const MaybeExample high = candidate.prev_witness(target, s.cap);
            return high ? high : least;
          },
          [&](const SeededRandomStrategy& s) -> MaybeExample {
            std::vector<Example> pool{*least};
            while (pool.size() < kRandomPool && pool.back() != kMaxExample) {
              const MaybeExample w = candidate.next_witness(target, pool.back() + 1);
              if (!w) break;
              pool.push_back(*w);
            }
            std::uint64_t h = fnv1a(to_string(candidate.base()), splitmix64(s.seed));
            h = fnv1a(to_string(target), h);
            h ^= candidate.excised_count();
            return pool[splitmix64(h) % pool.size()];
          },
      },
      strategy);
}

// Least j <= upto with CHECK(target ∩ {j}, candidate ∩ {j}) != bottom. Values
// of j outside the candidate are skipped: there candidate ∩ {j} is empty and
// CHECK is bottom without being asked.
MaybeExample scan_min(const Language& target, const WorkingCandidate& candidate, const CheckStrategy& strategy,
                      Example upto) {
  for (MaybeExample j = next_member(candidate.base(), 0); j && *j <= upto; j = next_member(candidate.base(), *j + 1)) {
    const Language t = singleton_restriction(target, *j);
    const Language c = candidate.restricted_to(*j);
    if (check(t, c, strategy)) return j;
    if (*j == upto) break;
  }
  return std::nullopt;
}

MaybeExample filter_via_check(Example threshold, const Language& target, const Language& candidate,
                              const CheckStrategy& strategy) {
  WorkingCandidate working(candidate);
  for (;;) {
    const MaybeExample w = check(target, working, strategy);
    if (!w) return std::nullopt;
    if (*w < threshold) return scan_min(target, working, strategy, *w);
    if (working.excised_count() >= kMaxExcisions) {
      throw BudgetExhausted("more than " + std::to_string(kMaxExcisions) + " excisions filtering " +
                            to_string(candidate) + " against " + to_string(target));
    }
    working.excise(*w);
    if (working.excised_count() == kExcisionsBeforeCeiling) working.set_ceiling(threshold);
  }
}

}  // namespace

std::string to_string(const CheckStrategy& strategy) {
  return std::visit(Overloaded{
                        [](const AscendingStrategy&) { return std::string("ascending"); },
                        [](const DescendingCappedStrategy& s) { return "descending:" + std::to_string(s.cap); },
                        [](const SeededRandomStrategy& s) { return "random:" + std::to_string(s.seed); },
                    },
                    strategy);
}

CheckStrategy parse_strategy(std::string_view text) {
  if (text == "ascending") return AscendingStrategy{};
  if (text.starts_with("descending:")) return DescendingCappedStrategy{parse_u64(text.substr(11), "cap")};
  if (text.starts_with("random:")) return SeededRandomStrategy{parse_u64(text.substr(7), "seed")};
  throw ParseError(0, "unknown strategy '" + std::string(text) + "' (ascending | descending:H | random:SEED)");
}

std::string to_string(const VerifierKind& kind) {
  return std::visit(Overloaded{
                        [](const ArbitraryVerifier&) { return std::string("check"); },
                        [](const MinimalVerifier&) { return std::string("mincheck"); },
                        [](const ConstantBoundedVerifier& v) { return "bcheck:" + std::to_string(v.bound); },
                        [](const PositiveBoundedVerifier&) { return std::string("hcheck"); },
                    },
                    kind);
}

VerifierKind parse_verifier(std::string_view text, const CheckStrategy& strategy) {
  if (text == "check") return ArbitraryVerifier{strategy};
  if (text == "mincheck") return MinimalVerifier{};
  if (text == "hcheck") return PositiveBoundedVerifier{};
  if (text.starts_with("bcheck:")) return ConstantBoundedVerifier{parse_u64(text.substr(7), "bound")};
  throw ParseError(0, "unknown verifier '" + std::string(text) + "' (check | mincheck | bcheck:B | hcheck)");
}

bool is_complete(const VerifierKind& kind) {
  return std::holds_alternative<ArbitraryVerifier>(kind) || std::holds_alternative<MinimalVerifier>(kind);
}

bool WorkingCandidate::contains(Example x) const {
  if (ceiling_ && x >= *ceiling_) return false;
  return !excised_.contains(x) && ogis::contains(base_, x);
}

MaybeExample WorkingCandidate::next_witness(const Language& target, Example from) const {
  Example x = from;
  for (;;) {
    const MaybeExample w = next_difference(base_, target, x);
    if (!w || (ceiling_ && *w >= *ceiling_)) return std::nullopt;
    if (!excised_.contains(*w)) return w;
    if (*w == kMaxExample) return std::nullopt;
    x = *w + 1;
  }
}

MaybeExample WorkingCandidate::prev_witness(const Language& target, Example upto) const {
  Example x = upto;
  if (ceiling_) {
    if (*ceiling_ == 0) return std::nullopt;
    x = std::min(x, *ceiling_ - 1);
  }
  for (;;) {
    const MaybeExample w = prev_difference(base_, target, x);
    if (!w) return std::nullopt;
    if (!excised_.contains(*w)) return w;
    if (*w == 0) return std::nullopt;
    x = *w - 1;
  }
}

Language WorkingCandidate::restricted_to(Example j) const {
  return contains(j) ? Language::finite({j}) : Language::empty();
}

MaybeExample check(const Language& target, const Language& candidate, const CheckStrategy& strategy) {
  if (subset_of(candidate, target)) return std::nullopt;
  return choose(target, WorkingCandidate(candidate), strategy);
}

MaybeExample check(const Language& target, const WorkingCandidate& candidate, const CheckStrategy& strategy) {
  // An untouched infinite candidate may differ from the target only beyond
  // the representable range; subset_of settles that structurally.
  if (candidate.excised_count() == 0 && !candidate.ceiling() && subset_of(candidate.base(), target)) {
    return std::nullopt;
  }
  return choose(target, candidate, strategy);
}

MaybeExample mincheck(const Language& target, const Language& candidate) {
  return next_difference(candidate, target, 0);
}

MaybeExample bcheck(Example bound, const Language& target, const Language& candidate) {
  const MaybeExample least = next_difference(candidate, target, 0);
  if (least && *least < bound) return least;
  return std::nullopt;
}

MaybeExample hcheck(const Language& target, const Language& candidate, std::span<const Example> seen) {
  if (seen.empty()) return std::nullopt;
  const Example threshold = *std::max_element(seen.begin(), seen.end());
  const MaybeExample least = next_difference(candidate, target, 0);
  if (least && *least < threshold) return least;
  return std::nullopt;
}

MaybeExample mincheck_via_check(const Language& target, const Language& candidate, const CheckStrategy& strategy) {
  const MaybeExample upper = check(target, candidate, strategy);
  if (!upper) return std::nullopt;
  return scan_min(target, WorkingCandidate(candidate), strategy, *upper);
}

MaybeExample cb_filter_via_check(Example bound, const Language& target, const Language& candidate,
                                 const CheckStrategy& strategy) {
  return filter_via_check(bound, target, candidate, strategy);
}

MaybeExample pb_filter_via_check(const Language& target, const Language& candidate, std::span<const Example> seen,
                                 const CheckStrategy& strategy) {
  const Example threshold = seen.empty() ? 0 : *std::max_element(seen.begin(), seen.end());
  return filter_via_check(threshold, target, candidate, strategy);
}

MaybeExample verify(const VerifierKind& kind, const Language& target, const Language& candidate,
                    std::span<const Example> seen) {
  return std::visit(Overloaded{
                        [&](const ArbitraryVerifier& v) { return check(target, candidate, v.strategy); },
                        [&](const MinimalVerifier&) { return mincheck(target, candidate); },
                        [&](const ConstantBoundedVerifier& v) { return bcheck(v.bound, target, candidate); },
                        [&](const PositiveBoundedVerifier&) { return hcheck(target, candidate, seen); },
                    },
                    kind);
}

}  // namespace ogis
