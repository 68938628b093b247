#include "ogis/families.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>
#include <set>

#include "ogis/errors.hpp"

namespace ogis {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

std::uint64_t parse_param(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(0, "invalid family parameter '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<Language> family_notcb(const NotCbFamily& spec) {
  if (spec.min_size == 0 || spec.min_size > spec.max_size || spec.max_size > spec.span) {
    throw InvalidConfig("notcb sizes must satisfy 1 <= min <= max <= span");
  }
  if (spec.bound > std::numeric_limits<Example>::max() - spec.span) throw InvalidConfig("notcb bound too large");
  std::mt19937_64 rng(spec.seed);
  std::vector<Language> out;
  std::set<std::vector<Example>> seen;
  // Stop after a generous number of draws in case the requested count exceeds
  // the number of distinct sets available.
  for (std::size_t attempt = 0; out.size() < spec.count && attempt < spec.count * 64; ++attempt) {
    const std::size_t size = uniform(rng, spec.min_size, spec.max_size);
    std::set<Example> elements;
    while (elements.size() < size) elements.insert(spec.bound + uniform(rng, 1, spec.span));
    std::vector<Example> sorted(elements.begin(), elements.end());
    if (seen.insert(sorted).second) out.push_back(Language::finite(std::move(sorted)));
  }
  return out;
}

std::vector<Language> family_notpb(Example max_index) {
  std::vector<Language> out;
  for (Example i = 0; i <= max_index; ++i) out.push_back(Language::up_to(i));
  return out;
}

Language pb_finite_member(std::span<const Pow32Term> terms) {
  const bool has_three = std::any_of(terms.begin(), terms.end(), [](const Pow32Term& t) { return t.three == 1; });
  if (!has_three) throw InvalidLanguage("finite pb member needs an element of the form 3*2^k");
  return Language::pow32_finite(terms);
}

std::vector<Language> family_pb_members(const PbFamily& spec) {
  if (spec.max_exponent < 1 || spec.max_exponent > kMaxPow32Exponent) {
    throw InvalidConfig("pb max exponent must lie in 1.." + std::to_string(kMaxPow32Exponent));
  }
  if (spec.max_size == 0) throw InvalidConfig("pb max size must be positive");
  std::mt19937_64 rng(spec.seed);
  std::vector<Language> out;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  const std::size_t slots = 2 * (spec.max_exponent + 1);
  for (std::size_t attempt = 0; out.size() < spec.count_finite && attempt < spec.count_finite * 64; ++attempt) {
    const std::size_t size = uniform(rng, 1, std::min(spec.max_size, slots));
    std::vector<Pow32Term> terms{{1, static_cast<unsigned>(uniform(rng, 0, spec.max_exponent))}};
    while (terms.size() < size) {
      const Pow32Term t{static_cast<unsigned>(uniform(rng, 0, 1)), static_cast<unsigned>(uniform(rng, 0, spec.max_exponent))};
      if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
    }
    Language member = pb_finite_member(terms);
    if (seen.insert({member.pow32_mask(0), member.pow32_mask(1)}).second) out.push_back(std::move(member));
  }
  for (unsigned i = 0; i <= spec.max_exponent; ++i) out.push_back(Language::pow2_at_least(i));
  return out;
}

std::vector<Language> family_cbnotpb(Example bound) {
  if (bound == 0) throw InvalidConfig("cbnotpb bound must be at least 1");
  return family_notpb(bound - 1);
}

std::vector<Language> generate(const FamilySpec& spec) {
  return std::visit(Overloaded{
                        [](const NotCbFamily& f) { return family_notcb(f); },
                        [](const NotPbFamily& f) { return family_notpb(f.max_index); },
                        [](const PbFamily& f) { return family_pb_members(f); },
                        [](const CbNotPbFamily& f) { return family_cbnotpb(f.bound); },
                    },
                    spec);
}

bool in_notcb(Example bound, const Language& language) {
  if (!is_finite(language)) return false;
  const MaybeExample least = min_element(language);
  return least && *least > bound;
}

bool in_notpb(Example max_index, const Language& language) {
  for (Example i = 0; i <= max_index; ++i) {
    if (languages_equal(language, Language::up_to(i))) return true;
  }
  return false;
}

bool in_pb(unsigned max_exponent, const Language& language) {
  for (unsigned i = 0; i <= max_exponent; ++i) {
    if (languages_equal(language, Language::pow2_at_least(i))) return true;
  }
  if (!is_finite(language)) return false;
  bool has_three = false;
  for (Example x : members(language)) {
    const auto term = as_pow32_term(x);
    if (!term || term->two > max_exponent) return false;
    has_three = has_three || term->three == 1;
  }
  return has_three;
}

bool in_cbnotpb(Example bound, const Language& language) { return bound > 0 && in_notpb(bound - 1, language); }

bool in_family(const FamilySpec& spec, const Language& language) {
  return std::visit(Overloaded{
                        [&](const NotCbFamily& f) { return in_notcb(f.bound, language); },
                        [&](const NotPbFamily& f) { return in_notpb(f.max_index, language); },
                        [&](const PbFamily& f) { return in_pb(f.max_exponent, language); },
                        [&](const CbNotPbFamily& f) { return in_cbnotpb(f.bound, language); },
                    },
                    spec);
}

std::string to_string(const FamilySpec& spec) {
  return std::visit(Overloaded{
                        [](const NotCbFamily& f) { return "notcb:" + std::to_string(f.bound); },
                        [](const NotPbFamily& f) { return "notpb:" + std::to_string(f.max_index); },
                        [](const PbFamily& f) { return "pb:" + std::to_string(f.max_exponent); },
                        [](const CbNotPbFamily& f) { return "cbnotpb:" + std::to_string(f.bound); },
                    },
                    spec);
}

std::string_view family_id(const FamilySpec& spec) {
  return std::visit(Overloaded{
                        [](const NotCbFamily&) { return std::string_view("notcb"); },
                        [](const NotPbFamily&) { return std::string_view("notpb"); },
                        [](const PbFamily&) { return std::string_view("pb"); },
                        [](const CbNotPbFamily&) { return std::string_view("cbnotpb"); },
                    },
                    spec);
}

FamilySpec parse_family(std::string_view text, std::uint64_t seed) {
  const std::size_t colon = text.find(':');
  const std::string_view id = text.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  const std::string_view param = has_param ? text.substr(colon + 1) : std::string_view{};
  if (id == "notcb") {
    NotCbFamily f;
    f.seed = seed;
    if (has_param) f.bound = parse_param(param);
    return f;
  }
  if (id == "notpb") {
    NotPbFamily f;
    if (has_param) f.max_index = parse_param(param);
    return f;
  }
  if (id == "pb") {
    PbFamily f;
    f.seed = seed;
    if (has_param) f.max_exponent = static_cast<unsigned>(parse_param(param));
    return f;
  }
  if (id == "cbnotpb") {
    CbNotPbFamily f;
    if (has_param) f.bound = parse_param(param);
    return f;
  }
  throw ParseError(0, "unknown family '" + std::string(text) + "' (notcb:B | notpb:N | pb:E | cbnotpb:B)");
}

}  // namespace ogis
