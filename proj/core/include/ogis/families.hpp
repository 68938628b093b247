#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ogis/language.hpp"

namespace ogis {

// Finite sets whose elements all exceed B. BCHECK with bound B never sees a
// counterexample between two of them.
struct NotCbFamily {
  Example bound = 8;
  std::size_t min_size = 1;
  std::size_t max_size = 3;
  std::size_t count = 16;
  std::uint64_t seed = 1;
  // Elements are drawn from (bound, bound + span].
  Example span = 12;
  friend bool operator==(const NotCbFamily&, const NotCbFamily&) = default;
};

// The chain UpTo(0) ⊂ UpTo(1) ⊂ ... ⊂ UpTo(max_index).
struct NotPbFamily {
  Example max_index = 20;
  friend bool operator==(const NotPbFamily&, const NotPbFamily&) = default;
};

// Finite subsets of {3^j 2^i | j in {0,1}} holding some 3*2^k, plus the
// power-of-two tails Pow2AtLeast(i) for i <= max_exponent.
struct PbFamily {
  unsigned max_exponent = 12;
  std::size_t count_finite = 16;
  std::uint64_t seed = 1;
  std::size_t max_size = 8;
  friend bool operator==(const PbFamily&, const PbFamily&) = default;
};

// UpTo(0) .. UpTo(B-1): every difference between two members is below B.
struct CbNotPbFamily {
  Example bound = 6;
  friend bool operator==(const CbNotPbFamily&, const CbNotPbFamily&) = default;
};

using FamilySpec = std::variant<NotCbFamily, NotPbFamily, PbFamily, CbNotPbFamily>;

std::vector<Language> family_notcb(const NotCbFamily& spec);
std::vector<Language> family_notpb(Example max_index);
std::vector<Language> family_pb_members(const PbFamily& spec);
std::vector<Language> family_cbnotpb(Example bound);

std::vector<Language> generate(const FamilySpec& spec);

bool in_notcb(Example bound, const Language& language);
bool in_notpb(Example max_index, const Language& language);
bool in_pb(unsigned max_exponent, const Language& language);
bool in_cbnotpb(Example bound, const Language& language);
bool in_family(const FamilySpec& spec, const Language& language);

// A finite Pow32Finite member; throws InvalidLanguage unless some term has
// the form 3*2^k.
Language pb_finite_member(std::span<const Pow32Term> terms);

// "notcb:B", "notpb:N", "pb:E", "cbnotpb:B"; the bare id takes defaults.
std::string to_string(const FamilySpec& spec);
// Throws ParseError.
FamilySpec parse_family(std::string_view text, std::uint64_t seed = 1);

// Name used in reports: "notcb", "notpb", "pb", "cbnotpb".
std::string_view family_id(const FamilySpec& spec);

}  // namespace ogis
