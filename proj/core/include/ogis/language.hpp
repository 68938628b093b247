#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ogis {

// One program behavior, identified with a natural number. The total order on
// examples is the order on the naturals.
using Example = std::uint64_t;

// An example or the bottom marker. Bottom is never encoded as 0.
using MaybeExample = std::optional<Example>;

// Largest exponent i admitted in a Pow32Finite term 3^j * 2^i.
inline constexpr unsigned kMaxPow32Exponent = 62;
// Largest k admitted in Pow2AtLeast(k).
inline constexpr unsigned kMaxPow2Exponent = 63;

enum class FormKind : std::uint8_t {
  kEmpty = 0,
  kUniverse = 1,
  kFinite = 2,
  kUpTo = 3,
  kAllAbove = 4,
  kPow2AtLeast = 5,
  kPow32Finite = 6,
};

// A single element 3^three * 2^two of a Pow32Finite set; three is 0 or 1.
struct Pow32Term {
  unsigned three = 0;
  unsigned two = 0;

  Example value() const { return (three == 0 ? Example{1} : Example{3}) << two; }
  friend bool operator==(const Pow32Term&, const Pow32Term&) = default;
};

// A decidable set of naturals drawn from a closed catalog of forms:
//
//   Empty, Universe           the empty set and all of N
//   Finite{a,b,...}           an explicit finite set
//   UpTo(i)                   {n | n <= i}
//   AllAbove(b)               {n | n > b}
//   Pow2AtLeast(k)            {2^j | j >= k}
//   Pow32Finite{(j,i),...}    {3^j * 2^i} for the listed pairs, j in {0,1}
//
// Equality via operator== is structural; use languages_equal() to compare
// denotations.
class Language {
 public:
  Language() = default;  // Empty

  static Language empty();
  static Language universe();
  // Sorts and removes duplicates.
  static Language finite(std::vector<Example> elements);
  static Language up_to(Example bound);
  static Language all_above(Example bound);
  static Language pow2_at_least(unsigned exponent);
  static Language pow32_finite(std::span<const Pow32Term> terms);
  static Language pow32_finite(std::initializer_list<Pow32Term> terms);

  FormKind kind() const { return kind_; }

  // Bound of UpTo/AllAbove, exponent of Pow2AtLeast.
  Example parameter() const { return parameter_; }

  // Elements of a Finite form, strictly increasing.
  std::span<const Example> elements() const { return elements_; }

  // Bit i of mask j is set iff 3^j * 2^i is in a Pow32Finite form.
  std::uint64_t pow32_mask(unsigned three) const { return masks_[three]; }

  // Terms of a Pow32Finite form ordered by denoted value.
  std::vector<Pow32Term> pow32_terms() const;

  friend bool operator==(const Language&, const Language&) = default;

 private:
  FormKind kind_ = FormKind::kEmpty;
  Example parameter_ = 0;
  std::vector<Example> elements_;
  std::array<std::uint64_t, 2> masks_{};
};

bool contains(const Language& language, Example x);
bool is_finite(const Language& language);

// Least member >= from / least non-member >= from. Bottom when the answer is
// not representable as an Example.
MaybeExample next_member(const Language& language, Example from);
MaybeExample next_nonmember(const Language& language, Example from);
// Greatest member <= upto / greatest non-member <= upto.
MaybeExample prev_member(const Language& language, Example upto);
MaybeExample prev_nonmember(const Language& language, Example upto);

MaybeExample min_element(const Language& language);
// Greatest member of a finite language; bottom for infinite or empty ones.
MaybeExample max_element(const Language& language);

// Least element of a \ b that is >= from.
MaybeExample next_difference(const Language& a, const Language& b, Example from);
// Greatest element of a \ b that is <= upto.
MaybeExample prev_difference(const Language& a, const Language& b, Example upto);

bool subset_of(const Language& a, const Language& b);
bool languages_equal(const Language& a, const Language& b);

// The `limit` smallest elements of a \ b in ascending order.
std::vector<Example> difference_witnesses(const Language& a, const Language& b, std::size_t limit);

// L ∩ {j}: Finite{j} or Empty.
Language singleton_restriction(const Language& language, Example j);

// Members of a finite language, ascending. Infinite languages yield at most
// `limit` smallest members.
std::vector<Example> members(const Language& language, std::size_t limit = SIZE_MAX);

// Canonical rendering, e.g. "UpTo(5)", "Finite{2,6,16}", "Pow32Finite{(0,1),(1,1)}".
std::string to_string(const Language& language);
// Inverse of to_string. Throws ParseError.
Language parse_language(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Language& language);

// True when x is a power of two.
bool is_power_of_two(Example x);
// True when x = 3^j * 2^i for j in {0,1}.
bool in_pow32_universe(Example x);
// Decomposes x = 3^j * 2^i; bottom when x is not of that shape.
std::optional<Pow32Term> as_pow32_term(Example x);

}  // namespace ogis
