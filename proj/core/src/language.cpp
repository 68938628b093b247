#include "ogis/language.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <ostream>

#include "ogis/errors.hpp"

namespace ogis {

namespace {

constexpr Example kMaxExample = std::numeric_limits<Example>::max();

std::vector<Example> pow32_values(const Language& language) {
  std::vector<Example> values;
  for (unsigned three = 0; three < 2; ++three) {
    std::uint64_t mask = language.pow32_mask(three);
    while (mask != 0) {
      const unsigned two = static_cast<unsigned>(std::countr_zero(mask));
      values.push_back(Pow32Term{three, two}.value());
      mask &= mask - 1;
    }
  }
  std::sort(values.begin(), values.end());
  return values;
}

// Walks upward from `from` while the language contains the current value.
// Only used for forms whose membership runs are short.
MaybeExample walk_up_nonmember(const Language& language, Example from) {
  Example x = from;
  while (contains(language, x)) {
    if (x == kMaxExample) return std::nullopt;
    ++x;
  }
  return x;
}

MaybeExample walk_down_nonmember(const Language& language, Example upto) {
  Example x = upto;
  while (contains(language, x)) {
    if (x == 0) return std::nullopt;
    --x;
  }
  return x;
}

}  // namespace

bool is_power_of_two(Example x) { return std::has_single_bit(x); }

std::optional<Pow32Term> as_pow32_term(Example x) {
  if (x == 0) return std::nullopt;
  const unsigned two = static_cast<unsigned>(std::countr_zero(x));
  const Example odd = x >> two;
  if (odd == 1) return Pow32Term{0, two};
  if (odd == 3) return Pow32Term{1, two};
  return std::nullopt;
}

bool in_pow32_universe(Example x) { return as_pow32_term(x).has_value(); }

Language Language::empty() { return Language{}; }

Language Language::universe() {
  Language l;
  l.kind_ = FormKind::kUniverse;
  return l;
}

Language Language::finite(std::vector<Example> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Language l;
  l.kind_ = FormKind::kFinite;
  l.elements_ = std::move(elements);
  return l;
}

Language Language::up_to(Example bound) {
  Language l;
  l.kind_ = FormKind::kUpTo;
  l.parameter_ = bound;
  return l;
}

Language Language::all_above(Example bound) {
  if (bound == kMaxExample) {
    throw InvalidLanguage("AllAbove bound leaves no representable member");
  }
  Language l;
  l.kind_ = FormKind::kAllAbove;
  l.parameter_ = bound;
  return l;
}

Language Language::pow2_at_least(unsigned exponent) {
  if (exponent > kMaxPow2Exponent) {
    throw InvalidLanguage("Pow2AtLeast exponent " + std::to_string(exponent) + " exceeds " +
                          std::to_string(kMaxPow2Exponent));
  }
  Language l;
  l.kind_ = FormKind::kPow2AtLeast;
  l.parameter_ = exponent;
  return l;
}

Language Language::pow32_finite(std::span<const Pow32Term> terms) {
  Language l;
  l.kind_ = FormKind::kPow32Finite;
  for (const Pow32Term& t : terms) {
    if (t.three > 1) throw InvalidLanguage("Pow32Finite power of three must be 0 or 1");
    if (t.two > kMaxPow32Exponent) {
      throw InvalidLanguage("Pow32Finite power of two " + std::to_string(t.two) + " exceeds " +
                            std::to_string(kMaxPow32Exponent));
    }
    l.masks_[t.three] |= std::uint64_t{1} << t.two;
  }
  return l;
}

Language Language::pow32_finite(std::initializer_list<Pow32Term> terms) {
  return pow32_finite(std::span<const Pow32Term>(terms.begin(), terms.size()));
}

std::vector<Pow32Term> Language::pow32_terms() const {
  std::vector<Pow32Term> terms;
  for (Example v : pow32_values(*this)) terms.push_back(*as_pow32_term(v));
  return terms;
}

bool contains(const Language& language, Example x) {
  switch (language.kind()) {
    case FormKind::kEmpty:
      return false;
    case FormKind::kUniverse:
      return true;
    case FormKind::kFinite: {
      const auto elems = language.elements();
      return std::binary_search(elems.begin(), elems.end(), x);
    }
    case FormKind::kUpTo:
      return x <= language.parameter();
    case FormKind::kAllAbove:
      return x > language.parameter();
    case FormKind::kPow2AtLeast:
      return is_power_of_two(x) && static_cast<Example>(std::countr_zero(x)) >= language.parameter();
    case FormKind::kPow32Finite: {
      const auto term = as_pow32_term(x);
      return term && term->two <= kMaxPow32Exponent &&
             ((language.pow32_mask(term->three) >> term->two) & 1U) != 0;
    }
  }
  return false;
}

bool is_finite(const Language& language) {
  switch (language.kind()) {
    case FormKind::kEmpty:
    case FormKind::kFinite:
    case FormKind::kUpTo:
    case FormKind::kPow32Finite:
      return true;
    default:
      return false;
  }
}

MaybeExample next_member(const Language& language, Example from) {
  switch (language.kind()) {
    case FormKind::kEmpty:
      return std::nullopt;
    case FormKind::kUniverse:
      return from;
    case FormKind::kFinite: {
      const auto elems = language.elements();
      const auto it = std::lower_bound(elems.begin(), elems.end(), from);
      if (it == elems.end()) return std::nullopt;
      return *it;
    }
    case FormKind::kUpTo:
      if (from <= language.parameter()) return from;
      return std::nullopt;
    case FormKind::kAllAbove:
      return std::max(from, language.parameter() + 1);
    case FormKind::kPow2AtLeast: {
      const Example lowest = Example{1} << language.parameter();
      if (from <= lowest) return lowest;
      if (from > (Example{1} << 63)) return std::nullopt;
      return std::bit_ceil(from);
    }
    case FormKind::kPow32Finite: {
      for (Example v : pow32_values(language)) {
        if (v >= from) return v;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

MaybeExample next_nonmember(const Language& language, Example from) {
  switch (language.kind()) {
    case FormKind::kEmpty:
      return from;
    case FormKind::kUniverse:
      return std::nullopt;
    case FormKind::kFinite: {
      const auto elems = language.elements();
      auto it = std::lower_bound(elems.begin(), elems.end(), from);
      Example x = from;
      while (it != elems.end() && *it == x) {
        if (x == kMaxExample) return std::nullopt;
        ++x;
        ++it;
      }
      return x;
    }
    case FormKind::kUpTo:
      if (from > language.parameter()) return from;
      if (language.parameter() == kMaxExample) return std::nullopt;
      return language.parameter() + 1;
    case FormKind::kAllAbove:
      if (from <= language.parameter()) return from;
      return std::nullopt;
    case FormKind::kPow2AtLeast:
    case FormKind::kPow32Finite:
      return walk_up_nonmember(language, from);
  }
  return std::nullopt;
}

MaybeExample prev_member(const Language& language, Example upto) {
  switch (language.kind()) {
    case FormKind::kEmpty:
      return std::nullopt;
    case FormKind::kUniverse:
      return upto;
    case FormKind::kFinite: {
      const auto elems = language.elements();
      const auto it = std::upper_bound(elems.begin(), elems.end(), upto);
      if (it == elems.begin()) return std::nullopt;
      return *std::prev(it);
    }
    case FormKind::kUpTo:
      return std::min(upto, language.parameter());
    case FormKind::kAllAbove:
      if (upto > language.parameter()) return upto;
      return std::nullopt;
    case FormKind::kPow2AtLeast: {
      const Example lowest = Example{1} << language.parameter();
      if (upto < lowest) return std::nullopt;
      return std::bit_floor(upto);
    }
    case FormKind::kPow32Finite: {
      MaybeExample best;
      for (Example v : pow32_values(language)) {
        if (v > upto) break;
        best = v;
      }
      return best;
    }
  }
  return std::nullopt;
}

MaybeExample prev_nonmember(const Language& language, Example upto) {
  switch (language.kind()) {
    case FormKind::kEmpty:
      return upto;
    case FormKind::kUniverse:
      return std::nullopt;
    case FormKind::kFinite: {
      const auto elems = language.elements();
      auto it = std::upper_bound(elems.begin(), elems.end(), upto);
      Example x = upto;
      while (it != elems.begin() && *std::prev(it) == x) {
        if (x == 0) return std::nullopt;
        --x;
        --it;
      }
      return x;
    }
    case FormKind::kUpTo:
      if (upto > language.parameter()) return upto;
      return std::nullopt;
    case FormKind::kAllAbove:
      return std::min(upto, language.parameter());
    case FormKind::kPow2AtLeast:
    case FormKind::kPow32Finite:
      return walk_down_nonmember(language, upto);
  }
  return std::nullopt;
}

MaybeExample min_element(const Language& language) { return next_member(language, 0); }

MaybeExample max_element(const Language& language) {
  switch (language.kind()) {
    case FormKind::kFinite:
      if (language.elements().empty()) return std::nullopt;
      return language.elements().back();
    case FormKind::kUpTo:
      return language.parameter();
    case FormKind::kPow32Finite: {
      const auto values = pow32_values(language);
      if (values.empty()) return std::nullopt;
      return values.back();
    }
    default:
      return std::nullopt;
  }
}

MaybeExample next_difference(const Language& a, const Language& b, Example from) {
  Example x = from;
  for (;;) {
    const MaybeExample m = next_member(a, x);
    if (!m) return std::nullopt;
    if (!contains(b, *m)) return m;
    const MaybeExample n = next_nonmember(b, *m);
    if (!n) return std::nullopt;
    x = *n;
  }
}

MaybeExample prev_difference(const Language& a, const Language& b, Example upto) {
  Example x = upto;
  for (;;) {
    const MaybeExample m = prev_member(a, x);
    if (!m) return std::nullopt;
    if (!contains(b, *m)) return m;
    const MaybeExample n = prev_nonmember(b, *m);
    if (!n) return std::nullopt;
    x = *n;
  }
}

bool subset_of(const Language& a, const Language& b) {
  // Tails beyond the representable range: an infinite set only fits inside an
  // infinite one, and dense tails never fit inside the powers of two.
  if (!is_finite(a)) {
    if (is_finite(b)) return false;
    const bool dense = a.kind() == FormKind::kUniverse || a.kind() == FormKind::kAllAbove;
    if (dense && b.kind() == FormKind::kPow2AtLeast) return false;
  }
  return !next_difference(a, b, 0).has_value();
}

bool languages_equal(const Language& a, const Language& b) { return subset_of(a, b) && subset_of(b, a); }

std::vector<Example> difference_witnesses(const Language& a, const Language& b, std::size_t limit) {
  std::vector<Example> out;
  Example from = 0;
  while (out.size() < limit) {
    const MaybeExample w = next_difference(a, b, from);
    if (!w) break;
    out.push_back(*w);
    if (*w == kMaxExample) break;
    from = *w + 1;
  }
  return out;
}

Language singleton_restriction(const Language& language, Example j) {
  if (contains(language, j)) return Language::finite({j});
  return Language::empty();
}

std::vector<Example> members(const Language& language, std::size_t limit) {
  std::vector<Example> out;
  Example from = 0;
  while (out.size() < limit) {
    const MaybeExample m = next_member(language, from);
    if (!m) break;
    out.push_back(*m);
    if (*m == kMaxExample) break;
    from = *m + 1;
  }
  return out;
}

std::string to_string(const Language& language) {
  std::string out;
  switch (language.kind()) {
    case FormKind::kEmpty:
      return "Empty";
    case FormKind::kUniverse:
      return "Universe";
    case FormKind::kFinite: {
      out = "Finite{";
      bool first = true;
      for (Example e : language.elements()) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
      }
      out += '}';
      return out;
    }
    case FormKind::kUpTo:
      return "UpTo(" + std::to_string(language.parameter()) + ")";
    case FormKind::kAllAbove:
      return "AllAbove(" + std::to_string(language.parameter()) + ")";
    case FormKind::kPow2AtLeast:
      return "Pow2AtLeast(" + std::to_string(language.parameter()) + ")";
    case FormKind::kPow32Finite: {
      out = "Pow32Finite{";
      bool first = true;
      for (const Pow32Term& t : language.pow32_terms()) {
        if (!first) out += ',';
        out += "(" + std::to_string(t.three) + "," + std::to_string(t.two) + ")";
        first = false;
      }
      out += '}';
      return out;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Language& language) { return os << to_string(language); }

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }

  Example number() {
    skip_space();
    Example value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail("expected a natural number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(0, "cannot parse language '" + std::string(text_) + "' at offset " +
                            std::to_string(pos_) + ": " + why);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

unsigned narrow_exponent(Cursor& cursor, Example value) {
  if (value > 64) cursor.fail("exponent out of range");
  return static_cast<unsigned>(value);
}

}  // namespace

Language parse_language(std::string_view text) {
  Cursor c(text);
  Language result;
  if (c.consume("Empty")) {
    result = Language::empty();
  } else if (c.consume("Universe")) {
    result = Language::universe();
  } else if (c.consume("UpTo")) {
    c.expect("(");
    result = Language::up_to(c.number());
    c.expect(")");
  } else if (c.consume("AllAbove")) {
    c.expect("(");
    const Example bound = c.number();
    c.expect(")");
    if (bound == kMaxExample) c.fail("AllAbove bound out of range");
    result = Language::all_above(bound);
  } else if (c.consume("Pow2AtLeast")) {
    c.expect("(");
    const unsigned k = narrow_exponent(c, c.number());
    c.expect(")");
    if (k > kMaxPow2Exponent) c.fail("Pow2AtLeast exponent out of range");
    result = Language::pow2_at_least(k);
  } else if (c.consume("Pow32Finite")) {
    c.expect("{");
    std::vector<Pow32Term> terms;
    if (!c.consume("}")) {
      do {
        c.expect("(");
        const Example three = c.number();
        c.expect(",");
        const unsigned two = narrow_exponent(c, c.number());
        c.expect(")");
        if (three > 1 || two > kMaxPow32Exponent) c.fail("Pow32Finite term out of range");
        terms.push_back(Pow32Term{static_cast<unsigned>(three), two});
      } while (c.consume(","));
      c.expect("}");
    }
    result = Language::pow32_finite(terms);
  } else if (c.consume("Finite")) {
    c.expect("{");
    std::vector<Example> elems;
    if (!c.consume("}")) {
      do {
        elems.push_back(c.number());
      } while (c.consume(","));
      c.expect("}");
    }
    result = Language::finite(std::move(elems));
  } else {
    c.fail("unknown form");
  }
  if (!c.at_end()) c.fail("trailing characters");
  return result;
}

}  // namespace ogis
