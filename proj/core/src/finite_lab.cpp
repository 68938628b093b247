#include "ogis/finite_lab.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "ogis/errors.hpp"

namespace ogis {

namespace {

ConceptMask bit(std::size_t i) { return ConceptMask{1} << i; }

ConceptMask domain_mask(std::size_t n) { return n >= 32 ? ~ConceptMask{0} : bit(n) - 1; }

void require_dimension_limits(const FiniteConceptClass& cls) {
  if (cls.domain().size() > kMaxDimensionDomain) {
    throw DomainTooLarge("domain of " + std::to_string(cls.domain().size()) + " exceeds " +
                         std::to_string(kMaxDimensionDomain));
  }
  if (cls.size() > kMaxDimensionConcepts) {
    throw DomainTooLarge("class of " + std::to_string(cls.size()) + " concepts exceeds " +
                         std::to_string(kMaxDimensionConcepts));
  }
}

// Smallest set of bit positions meeting every mask, by iterative deepening:
// branch on the bits of the first mask not yet hit.
ConceptMask min_hitting_set(const std::vector<ConceptMask>& masks) {
  std::optional<ConceptMask> found;
  std::function<bool(ConceptMask, std::size_t)> search = [&](ConceptMask chosen, std::size_t left) {
    const auto open = std::find_if(masks.begin(), masks.end(), [&](ConceptMask m) { return (m & chosen) == 0; });
    if (open == masks.end()) {
      found = chosen;
      return true;
    }
    if (left == 0) return false;
    for (ConceptMask rest = *open; rest != 0; rest &= rest - 1) {
      if (search(chosen | (rest & -rest), left - 1)) return true;
    }
    return false;
  };
  for (std::size_t depth = 0;; ++depth) {
    if (search(0, depth)) return *found;
  }
}

// Does b^e reach at least `floor`? Computed without overflow.
bool power_at_least(std::uint64_t b, std::size_t e, std::uint64_t floor) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e && v < floor; ++i) {
    if (b != 0 && v > std::numeric_limits<std::uint64_t>::max() / b) return true;
    v *= b;
  }
  return v >= floor;
}

std::uint64_t parse_number(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a natural number, got '" + std::string(token) + "'");
  }
  return value;
}

struct Line {
  std::size_t number;
  std::string text;
};

// Non-blank lines with comments stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = raw.find_last_not_of(" \t\r");
    out.push_back({n, raw.substr(first, last - first + 1)});
  }
  return out;
}

std::vector<std::uint64_t> parse_numbers(std::string_view text, std::size_t line) {
  std::vector<std::uint64_t> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(parse_number(token, line));
  return out;
}

std::string_view header_value(const Line& line, std::string_view key) {
  const std::string_view text = line.text;
  if (!text.starts_with(key) || text.size() <= key.size() || text[key.size()] != ':') {
    throw ParseError(line.number, "expected '" + std::string(key) + ":' header");
  }
  return text.substr(key.size() + 1);
}

}  // namespace

FiniteConceptClass::FiniteConceptClass(std::vector<Example> domain, const std::vector<std::vector<Example>>& concepts,
                                       std::optional<std::size_t> target)
    : domain_(std::move(domain)), target_(target) {
  if (domain_.size() > kMaxDomain) {
    throw InvalidConfig("domain of " + std::to_string(domain_.size()) + " exceeds " + std::to_string(kMaxDomain));
  }
  if (!std::is_sorted(domain_.begin(), domain_.end()) ||
      std::adjacent_find(domain_.begin(), domain_.end()) != domain_.end()) {
    throw InvalidConfig("domain must be strictly increasing");
  }
  std::vector<ConceptMask> masks;
  for (const auto& c : concepts) {
    ConceptMask m = 0;
    for (Example x : c) {
      const auto i = index_of(x);
      if (!i) throw InvalidConfig("concept element " + std::to_string(x) + " is outside the domain");
      m |= bit(*i);
    }
    masks.push_back(m);
  }
  *this = from_masks(domain_, std::move(masks), target);
}

FiniteConceptClass FiniteConceptClass::from_masks(std::vector<Example> domain, std::vector<ConceptMask> concepts,
                                                  std::optional<std::size_t> target) {
  if (domain.size() > kMaxDomain) {
    throw InvalidConfig("domain of " + std::to_string(domain.size()) + " exceeds " + std::to_string(kMaxDomain));
  }
  const ConceptMask all = domain_mask(domain.size());
  std::set<ConceptMask> distinct;
  for (ConceptMask m : concepts) {
    if ((m & ~all) != 0) throw InvalidConfig("concept mask outside the domain");
    if (!distinct.insert(m).second) throw InvalidConfig("concepts must be distinct");
  }
  if (target && *target >= concepts.size()) throw InvalidConfig("target index out of range");
  FiniteConceptClass cls;
  cls.domain_ = std::move(domain);
  cls.concepts_ = std::move(concepts);
  cls.target_ = target;
  return cls;
}

std::vector<Example> FiniteConceptClass::concept_elements(std::size_t index) const {
  std::vector<Example> out;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (concepts_.at(index) & bit(i)) out.push_back(domain_[i]);
  }
  return out;
}

bool FiniteConceptClass::contains(std::size_t index, Example x) const {
  const auto i = index_of(x);
  return i && (concepts_.at(index) & bit(*i)) != 0;
}

std::optional<std::size_t> FiniteConceptClass::index_of(Example x) const {
  const auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  if (it == domain_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

std::size_t vc_dimension(const FiniteConceptClass& cls) {
  require_dimension_limits(cls);
  const std::size_t n = cls.domain().size();
  std::size_t best = 0;
  for (std::size_t d = 1; d <= n; ++d) {
    bool shattered = false;
    for (ConceptMask subset = 0; subset <= domain_mask(n) && !shattered; ++subset) {
      if (static_cast<std::size_t>(std::popcount(subset)) != d) continue;
      std::set<ConceptMask> patterns;
      for (ConceptMask c : cls.masks()) patterns.insert(c & subset);
      shattered = patterns.size() == (std::size_t{1} << d);
      if (subset == domain_mask(n)) break;
    }
    if (!shattered) break;
    best = d;
  }
  return best;
}

TeachingResult teaching_dimension(const FiniteConceptClass& cls) {
  require_dimension_limits(cls);
  TeachingResult out;
  for (std::size_t c = 0; c < cls.size(); ++c) {
    std::vector<ConceptMask> diffs;
    for (std::size_t o = 0; o < cls.size(); ++o) {
      if (o != c) diffs.push_back(cls.masks()[c] ^ cls.masks()[o]);
    }
    const ConceptMask chosen = min_hitting_set(diffs);
    std::vector<LabeledExample> sequence;
    for (std::size_t i = 0; i < cls.domain().size(); ++i) {
      if (chosen & bit(i)) sequence.push_back({cls.domain()[i], (cls.masks()[c] & bit(i)) != 0});
    }
    out.dimension = std::max(out.dimension, sequence.size());
    out.sequences.push_back(std::move(sequence));
  }
  return out;
}

std::size_t count_consistent(const FiniteConceptClass& cls, const std::vector<LabeledExample>& examples) {
  std::size_t count = 0;
  for (std::size_t c = 0; c < cls.size(); ++c) {
    const bool agrees = std::all_of(examples.begin(), examples.end(),
                                    [&](const LabeledExample& e) { return cls.contains(c, e.x) == e.positive; });
    if (agrees) ++count;
  }
  return count;
}

std::string BoundsReport::render() const {
  if (!applicable) return "n/a (single concept)";
  std::ostringstream os;
  os.precision(6);
  os << static_cast<double>(vc) / std::log2(static_cast<double>(classes)) << " <= " << td << " <= " << classes - 1;
  return os.str();
}

BoundsReport td_bounds_check(const FiniteConceptClass& cls) {
  BoundsReport r;
  r.vc = vc_dimension(cls);
  r.td = teaching_dimension(cls).dimension;
  r.classes = cls.size();
  r.applicable = cls.size() >= 2;
  if (r.applicable) {
    r.lower_holds = power_at_least(cls.size(), r.td, std::uint64_t{1} << r.vc);
    r.upper_holds = r.td <= cls.size() - 1;
  }
  r.pass = !r.applicable || (r.lower_holds && r.upper_holds);
  return r;
}

std::vector<Example> min_counterexample_set(const FiniteConceptClass& cls, std::size_t target) {
  if (cls.domain().size() > kMaxDomain) throw DomainTooLarge("domain exceeds " + std::to_string(kMaxDomain));
  if (target >= cls.size()) throw InvalidConfig("target index out of range");
  const ConceptMask t = cls.masks()[target];
  std::vector<ConceptMask> diffs;
  ConceptMask useful = 0;
  for (std::size_t c = 0; c < cls.size(); ++c) {
    if (c == target) continue;
    diffs.push_back(cls.masks()[c] ^ t);
    useful |= diffs.back();
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < cls.domain().size(); ++i) {
    if (useful & bit(i)) candidates.push_back(i);
  }
  // Plain enumeration of k-combinations of the useful examples, k = 0, 1, ...
  for (std::size_t k = 0; k <= candidates.size(); ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      ConceptMask chosen = 0;
      for (std::size_t i : pick) chosen |= bit(candidates[i]);
      if (std::all_of(diffs.begin(), diffs.end(), [&](ConceptMask d) { return (d & chosen) != 0; })) {
        std::vector<Example> out;
        for (std::size_t i : pick) out.push_back(cls.domain()[candidates[i]]);
        return out;
      }
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == candidates.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw InvalidConfig("two concepts of the class coincide");
}

FiniteConceptClass setcover_to_fis(const SetCoverInstance& instance) {
  if (instance.sets.size() > kMaxDomain) throw DomainTooLarge("more than " + std::to_string(kMaxDomain) + " sets");
  std::vector<Example> domain;
  for (std::size_t i = 0; i < instance.sets.size(); ++i) domain.push_back(i);
  std::vector<ConceptMask> concepts;
  for (std::size_t x = 0; x < instance.universe; ++x) {
    ConceptMask m = 0;
    for (std::size_t i = 0; i < instance.sets.size(); ++i) {
      const auto& s = instance.sets[i];
      if (std::find(s.begin(), s.end(), x) != s.end()) m |= bit(i);
    }
    if (m == 0) throw Uncoverable("element " + std::to_string(x) + " lies in no set");
    if (std::find(concepts.begin(), concepts.end(), m) == concepts.end()) concepts.push_back(m);
  }
  concepts.push_back(0);
  const std::size_t target = concepts.size() - 1;
  return FiniteConceptClass::from_masks(std::move(domain), std::move(concepts), target);
}

std::vector<std::size_t> min_set_cover(const SetCoverInstance& instance) {
  if (instance.universe > 64) throw DomainTooLarge("universe larger than 64 elements");
  using Bits = std::uint64_t;
  const Bits all = instance.universe == 64 ? ~Bits{0} : (Bits{1} << instance.universe) - 1;
  std::vector<Bits> sets;
  Bits reach = 0;
  for (const auto& s : instance.sets) {
    Bits b = 0;
    for (std::size_t x : s) {
      if (x >= instance.universe) throw InvalidConfig("set element " + std::to_string(x) + " outside the universe");
      b |= Bits{1} << x;
    }
    sets.push_back(b);
    reach |= b;
  }
  if (reach != all) throw Uncoverable("the sets do not cover the universe");
  if (all == 0) return {};

  // Greedy cover as the initial upper bound.
  std::vector<std::size_t> best;
  for (Bits covered = 0; covered != all;) {
    std::size_t pick = 0;
    int gain = -1;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const int g = std::popcount(sets[i] & ~covered);
      if (g > gain) {
        gain = g;
        pick = i;
      }
    }
    best.push_back(pick);
    covered |= sets[pick];
  }

  std::vector<std::size_t> current;
  std::function<void(Bits)> branch = [&](Bits covered) {
    if (covered == all) {
      if (current.size() < best.size()) best = current;
      return;
    }
    if (current.size() + 1 >= best.size()) return;
    const unsigned x = static_cast<unsigned>(std::countr_zero(~covered & all));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if ((sets[i] >> x) & 1) {
        current.push_back(i);
        branch(covered | sets[i]);
        current.pop_back();
      }
    }
  };
  branch(0);
  std::sort(best.begin(), best.end());
  return best;
}

std::optional<std::pair<std::size_t, Example>> distinguishing_input(const FiniteConceptClass& cls,
                                                                    const std::vector<Example>& positives,
                                                                    std::size_t concept_index,
                                                                    const std::vector<Example>& negatives) {
  if (concept_index >= cls.size()) throw InvalidConfig("concept index out of range");
  for (Example x : positives) {
    if (!cls.contains(concept_index, x)) throw InvalidConfig("example " + std::to_string(x) + " is not in the concept");
  }
  for (std::size_t o = 0; o < cls.size(); ++o) {
    if (o == concept_index) continue;
    const bool fits = std::all_of(positives.begin(), positives.end(), [&](Example x) { return cls.contains(o, x); }) &&
                      std::none_of(negatives.begin(), negatives.end(), [&](Example x) { return cls.contains(o, x); });
    if (!fits) continue;
    const ConceptMask diff = cls.masks()[o] ^ cls.masks()[concept_index];
    return std::pair{o, cls.domain()[static_cast<std::size_t>(std::countr_zero(diff))]};
  }
  return std::nullopt;
}

Label membership_label(const FiniteConceptClass& cls, std::size_t target, Example x) {
  return cls.contains(target, x) ? Label::kPositive : Label::kNegative;
}

SampleComplexityReport ogis_sample_complexity(const FiniteConceptClass& cls, const OracleInterfaceSpec& interface) {
  for (QueryType needed : {QueryType::kCorrectness, QueryType::kMembership, QueryType::kDistinguishingInput}) {
    if (!interface.allows(needed)) {
      throw UnsupportedInterface("sample-complexity measurement needs " + std::string(to_string(needed)) + " queries");
    }
  }
  SampleComplexityReport report;
  for (std::size_t t = 0; t < cls.size(); ++t) {
    std::vector<LabeledExample> examples;
    const auto agrees = [&](std::size_t c) {
      return std::all_of(examples.begin(), examples.end(),
                         [&](const LabeledExample& e) { return cls.contains(c, e.x) == e.positive; });
    };
    for (;;) {
      std::size_t h = 0;
      while (h < cls.size() && !agrees(h)) ++h;
      if (h == cls.size()) throw NoConsistentConcept("no concept agrees with the labeled examples");
      const ConceptMask hm = cls.masks()[h];
      const ConceptMask tm = cls.masks()[t];
      if (hm != tm) {
        const ConceptMask extra = hm & ~tm;
        const ConceptMask missing = tm & ~hm;
        if (extra != 0) {
          examples.push_back({cls.domain()[static_cast<std::size_t>(std::countr_zero(extra))], false});
        } else {
          examples.push_back({cls.domain()[static_cast<std::size_t>(std::countr_zero(missing))], true});
        }
        continue;
      }
      std::vector<Example> positives;
      std::vector<Example> negatives;
      for (const LabeledExample& e : examples) (e.positive ? positives : negatives).push_back(e.x);
      const auto other = distinguishing_input(cls, positives, h, negatives);
      if (!other) break;
      examples.push_back({other->second, membership_label(cls, t, other->second) == Label::kPositive});
    }
    report.per_target.push_back(examples.size());
    report.worst = std::max(report.worst, examples.size());
  }
  report.td = teaching_dimension(cls).dimension;
  report.at_least_td = report.worst >= report.td;
  return report;
}

FiniteConceptClass parse_class(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'domain:' header");
  std::vector<Example> domain = parse_numbers(header_value(lines.front(), "domain"), lines.front().number);
  if (domain.size() > kMaxDomain) {
    throw ParseError(lines.front().number, "domain larger than " + std::to_string(kMaxDomain) + " elements");
  }
  std::vector<Example> sorted = domain;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParseError(lines.front().number, "domain repeats an element");
  }
  FiniteConceptClass probe = FiniteConceptClass::from_masks(sorted, {});
  std::vector<ConceptMask> concepts;
  std::set<ConceptMask> distinct;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    ConceptMask m = 0;
    if (line.text != "{}" && line.text != "-") {
      for (Example x : parse_numbers(line.text, line.number)) {
        const auto idx = probe.index_of(x);
        if (!idx) throw ParseError(line.number, "element " + std::to_string(x) + " is not in the domain");
        m |= bit(*idx);
      }
    }
    if (!distinct.insert(m).second) throw ParseError(line.number, "duplicate concept");
    concepts.push_back(m);
  }
  if (concepts.empty()) throw ParseError(lines.back().number, "class has no concepts");
  return FiniteConceptClass::from_masks(std::move(sorted), std::move(concepts));
}

std::string render_class(const FiniteConceptClass& cls) {
  std::ostringstream os;
  os << "domain:";
  for (Example x : cls.domain()) os << ' ' << x;
  os << '\n';
  for (std::size_t c = 0; c < cls.size(); ++c) {
    const auto elements = cls.concept_elements(c);
    if (elements.empty()) {
      os << "{}";
    } else {
      for (std::size_t i = 0; i < elements.size(); ++i) os << (i ? " " : "") << elements[i];
    }
    os << '\n';
  }
  return os.str();
}

SetCoverInstance parse_cover(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'universe:' header");
  const auto header = parse_numbers(header_value(lines.front(), "universe"), lines.front().number);
  if (header.size() != 1) throw ParseError(lines.front().number, "'universe:' takes one element count");
  SetCoverInstance instance;
  instance.universe = header.front();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::size_t> set;
    if (lines[i].text != "{}" && lines[i].text != "-") {
      for (std::uint64_t x : parse_numbers(lines[i].text, lines[i].number)) {
        if (x >= instance.universe) {
          throw ParseError(lines[i].number, "element " + std::to_string(x) + " is outside the universe");
        }
        set.push_back(x);
      }
    }
    instance.sets.push_back(std::move(set));
  }
  if (instance.sets.empty()) throw ParseError(lines.back().number, "instance has no sets");
  return instance;
}

std::string render_cover(const SetCoverInstance& instance) {
  std::ostringstream os;
  os << "universe: " << instance.universe << '\n';
  for (const auto& s : instance.sets) {
    if (s.empty()) os << "{}";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FiniteConceptClass random_class(std::uint64_t seed, std::size_t max_domain, std::size_t max_concepts) {
  if (max_domain < 2 || max_domain > kMaxDimensionDomain || max_concepts < 2) {
    throw InvalidConfig("random classes need 2 <= max_domain <= 16 and max_concepts >= 2");
  }
  std::mt19937_64 rng(seed);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_domain)(rng);
  const std::size_t cap = std::min<std::size_t>(max_concepts, std::size_t{1} << n);
  const std::size_t count = std::uniform_int_distribution<std::size_t>(2, cap)(rng);
  std::uniform_int_distribution<ConceptMask> draw(0, domain_mask(n));
  std::set<ConceptMask> used;
  std::vector<ConceptMask> concepts;
  while (concepts.size() < count) {
    const ConceptMask m = draw(rng);
    if (used.insert(m).second) concepts.push_back(m);
  }
  std::vector<Example> domain(n);
  for (std::size_t i = 0; i < n; ++i) domain[i] = i;
  return FiniteConceptClass::from_masks(std::move(domain), std::move(concepts));
}

SetCoverInstance random_cover(std::uint64_t seed, std::size_t max_sets, std::size_t max_universe) {
  if (max_sets == 0 || max_universe == 0) throw InvalidConfig("random covers need at least one set and one element");
  std::mt19937_64 rng(seed);
  SetCoverInstance instance;
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_sets)(rng);
  instance.universe = std::uniform_int_distribution<std::size_t>(1, max_universe)(rng);
  instance.sets.resize(k);
  std::bernoulli_distribution coin(0.4);
  std::vector<bool> covered(instance.universe, false);
  for (auto& s : instance.sets) {
    for (std::size_t x = 0; x < instance.universe; ++x) {
      if (coin(rng)) {
        s.push_back(x);
        covered[x] = true;
      }
    }
  }
  std::uniform_int_distribution<std::size_t> which(0, k - 1);
  for (std::size_t x = 0; x < instance.universe; ++x) {
    if (covered[x]) continue;
    auto& s = instance.sets[which(rng)];
    s.insert(std::lower_bound(s.begin(), s.end(), x), x);
  }
  return instance;
}

FiniteConceptClass powerset_class(std::size_t domain_size) {
  if (domain_size > kMaxDimensionDomain) throw DomainTooLarge("powerset domain too large");
  std::vector<Example> domain(domain_size);
  for (std::size_t i = 0; i < domain_size; ++i) domain[i] = i;
  std::vector<ConceptMask> concepts;
  for (ConceptMask m = 0; m <= domain_mask(domain_size); ++m) concepts.push_back(m);
  return FiniteConceptClass::from_masks(std::move(domain), std::move(concepts));
}

FiniteConceptClass singletons_class(std::size_t domain_size) {
  std::vector<Example> domain(domain_size);
  std::vector<ConceptMask> concepts;
  for (std::size_t i = 0; i < domain_size; ++i) {
    domain[i] = i;
    concepts.push_back(bit(i));
  }
  return FiniteConceptClass::from_masks(std::move(domain), std::move(concepts));
}

}  // namespace ogis
