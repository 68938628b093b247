#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ogis/dialogue.hpp"
#include "ogis/language.hpp"

namespace ogis {

// Bit i stands for the i-th domain element.
using ConceptMask = std::uint32_t;

inline constexpr std::size_t kMaxDomain = 20;
// Teaching and VC dimension are computed exhaustively only up to these sizes.
inline constexpr std::size_t kMaxDimensionDomain = 16;
inline constexpr std::size_t kMaxDimensionConcepts = 4096;

// Distinct concepts over a finite, strictly increasing domain.
class FiniteConceptClass {
 public:
  FiniteConceptClass() = default;
  // Throws InvalidConfig on duplicate concepts, elements outside the domain or
  // a domain larger than kMaxDomain.
  FiniteConceptClass(std::vector<Example> domain, const std::vector<std::vector<Example>>& concepts,
                     std::optional<std::size_t> target = std::nullopt);
  static FiniteConceptClass from_masks(std::vector<Example> domain, std::vector<ConceptMask> concepts,
                                       std::optional<std::size_t> target = std::nullopt);

  const std::vector<Example>& domain() const { return domain_; }
  const std::vector<ConceptMask>& masks() const { return concepts_; }
  std::size_t size() const { return concepts_.size(); }
  std::optional<std::size_t> target() const { return target_; }

  std::vector<Example> concept_elements(std::size_t index) const;
  bool contains(std::size_t index, Example x) const;
  // Position of x in the domain; bottom when absent.
  std::optional<std::size_t> index_of(Example x) const;

 private:
  std::vector<Example> domain_;
  std::vector<ConceptMask> concepts_;
  std::optional<std::size_t> target_;
};

struct LabeledExample {
  Example x = 0;
  bool positive = false;
  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct TeachingResult {
  std::size_t dimension = 0;
  // One minimum teaching set per concept, in class order.
  std::vector<std::vector<LabeledExample>> sequences;
};

// Size of the largest shattered subset of the domain. Throws DomainTooLarge.
std::size_t vc_dimension(const FiniteConceptClass& cls);

// Exact teaching dimension with a minimum teaching set for each concept.
// Throws DomainTooLarge.
TeachingResult teaching_dimension(const FiniteConceptClass& cls);

// Number of concepts that agree with every labeled example.
std::size_t count_consistent(const FiniteConceptClass& cls, const std::vector<LabeledExample>& examples);

struct BoundsReport {
  std::size_t vc = 0;
  std::size_t td = 0;
  std::size_t classes = 0;
  // False for a single-concept class, where log2 |C| = 0.
  bool applicable = false;
  // VC / log2 |C| <= TD, decided exactly as 2^VC <= |C|^TD.
  bool lower_holds = false;
  // TD <= |C| - 1.
  bool upper_holds = false;
  bool pass = false;

  // "0.5 <= 1 <= 3"
  std::string render() const;
};

BoundsReport td_bounds_check(const FiniteConceptClass& cls);

// A smallest example set on which every other concept disagrees with the
// target somewhere. Throws DomainTooLarge past kMaxDomain.
std::vector<Example> min_counterexample_set(const FiniteConceptClass& cls, std::size_t target);

// Elements are 0..universe-1; sets list their elements.
struct SetCoverInstance {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> sets;
};

// Domain 0..k-1 (one example per set) and one concept per element x_j holding
// the examples of the sets that contain x_j; the empty concept is appended
// last and is the target. Concepts repeated by elements lying in exactly the
// same sets are kept once. Throws Uncoverable if some element is in no set.
FiniteConceptClass setcover_to_fis(const SetCoverInstance& instance);

// Indices of a minimum cover. Throws Uncoverable.
std::vector<std::size_t> min_set_cover(const SetCoverInstance& instance);

// The least-indexed concept other than `concept_index` that contains every
// positive and no negative, with the least example on which the two differ.
std::optional<std::pair<std::size_t, Example>> distinguishing_input(const FiniteConceptClass& cls,
                                                                    const std::vector<Example>& positives,
                                                                    std::size_t concept_index,
                                                                    const std::vector<Example>& negatives = {});

Label membership_label(const FiniteConceptClass& cls, std::size_t target, Example x);

struct SampleComplexityReport {
  // Labeled examples gathered before the target was pinned down, per target.
  std::vector<std::size_t> per_target;
  std::size_t worst = 0;
  std::size_t td = 0;
  bool at_least_td = false;
};

// Runs the least-consistent-concept learner against every target. Wrong
// hypotheses get a subsumption answer (a negative from h \ t, else a positive
// from t \ h); a correct one is certified with distinguishing-input and
// membership queries. Throws UnsupportedInterface unless `interface` allows
// correctness, membership and distinguishing-input queries.
SampleComplexityReport ogis_sample_complexity(const FiniteConceptClass& cls, const OracleInterfaceSpec& interface);

// `.cls`: "domain: 0 1 2", then one concept per line; "{}" or "-" is the empty
// concept and '#' starts a comment. Throws ParseError with the line number.
FiniteConceptClass parse_class(std::string_view text);
std::string render_class(const FiniteConceptClass& cls);
// `.scv`: "universe: m", then one set per line as element indices.
SetCoverInstance parse_cover(std::string_view text);
std::string render_cover(const SetCoverInstance& instance);

// Reads a whole file; throws Error when it cannot be opened.
std::string read_text_file(const std::string& path);

// Seeded random classes with 2 <= |domain| <= max_domain and
// 2 <= |C| <= min(max_concepts, 2^|domain|).
FiniteConceptClass random_class(std::uint64_t seed, std::size_t max_domain = 6, std::size_t max_concepts = 32);
// Seeded coverable instances with 1..max_sets sets over 1..max_universe elements.
SetCoverInstance random_cover(std::uint64_t seed, std::size_t max_sets = 8, std::size_t max_universe = 6);

FiniteConceptClass powerset_class(std::size_t domain_size);
FiniteConceptClass singletons_class(std::size_t domain_size);

}  // namespace ogis
