#include "ogis_tools/separations.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>

#include "ogis/engine.hpp"
#include "ogis/families.hpp"
#include "ogis/verifiers.hpp"

namespace ogis::tools {

namespace {

std::vector<CheckStrategy> strategies(std::uint64_t seed) {
  return {AscendingStrategy{}, DescendingCappedStrategy{100}, SeededRandomStrategy{seed}};
}

ExperimentResult start(std::string id, std::string title) {
  ExperimentResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.pass = true;
  return r;
}

std::string show(MaybeExample e) { return e ? std::to_string(*e) : std::string("bottom"); }

void fail(ExperimentResult& r, std::string message) {
  // Keep reports readable when a defect trips many cases.
  if (r.failures.size() < 20) r.failures.push_back(std::move(message));
  r.pass = false;
}

// Ascending prefixes of the target's members, from the empty prefix to
// `longest` elements.
std::vector<std::vector<Example>> seen_prefixes(const Language& target, std::size_t longest) {
  const std::vector<Example> all = members(target, longest);
  std::vector<std::vector<Example>> out;
  for (std::size_t n = 0; n <= all.size(); ++n) out.emplace_back(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

RunConfig base_config(std::string family, Language target, VerifierKind verifier, std::string_view learner) {
  RunConfig c;
  c.family = std::move(family);
  c.target = std::move(target);
  c.verifier = std::move(verifier);
  c.learner = std::string(learner);
  return c;
}

}  // namespace

std::vector<Language> catalog_corpus(bool quick) {
  std::vector<std::string_view> texts = {
      "Empty",
      "Universe",
      "Finite{0}",
      "Finite{1,3}",
      "Finite{2,4,6}",
      "Finite{2,6}",
      "Finite{5,9}",
      "Finite{9,12}",
      "Finite{0,2}",
      "Finite{1,2,3}",
      "Finite{2,6,16}",
      "UpTo(0)",
      "UpTo(2)",
      "UpTo(4)",
      "UpTo(6)",
      "AllAbove(0)",
      "AllAbove(8)",
      "Pow2AtLeast(0)",
      "Pow2AtLeast(1)",
      "Pow2AtLeast(2)",
      "Pow32Finite{(0,1),(1,1)}",
      "Pow32Finite{(0,1),(1,1),(0,4)}",
      "Pow32Finite{(1,0),(0,3)}",
  };
  if (!quick) {
    texts.insert(texts.end(), {"Finite{16}", "UpTo(9)", "AllAbove(3)", "Pow2AtLeast(3)", "Pow32Finite{(1,2)}"});
  }
  std::vector<Language> out;
  for (std::string_view t : texts) out.push_back(parse_language(t));
  return out;
}

ExperimentResult experiment_e1(const SeparationOptions& options) {
  ExperimentResult r = start("E1", "mincheck simulated by check equals mincheck");
  const auto corpus = catalog_corpus(options.quick);
  std::size_t comparisons = 0;
  std::size_t pairs = 0;
  for (const Language& target : corpus) {
    for (const Language& candidate : corpus) {
      ++pairs;
      const MaybeExample expected = mincheck(target, candidate);
      for (const CheckStrategy& s : strategies(options.seed)) {
        ++comparisons;
        const MaybeExample got = mincheck_via_check(target, candidate, s);
        if (got != expected) {
          fail(r, to_string(target) + " / " + to_string(candidate) + " / " + to_string(s) + ": " + show(got) +
                      " != " + show(expected));
        }
      }
    }
  }
  r.pass = r.pass && pairs >= 500;
  r.metrics = {{"pairs", pairs}, {"comparisons", comparisons}, {"strategies", 3}};
  return r;
}

ExperimentResult experiment_e2(const SeparationOptions& options) {
  ExperimentResult r = start("E2", "bounded filters over check equal bcheck and hcheck");
  const auto corpus = catalog_corpus(options.quick);
  const std::vector<Example> bounds = {0, 4, 8};
  std::size_t cb = 0;
  std::size_t pb = 0;
  std::size_t pairs = 0;
  for (const Language& target : corpus) {
    const auto prefixes = seen_prefixes(target, 3);
    for (const Language& candidate : corpus) {
      ++pairs;
      for (const CheckStrategy& s : strategies(options.seed)) {
        for (Example b : bounds) {
          ++cb;
          const MaybeExample got = cb_filter_via_check(b, target, candidate, s);
          const MaybeExample expected = bcheck(b, target, candidate);
          if (got != expected) {
            fail(r, "bcheck:" + std::to_string(b) + " " + to_string(target) + " / " + to_string(candidate) + " / " +
                        to_string(s) + ": " + show(got) + " != " + show(expected));
          }
        }
        for (const auto& seen : prefixes) {
          ++pb;
          const MaybeExample got = pb_filter_via_check(target, candidate, seen, s);
          const MaybeExample expected = hcheck(target, candidate, seen);
          if (got != expected) {
            fail(r, "hcheck " + to_string(target) + " / " + to_string(candidate) + " / " + to_string(s) + " seen " +
                        std::to_string(seen.size()) + ": " + show(got) + " != " + show(expected));
          }
        }
      }
    }
  }
  r.pass = r.pass && pairs >= 500;
  r.metrics = {{"pairs", pairs}, {"cb_comparisons", cb}, {"pb_comparisons", pb}};
  return r;
}

ExperimentResult experiment_e3(const SeparationOptions& options) {
  ExperimentResult r = start("E3", "bcheck is blind on finite sets above its bound");
  NotCbFamily spec;
  spec.bound = 8;
  spec.count = options.quick ? 12 : 16;
  spec.seed = options.seed;
  const auto members = family_notcb(spec);
  const std::string family = "notcb:8";

  std::size_t pairs = 0;
  std::size_t non_subset = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i == j) continue;
      ++pairs;
      const auto& target = members[i];
      const auto& candidate = members[j];
      const auto elements = ogis::members(candidate);
      if (std::any_of(elements.begin(), elements.end(), [&](Example x) { return !contains(target, x); })) {
        ++non_subset;
      }
      if (const MaybeExample m = bcheck(8, target, candidate)) {
        fail(r, "bcheck(8) on " + to_string(target) + " / " + to_string(candidate) + " returned " + show(m));
      }
    }
  }
  if (pairs < 100) fail(r, "only " + std::to_string(pairs) + " pairs");
  if (non_subset < 20) fail(r, "only " + std::to_string(non_subset) + " non-subset pairs");

  // gold-finite proposes only subsets of the target; consistent-enum walks the
  // family and proposes non-subset candidates, which bcheck:8 lets through.
  std::size_t bounded_cex = 0;
  std::size_t blind_queries = 0;
  std::size_t identified_check = 0;
  std::size_t runs = 0;
  for (const Language& target : members) {
    for (const std::string_view learner : {kGoldFinite, kConsistentEnum}) {
      RunConfig bounded = base_config(family, target, ConstantBoundedVerifier{8}, learner);
      bounded.context.concepts = members;
      const RunResult b = run_cegis(bounded);
      bounded_cex += b.counterexamples;
      if (b.counterexamples != 0) {
        fail(r, std::string(learner) + " got a counterexample under bcheck:8 on " + to_string(target));
      }
      for (const StepRecord& step : b.steps) {
        if (step.candidate && !subset_of(*step.candidate, target)) ++blind_queries;
      }
    }
    const RunResult a = run_cegis(base_config(family, target, ArbitraryVerifier{AscendingStrategy{}}, kGoldFinite));
    ++runs;
    if (a.identified) {
      ++identified_check;
    } else {
      fail(r, "gold-finite with check did not identify " + to_string(target));
    }
  }
  r.metrics = {{"members", members.size()},       {"pairs", pairs},
               {"non_subset_pairs", non_subset},  {"bounded_counterexamples", bounded_cex},
               {"bounded_nonsubset_queries", blind_queries},
               {"check_runs", runs},              {"check_identified", identified_check}};
  return r;
}

ExperimentResult experiment_e4(const SeparationOptions& options) {
  ExperimentResult r = start("E4", "chain learner: check identifies, hcheck stays silent");
  const Example top = options.quick ? 12 : 20;
  const std::string family = "notpb:" + std::to_string(top);
  LearnerContext context;
  context.chain_limit = top + 1;

  std::size_t check_runs = 0;
  for (Example i = 0; i <= top; ++i) {
    for (const CheckStrategy& s : strategies(options.seed)) {
      RunConfig c = base_config(family, Language::up_to(i), ArbitraryVerifier{s}, kChain);
      c.context = context;
      const RunResult res = run_cegis(c);
      ++check_runs;
      if (!res.identified || res.correctness_queries != i + 2) {
        fail(r, "UpTo(" + std::to_string(i) + ") under " + to_string(s) + ": identified=" +
                    (res.identified ? "true" : "false") + " queries=" + std::to_string(res.correctness_queries));
      }
    }
  }

  std::size_t blind_checks = 0;
  for (Example i = 0; i <= top; ++i) {
    const Language target = Language::up_to(i);
    const auto prefixes = seen_prefixes(target, i + 1);
    for (Example j = i + 1; j <= top; ++j) {
      for (const auto& seen : prefixes) {
        ++blind_checks;
        if (const MaybeExample m = hcheck(target, Language::up_to(j), seen)) {
          fail(r, "hcheck(UpTo(" + std::to_string(i) + "), UpTo(" + std::to_string(j) + ")) returned " + show(m));
        }
      }
    }
  }

  std::size_t hcheck_identified = 0;
  std::size_t hcheck_cex = 0;
  for (Example i = 0; i <= top; ++i) {
    RunConfig c = base_config(family, Language::up_to(i), PositiveBoundedVerifier{}, kChain);
    c.context = context;
    const RunResult res = run_cegis(c);
    hcheck_cex += res.counterexamples;
    if (res.identified) {
      ++hcheck_identified;
      fail(r, "hcheck run identified UpTo(" + std::to_string(i) + ")");
    }
  }
  if (hcheck_cex != 0) fail(r, "hcheck runs received counterexamples");
  r.metrics = {{"max_index", top},
               {"check_runs", check_runs},
               {"blind_checks", blind_checks},
               {"hcheck_identified", hcheck_identified},
               {"hcheck_counterexamples", hcheck_cex}};
  return r;
}

ExperimentResult experiment_e5(const SeparationOptions& options) {
  ExperimentResult r = start("E5", "pbcegis family-3 learner identifies with finite memory");
  PbFamily spec;
  spec.max_exponent = 12;
  spec.count_finite = options.quick ? 20 : 50;
  spec.seed = options.seed;
  spec.max_size = 8;
  const auto generated = family_pb_members(spec);
  std::vector<Language> targets;
  std::size_t finite_targets = 0;
  for (const Language& l : generated) {
    if (l.kind() == FormKind::kPow2AtLeast && l.parameter() > 10) continue;
    if (l.kind() == FormKind::kPow32Finite) ++finite_targets;
    targets.push_back(l);
  }
  if (finite_targets != spec.count_finite) fail(r, "generated only " + std::to_string(finite_targets) + " finite members");
  const auto orders = standard_orders(options.quick ? 4 : 9, options.seed);
  const std::size_t declared = *make_learner(kPbcegisFamily3)->memory_bound();

  std::size_t runs = 0;
  std::size_t identified = 0;
  std::map<std::size_t, std::size_t> bytes_by_size;
  std::set<std::size_t> finite_max_bytes;
  for (const Language& target : targets) {
    const RunConfig c = base_config("pb:12", target, PositiveBoundedVerifier{}, kPbcegisFamily3);
    const OrdersResult out = identify_over_orders(c, orders);
    for (std::size_t k = 0; k < out.runs.size(); ++k) {
      const RunResult& res = out.runs[k];
      ++runs;
      if (res.identified) {
        ++identified;
      } else {
        fail(r, to_string(target) + " under " + to_string(orders[k]) + " ended at " + to_string(res.final_hypothesis));
      }
      if (res.max_state_bytes > declared) fail(r, "state of " + std::to_string(res.max_state_bytes) + " bytes");
      if (target.kind() == FormKind::kPow32Finite) {
        const std::size_t size = target.pow32_terms().size();
        bytes_by_size[size] = std::max(bytes_by_size[size], res.max_state_bytes);
        finite_max_bytes.insert(res.max_state_bytes);
      }
    }
  }
  if (finite_max_bytes.size() != 1) fail(r, "max state bytes vary with the target");
  nlohmann::json by_size = nlohmann::json::object();
  for (const auto& [size, bytes] : bytes_by_size) by_size[std::to_string(size)] = bytes;
  r.metrics = {{"targets", targets.size()},   {"finite_targets", finite_targets}, {"orders", orders.size()},
               {"runs", runs},                {"identified", identified},         {"declared_state_bound", declared},
               {"max_state_bytes_by_size", by_size}};
  return r;
}

ExperimentResult experiment_e6(const SeparationOptions&) {
  ExperimentResult r = start("E6", "adversary confuses the lossy baseline but not the pbcegis learner");
  constexpr std::size_t kBudget = 10000;
  const AdversaryParams params;
  const AdversaryOutcome lossy = adversary_search(kGoldLast3, params, kBudget);
  const AdversaryOutcome pb = adversary_search(kPbcegisFamily3, params, kBudget);
  if (!lossy.witness) fail(r, "no confusion witness against gold-last3");
  if (pb.witness) fail(r, "confusion witness found against pbcegis-family3");
  r.metrics = {{"budget", kBudget},
               {"lossy_steps", lossy.steps_used},
               {"lossy_witness", lossy.witness ? to_json(*lossy.witness) : nlohmann::json(nullptr)},
               {"pbcegis_steps", pb.steps_used},
               {"pbcegis_pairs_tried", pb.pairs_tried},
               {"pbcegis_witness", pb.witness ? to_json(*pb.witness) : nlohmann::json(nullptr)}};
  return r;
}

ExperimentResult experiment_e7(const SeparationOptions& options) {
  ExperimentResult r = start("E7", "bcheck identifies the bounded chain, hcheck is blind on it");
  constexpr Example kBound = 6;
  const auto members = family_cbnotpb(kBound);
  const auto orders = standard_orders(options.quick ? 2 : 4, options.seed);

  std::size_t runs = 0;
  std::size_t identified = 0;
  for (const Language& target : members) {
    RunConfig c = base_config("cbnotpb:6", target, ConstantBoundedVerifier{kBound}, kConsistentEnum);
    c.context.concepts = members;
    const OrdersResult out = identify_over_orders(c, orders);
    runs += out.runs.size();
    identified += out.identified_count;
    if (!out.identified_all) fail(r, "consistent-enum with bcheck:6 missed " + to_string(target));
  }

  std::size_t max_difference = 0;
  std::size_t blind_checks = 0;
  for (const Language& target : members) {
    for (const Language& candidate : members) {
      for (Example x : difference_witnesses(candidate, target, 64)) max_difference = std::max<std::size_t>(max_difference, x);
      for (const auto& seen : seen_prefixes(target, kBound)) {
        ++blind_checks;
        if (const MaybeExample m = hcheck(target, candidate, seen)) {
          fail(r, "hcheck(" + to_string(target) + ", " + to_string(candidate) + ") returned " + show(m));
        }
      }
    }
  }
  if (max_difference >= kBound) fail(r, "a difference element reaches the bound");
  r.metrics = {{"members", members.size()},        {"runs", runs},
               {"identified", identified},         {"blind_checks", blind_checks},
               {"max_difference_element", max_difference}};
  return r;
}

std::vector<ExperimentResult> run_separations(const SeparationOptions& options) {
  using Experiment = ExperimentResult (*)(const SeparationOptions&);
  const std::vector<Experiment> battery = {experiment_e1, experiment_e2, experiment_e3, experiment_e4,
                                           experiment_e5, experiment_e6, experiment_e7};
  std::vector<std::future<ExperimentResult>> pending;
  for (Experiment e : battery) pending.push_back(std::async(std::launch::async, e, options));
  std::vector<ExperimentResult> out;
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

nlohmann::json separations_report(const SeparationOptions& options, const std::vector<ExperimentResult>& results) {
  nlohmann::json experiments = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  bool all = true;
  for (const ExperimentResult& e : results) {
    experiments.push_back({{"id", e.id},
                           {"title", e.title},
                           {"version", e.version},
                           {"pass", e.pass},
                           {"metrics", e.metrics},
                           {"failures", e.failures}});
    summary[e.id] = e.pass ? "pass" : "fail";
    all = all && e.pass;
  }
  return {{"schema", kSeparationsSchema},
          {"seed", options.seed},
          {"quick", options.quick},
          {"experiments", experiments},
          {"summary", summary},
          {"all_pass", all}};
}

}  // namespace ogis::tools
