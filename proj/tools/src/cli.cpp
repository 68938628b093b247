#include "ogis_tools/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ogis/engine.hpp"
#include "ogis/errors.hpp"
#include "ogis/families.hpp"
#include "ogis/finite_lab.hpp"
#include "ogis_tools/separations.hpp"

namespace ogis::tools {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("OGIS_LAB_SEED"); env != nullptr && *env != '\0') {
    return parse_u64(env, "OGIS_LAB_SEED");
  }
  return kDefaultSeed;
}

TranscriptOrder parse_order(std::string_view text, std::uint64_t seed) {
  if (text == "ascending") return AscendingOrder{};
  if (text == "shuffle") return ShuffledOrder{seed};
  if (text.starts_with("shuffle:")) return ShuffledOrder{parse_u64(text.substr(8), "shuffle seed")};
  if (text.starts_with("scripted:")) {
    ScriptedOrder order;
    std::string_view rest = text.substr(9);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      order.script.push_back(parse_u64(rest.substr(0, comma), "scripted example"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return order;
  }
  throw UsageError("unknown order '" + std::string(text) + "' (ascending | shuffle[:S] | scripted:a,b,...)");
}

CheckStrategy resolve_strategy(std::string_view text, std::uint64_t seed) {
  if (text == "random") return SeededRandomStrategy{seed};
  return parse_strategy(text);
}

bool all_digits(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
}

void flatten(const nlohmann::json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    return;
  }
  rows.emplace_back(prefix, node.is_string() ? node.get<std::string>() : node.dump());
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const nlohmann::json& report, const std::string& format, const std::string& path, std::ostream& out) {
  std::string text;
  if (format == "json") {
    text = render_json(report);
  } else if (format == "csv") {
    text = render_csv(report);
  } else {
    text = render_markdown(report);
  }
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

struct RunFlags {
  std::string family = "notpb:20";
  std::string target;
  std::string verifier = "check";
  std::string strategy = "ascending";
  std::string order = "ascending";
  std::string learner{kChain};
  std::size_t budget = 1000;
  std::size_t window = 25;
  std::size_t memory_bound = 4096;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
};

int cmd_run(const RunFlags& flags, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(flags.seed);
  FamilySpec family;
  try {
    family = parse_family(flags.family, seed);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  const std::vector<Language> members = generate(family);

  RunConfig config;
  config.family = to_string(family);
  if (all_digits(flags.target)) {
    const std::uint64_t index = parse_u64(flags.target, "target index");
    if (index >= members.size()) {
      throw UsageError("target index " + flags.target + " is outside " + config.family + " (" +
                       std::to_string(members.size()) + " members)");
    }
    config.target = members[index];
  } else {
    config.target = parse_language(flags.target);
  }
  config.verifier = parse_verifier(flags.verifier, resolve_strategy(flags.strategy, seed));
  config.learner = flags.learner;
  config.order = parse_order(flags.order, seed);
  config.budget = flags.budget;
  config.window = flags.window;
  config.memory_bound = flags.memory_bound;
  config.seed = seed;
  config.context.concepts = members;
  if (const auto* f = std::get_if<NotPbFamily>(&family)) config.context.chain_limit = f->max_index + 1;
  if (const auto* f = std::get_if<CbNotPbFamily>(&family)) config.context.chain_limit = f->bound;

  const RunResult result = run_cegis(config);
  emit(to_json(result), flags.format, flags.out, out);
  if (result.identified) return kExitIdentified;
  return result.converged ? kExitConvergedWrong : kExitBudgetExhausted;
}

int cmd_separations(std::optional<std::uint64_t> seed_flag, bool quick, const std::string& path,
                    const std::string& format, std::ostream& out) {
  SeparationOptions options;
  options.seed = resolve_seed(seed_flag);
  options.quick = quick;
  const auto results = run_separations(options);
  const nlohmann::json report = separations_report(options, results);
  emit(report, format, path, out);
  return report["all_pass"].get<bool>() ? kExitIdentified : kExitFailure;
}

std::string load_text(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

FiniteConceptClass load_class(const std::string& path) { return parse_class(load_text(path)); }

std::string render_labeled(const std::vector<LabeledExample>& sequence) {
  std::string text = "{";
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i != 0) text += ", ";
    text += std::to_string(sequence[i].x) + (sequence[i].positive ? "+" : "-");
  }
  return text + "}";
}

std::string render_elements(const std::vector<Example>& elements) {
  std::string text = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) text += (i ? "," : "") + std::to_string(elements[i]);
  return text + "}";
}

int cmd_finite(const std::string& command, const std::string& path, std::optional<std::size_t> target,
               std::ostream& out) {
  if (command == "td") {
    const FiniteConceptClass cls = load_class(path);
    const TeachingResult td = teaching_dimension(cls);
    out << "TD=" << td.dimension << '\n';
    for (std::size_t c = 0; c < cls.size(); ++c) {
      out << "concept " << c << ' ' << render_elements(cls.concept_elements(c)) << " teach "
          << render_labeled(td.sequences[c]) << '\n';
    }
    return kExitIdentified;
  }
  if (command == "vc") {
    const std::size_t vc = vc_dimension(load_class(path));
    out << "VC=" << vc << '\n';
    return kExitIdentified;
  }
  if (command == "bounds") {
    const BoundsReport r = td_bounds_check(load_class(path));
    out << (r.pass ? "pass" : "fail") << ": " << r.render() << '\n';
    out << "VC=" << r.vc << " TD=" << r.td << " |C|=" << r.classes << '\n';
    return r.pass ? kExitIdentified : kExitFailure;
  }
  if (command == "mincex") {
    const FiniteConceptClass cls = load_class(path);
    if (!target || *target >= cls.size()) {
      throw UsageError("--target must name a concept index below " + std::to_string(cls.size()));
    }
    const auto set = min_counterexample_set(cls, *target);
    out << "size=" << set.size() << '\n' << "examples=" << render_elements(set) << '\n';
    return kExitIdentified;
  }
  if (command == "reduce") {
    const SetCoverInstance instance = parse_cover(load_text(path));
    const auto cover = min_set_cover(instance);
    const FiniteConceptClass cls = setcover_to_fis(instance);
    const auto cex = min_counterexample_set(cls, *cls.target());
    out << "cover_size=" << cover.size() << '\n';
    out << "cover=" << render_elements({cover.begin(), cover.end()}) << '\n';
    out << "min_counterexample_size=" << cex.size() << '\n';
    out << "equal=" << (cover.size() == cex.size() ? "true" : "false") << '\n';
    return cover.size() == cex.size() ? kExitIdentified : kExitFailure;
  }
  if (command == "mogis") {
    const SampleComplexityReport r = ogis_sample_complexity(load_class(path), OracleInterfaceSpec::finite_ogis());
    out << "worst=" << r.worst << " TD=" << r.td << " holds=" << (r.at_least_td ? "true" : "false") << '\n';
    return r.at_least_td ? kExitIdentified : kExitFailure;
  }
  throw UsageError("unknown finite command '" + command + "'");
}

}  // namespace

std::string render_json(const nlohmann::json& report) { return report.dump(2) + "\n"; }

std::string render_csv(const nlohmann::json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::string text = "key,value\n";
  for (const auto& [k, v] : rows) text += csv_field(k) + "," + csv_field(v) + "\n";
  return text;
}

std::string render_markdown(const nlohmann::json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::string text = "| key | value |\n| --- | --- |\n";
  for (const auto& [k, v] : rows) {
    std::string cell = v;
    std::string escaped;
    for (char c : cell) escaped += c == '|' ? std::string("\\|") : std::string(1, c);
    text += "| " + k + " | " + escaped + " |\n";
  }
  return text;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oracle-guided inductive synthesis laboratory", "ogis_lab"};
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"json", "csv", "md"};

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run one CEGIS dialogue");
  run_cmd->add_option("--family", run.family, "notcb:B | notpb:N | pb:E | cbnotpb:B")->capture_default_str();
  run_cmd->add_option("--target", run.target, "Family member index or a language such as UpTo(3)")->required();
  run_cmd->add_option("--verifier", run.verifier, "check | mincheck | bcheck:B | hcheck")->capture_default_str();
  run_cmd->add_option("--strategy", run.strategy, "ascending | descending:H | random[:SEED]")->capture_default_str();
  run_cmd->add_option("--order", run.order, "ascending | shuffle[:S] | scripted:a,b,...")->capture_default_str();
  run_cmd->add_option("--learner", run.learner, "Learner id")->capture_default_str();
  run_cmd->add_option("--budget", run.budget, "Step budget")->capture_default_str();
  run_cmd->add_option("--window", run.window, "Stability window")->capture_default_str();
  run_cmd->add_option("--memory-bound", run.memory_bound, "Finite-memory bound in bytes")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Seed (falls back to OGIS_LAB_SEED, then 42)");
  run_cmd->add_option("--out", run.out, "Write the report to FILE");
  run_cmd->add_option("--format", run.format, "json | csv | md")->check(CLI::IsMember(formats))->capture_default_str();

  std::optional<std::uint64_t> sep_seed;
  bool quick = false;
  std::string sep_out;
  std::string sep_format = "json";
  auto* sep_cmd = app.add_subcommand("separations", "Run the separation experiment battery E1-E7");
  sep_cmd->add_option("--seed", sep_seed, "Seed (falls back to OGIS_LAB_SEED, then 42)");
  sep_cmd->add_flag("--quick", quick, "Smaller corpora");
  sep_cmd->add_option("--out", sep_out, "Write the report to FILE");
  sep_cmd->add_option("--format", sep_format, "json | csv | md")->check(CLI::IsMember(formats))->capture_default_str();

  std::string finite_command;
  std::string finite_path;
  std::optional<std::size_t> finite_target;
  auto* finite_cmd = app.add_subcommand("finite", "Finite concept class analyses");
  finite_cmd->add_option("command", finite_command, "td | vc | bounds | mincex | reduce | mogis")
      ->required()
      ->check(CLI::IsMember({"td", "vc", "bounds", "mincex", "reduce", "mogis"}));
  finite_cmd->add_option("file", finite_path, ".cls class file (.scv for reduce)")->required();
  finite_cmd->add_option("--target", finite_target, "Target concept index for mincex");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run, out);
    if (sep_cmd->parsed()) return cmd_separations(sep_seed, quick, sep_out, sep_format, out);
    return cmd_finite(finite_command, finite_path, finite_target, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownLearner& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidLanguage& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ogis::tools
