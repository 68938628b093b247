#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ogis/language.hpp"

namespace ogis::tools {

struct ExperimentResult {
  std::string id;
  std::string title;
  int version = 1;
  bool pass = false;
  // Counts and observations; keys sorted on output.
  nlohmann::json metrics = nlohmann::json::object();
  // Human-readable notes on any failure.
  std::vector<std::string> failures;
};

struct SeparationOptions {
  std::uint64_t seed = 42;
  bool quick = false;
};

// The catalog corpus used by E1 and E2.
std::vector<Language> catalog_corpus(bool quick);

ExperimentResult experiment_e1(const SeparationOptions& options);
ExperimentResult experiment_e2(const SeparationOptions& options);
ExperimentResult experiment_e3(const SeparationOptions& options);
ExperimentResult experiment_e4(const SeparationOptions& options);
ExperimentResult experiment_e5(const SeparationOptions& options);
ExperimentResult experiment_e6(const SeparationOptions& options);
ExperimentResult experiment_e7(const SeparationOptions& options);

// Runs E1..E7 concurrently; results are in id order.
std::vector<ExperimentResult> run_separations(const SeparationOptions& options);

inline constexpr std::string_view kSeparationsSchema = "ogis-lab/separations/1";

// {schema, seed, quick, experiments, summary, all_pass}
nlohmann::json separations_report(const SeparationOptions& options, const std::vector<ExperimentResult>& results);

}  // namespace ogis::tools
