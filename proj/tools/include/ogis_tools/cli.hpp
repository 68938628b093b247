#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ogis::tools {

inline constexpr int kExitIdentified = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConvergedWrong = 3;
inline constexpr int kExitBudgetExhausted = 4;

// Entry point of ogis_lab without the program name; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Report renderings. CSV and Markdown flatten nested objects into dotted keys
// and render arrays as JSON text.
std::string render_json(const nlohmann::json& report);
std::string render_csv(const nlohmann::json& report);
std::string render_markdown(const nlohmann::json& report);

}  // namespace ogis::tools
