#pragma once

#include "koszulkit/presentation.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace koszulkit {

struct RunConfig {
  std::string input_path;
  std::string format = "json";  // "json" or "text"
  std::string out_path;         // empty: stdout
  int threads = 1;              // accepted for interface stability; engines are sequential
  std::string field_override;   // "", "Q", or "Fp:<p>"
};

std::uint64_t fnv1a64(const std::string& data);

/// Executes the presentation's task list and assembles the machine-readable
/// report. Throws ParseError / EngineError / DependencyError; an empty task
/// list is a ParseError.
nlohmann::json run_report(const Presentation& p, const std::string& raw_input);

std::string render_text(const nlohmann::json& report);

}  // namespace koszulkit
