#pragma once

#include "capifqos/harness/scenario.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace capifqos::harness {

struct RunOptions {
  ScenarioSpec spec;
  std::filesystem::path out;  // empty: CSV goes to stdout
  bool live = false;
  std::string ccfUrl;
  std::string nefUrl;
  int tickMs = 100;  // live mode wall-clock tick length
};

// Flat key=value text; '#' starts a comment line. Throws BAD_CONFIG.
std::map<std::string, std::string> parse_config_text(std::string_view text);

// Arguments after the `run` subcommand. Flags override config-file values,
// which override defaults. Throws BAD_FLAG, BAD_CONFIG or SPEC_INVALID.
RunOptions build_scenario_spec(const std::vector<std::string>& args);

// Usage text for `run`.
std::string run_usage();

}  // namespace capifqos::harness
