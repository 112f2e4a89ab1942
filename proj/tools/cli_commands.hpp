#pragma once

#include <iosfwd>
#include <string>

#include "cli_config.hpp"
#include "json.hpp"
#include "wfl/axioms.hpp"

namespace wfl::cli {

struct CommandOutput {
  nlohmann::ordered_json document;
  std::string text;  // serialized document or CSV table
  bool passed = true;
};

nlohmann::ordered_json check_json(const CheckReport& r);

/// Runs cfg.command and serializes its output; library and usage errors propagate.
CommandOutput execute(const RunConfig& cfg);

/**
 * execute() plus output handling and the exit-status contract:
 * 0 all checks passed, 1 a check failed or precision was lost, 2 invalid input.
 */
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace wfl::cli
