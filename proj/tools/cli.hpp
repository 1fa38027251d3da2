#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace symplectica::cli {

enum class Status { Ok, Error, Inconclusive };
const char* status_name(Status s);
int exit_code(Status s);

struct CommandResult {
  std::string verb;
  Status status = Status::Ok;
  nlohmann::json payload;
  std::uint64_t seed = 0;
  std::string version;
  std::string prng;
  double timing_ms = 0.0;
  /// Output mode requested on the command line.
  bool json_output = false;

  nlohmann::json to_json() const;
};

const std::vector<std::string>& verbs();

/// Parse `args` (without the program name), read input from --input
/// (a path, or "-" for `in`) and dispatch. Never throws: failures come back
/// with status Error and a payload {"error", "message", "invariant"?}.
CommandResult run(const std::vector<std::string>& args, std::istream& in);

/// Text for stdout: the full result as JSON with --json, otherwise a short
/// header line followed by the indented payload.
std::string render(const CommandResult& r);

}  // namespace symplectica::cli
