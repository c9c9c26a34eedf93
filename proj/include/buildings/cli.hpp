#pragma once

#include <optional>
#include <string>
#include <vector>

#include "buildings/io.hpp"

namespace buildings::cli {

enum class Status { Ok, ViolationFound, Error };

struct CommandResult {
  Status status = Status::Ok;
  io::Json payload = io::Json::object();
  std::vector<std::string> diagnostics;
  /// Set for --format text (and always for help output).
  std::optional<std::string> text;
};

/// 0 ok, 1 violation found, 2 error.
int exit_code(Status status);

/// Runs one command; `args` excludes the program name. Never throws.
CommandResult run(const std::vector<std::string>& args);

/// What goes to standard output.
std::string render(const CommandResult& result);

}  // namespace buildings::cli
