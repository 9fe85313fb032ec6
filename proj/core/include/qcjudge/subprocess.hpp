#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace qcjudge {

struct ProcessResult {
  // Exit status, or -1 when the process was killed or could not start.
  int exit_code = -1;
  bool timed_out = false;
  bool spawn_failed = false;
  std::string out;
  std::string err;
};

// Runs `/bin/sh -c command`, writes `input` to its stdin and collects stdout
// and stderr. The child is killed once `timeout` elapses.
ProcessResult run_shell(const std::string& command, std::string_view input, std::chrono::milliseconds timeout);

}  // namespace qcjudge
