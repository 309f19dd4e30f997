#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ktb/model.hpp"

namespace ktb::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDiagnostics = 1;  // finished, but error diagnostics were emitted
inline constexpr int kFailure = 2;      // usage or I/O failure

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::optional<std::string> output;
  Tagset tagset = Tagset::kaist;
  Tagset gold_tagset = Tagset::kaist;
  std::optional<Mode> mode;
  std::optional<std::string> config_path;
  std::optional<std::string> manifest_path;
  std::optional<std::string> ratios;
  std::optional<std::string> morph_path;
  std::optional<std::string> gold_path;
  std::optional<std::string> auto_path;
  std::string report_format = "text";
  std::size_t workers = 1;
};

/// Runs one subcommand. `args` excludes the program name. Regular output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace ktb::cli
