#include "ktb/diagnostic.hpp"

#include <algorithm>
#include <utility>

namespace ktb {

Diagnostic make_error(std::string code, std::string message, SourceLocation where) {
  return {Severity::error, where, std::move(code), std::move(message)};
}

Diagnostic make_warning(std::string code, std::string message, SourceLocation where) {
  return {Severity::warning, where, std::move(code), std::move(message)};
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::error ? "error" : "warning";
  out += '\t';
  out += std::to_string(d.where.tree) + ":" + std::to_string(d.where.line) + ":" +
         std::to_string(d.where.column);
  out += '\t';
  out += d.code;
  out += '\t';
  for (char c : d.message) out += (c == '\t' || c == '\n') ? ' ' : c;
  return out;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

}  // namespace ktb
