#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ktb {

enum class Severity { error, warning };

// Zero means "not applicable" for every field.
struct SourceLocation {
  std::size_t tree = 0;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Diagnostic {
  Severity severity = Severity::error;
  SourceLocation where;
  std::string code;
  std::string message;
};

Diagnostic make_error(std::string code, std::string message, SourceLocation where = {});
Diagnostic make_warning(std::string code, std::string message, SourceLocation where = {});

// One-line record: severity<TAB>tree:line:column<TAB>code<TAB>message
std::string format_diagnostic(const Diagnostic& d);

bool has_errors(std::span<const Diagnostic> diagnostics);

// Result of reading one record: a value when the record was accepted, plus
// whatever diagnostics were raised on the way (warnings may accompany a value).
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

}  // namespace ktb
