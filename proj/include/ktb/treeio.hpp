#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ktb/diagnostic.hpp"
#include "ktb/model.hpp"
#include "ktb/tree.hpp"

namespace ktb {

// Raised for unreadable streams and non-UTF-8 input. Format problems inside
// a record are reported as diagnostics instead.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_valid_utf8(std::string_view s);

// ---------------------------------------------------------------------------
// Bracketed trees
//
//   tree     := '(' LABEL ('-' FTAG)* ('+' MORPHEME)* (tree | leaf)+ ')'
//   leaf     := [SURFACE '|'] MORPHEME ('+' MORPHEME)*
//   MORPHEME := form '/' tag
//
// Literal ( ) + / | \ and space inside forms and surfaces are escaped with a
// backslash. The optional SURFACE keeps fused eojeol forms.
// ---------------------------------------------------------------------------

struct TreeParseOptions {
  Tagset tagset = Tagset::kaist;
  std::size_t ordinal = 0;     // reported in diagnostics
  std::size_t first_line = 1;    // line of the first character of `text`
  std::size_t first_column = 1;  // column of the first character of `text`
  // Treebank readers demand an S root; lenient mode downgrades to a warning.
  bool require_root_s = false;
};

Parsed<ConstituentNode> parse_tree(std::string_view text, const TagsetRegistry& registry,
                                   const TreeParseOptions& options = {});

std::string serialize_tree(const ConstituentNode& node);

std::string escape_form(std::string_view form);

struct TreeRecord {
  std::size_t ordinal = 0;  // 1-based block ordinal
  std::optional<ConstituentNode> tree;
  std::vector<Diagnostic> diagnostics;
};

/// Streams trees out of a treebank file. Blocks are delimited by balanced
/// brackets; a blank line inside an unbalanced block ends it. Malformed
/// blocks are returned with error diagnostics and counted as dropped.
class TreebankReader {
 public:
  TreebankReader(std::istream& in, const TagsetRegistry& registry, Tagset tagset);

  std::optional<TreeRecord> next();

  std::size_t kept() const { return kept_; }
  std::size_t dropped() const { return dropped_; }

 private:
  bool read_line(std::string& line);
  std::optional<std::string> read_block();

  std::istream& in_;
  const TagsetRegistry& registry_;
  Tagset tagset_;
  std::size_t line_no_ = 0;
  std::size_t block_line_ = 0;
  std::size_t ordinal_ = 0;
  std::size_t kept_ = 0;
  std::size_t dropped_ = 0;
  std::size_t block_column_ = 0;
  std::string pending_;
  std::size_t pending_pos_ = 0;
  std::size_t pending_line_ = 0;
};

// ---------------------------------------------------------------------------
// Morphological analysis files: one eojeol per line,
//   surface<TAB>form1/tag1+form2/tag2+...
// with sentences separated by blank lines.
// ---------------------------------------------------------------------------

Parsed<Eojeol> parse_morph_line(std::string_view line, const TagsetRegistry& registry,
                                Tagset tagset, SourceLocation where = {});

std::string format_morph_line(const Eojeol& e);

struct MorphSentence {
  std::size_t ordinal = 0;
  std::vector<Eojeol> eojeols;
  std::vector<Diagnostic> diagnostics;
};

class MorphReader {
 public:
  MorphReader(std::istream& in, const TagsetRegistry& registry, Tagset tagset);
  std::optional<MorphSentence> next();

 private:
  std::istream& in_;
  const TagsetRegistry& registry_;
  Tagset tagset_;
  std::size_t line_no_ = 0;
  std::size_t ordinal_ = 0;
};

// ---------------------------------------------------------------------------
// CoNLL-X
// ---------------------------------------------------------------------------

/// Writes one sentence block terminated by a blank line. Throws
/// std::invalid_argument for labels outside the label set in strict mode.
std::string write_conll(const DependencyTree& tree, const TagsetRegistry& registry);

Parsed<DependencyTree> from_conll(std::string_view block, const TagsetRegistry& registry,
                                  Tagset tagset, SourceLocation where = {});

struct ConllRecord {
  std::size_t ordinal = 0;
  std::optional<DependencyTree> tree;
  std::vector<Diagnostic> diagnostics;
};

class ConllReader {
 public:
  ConllReader(std::istream& in, const TagsetRegistry& registry, Tagset tagset);

  std::optional<ConllRecord> next();

 private:
  std::optional<std::string> read_block();

  std::istream& in_;
  const TagsetRegistry& registry_;
  Tagset tagset_;
  std::size_t line_no_ = 0;
  std::size_t block_line_ = 0;
  std::size_t ordinal_ = 0;
};

enum class FileFormat { brackets, conll };

/// Looks at the first non-blank character of the file: '(' means bracketed
/// trees, anything else CoNLL. Empty files count as bracketed.
FileFormat sniff_format(const std::filesystem::path& path);

}  // namespace ktb
