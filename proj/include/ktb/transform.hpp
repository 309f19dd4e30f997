#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ktb/diagnostic.hpp"
#include "ktb/model.hpp"
#include "ktb/tree.hpp"

namespace ktb {

enum class SegmentKind { base, punct, paren_open, paren_close, affix_run };

std::string_view to_string(SegmentKind k);

/// A piece of an eojeol that becomes its own token in the Penn-style tree.
struct Segment {
  SegmentKind kind = SegmentKind::base;
  std::vector<Morpheme> morphemes;
  // Surface slice when the eojeol carries a fused surface; otherwise the
  // concatenation of `morphemes`.
  std::optional<std::string> surface;

  Eojeol to_eojeol() const { return Eojeol(morphemes, surface); }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Splits off punctuation: every punctuation morpheme is its own segment,
/// runs of other morphemes are `base`, except runs made only of grammatical
/// affixes that follow punctuation, which are `affix_run`. Brackets are
/// recognized by their literal forms "(" and ")".
std::vector<Segment> segment_eojeol(const Eojeol& e, const TagsetRegistry& registry);

struct PrnGroup;
using GroupItem = std::variant<Segment, PrnGroup>;

// A bracketed span: the opening bracket, inner items, and the closing bracket.
struct PrnGroup {
  std::vector<GroupItem> items;
};

bool operator==(const PrnGroup& a, const PrnGroup& b);

struct GroupedSegments {
  std::vector<GroupItem> items;
  std::vector<Diagnostic> diagnostics;
};

/// Groups balanced bracket spans innermost-first. Unbalanced brackets stay
/// plain punctuation tokens and raise a warning.
GroupedSegments group_parentheticals(std::vector<Segment> segments);

/// The tokens an eojeol turns into, in order (PRN groups flattened).
std::vector<Segment> eojeol_tokens(const Eojeol& e, const TagsetRegistry& registry);

/// KAIST-style tree to Penn-style tree: terminals are split at punctuation,
/// bracket spans become PRN phrases, phrase-level affixes are lowered onto
/// the adjacent terminal (or stand alone when punctuation intervenes), and
/// eojeol-final punctuation rises to the highest phrase ending with it.
/// Applying it to a Penn-style tree returns the tree unchanged.
ConstituentNode to_penn(const ConstituentNode& tree, const TagsetRegistry& registry,
                        std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace ktb
