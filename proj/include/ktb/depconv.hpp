#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "ktb/model.hpp"
#include "ktb/tree.hpp"

namespace ktb {

/// True when a constituent may not head its phrase (unless nothing else can):
/// AUXP and IP phrases, PRN-tagged constituents, and constituents made only
/// of grammatical affixes or only of punctuation.
bool is_excluded_head(const ConstituentNode& child, const TagsetRegistry& registry);

/// Head-final choice: the rightmost child that is not excluded, or the
/// rightmost child when every child is excluded.
std::size_t head_child_index(const Phrase& phrase, const TagsetRegistry& registry);

/// Where a dependent attaches: the phrase whose head it modifies, the child
/// it came from, and the head child.
struct LabelContext {
  const ConstituentNode* source = nullptr;
  std::span<const ConstituentNode> siblings;
  std::size_t source_index = 0;
  std::size_t head_index = 0;
  // Case label donated by stranded affix tokens attached to the dependent.
  std::optional<DependencyLabel> donated_case;
};

/// First matching rule of the label cascade; always yields a label.
DependencyLabel assign_label(const DepToken& dependent, const LabelContext& context,
                             const DepToken& head, const TagsetRegistry& registry);

/// Converts a Penn-style tree. Tokens are the terminals in order. Throws
/// std::invalid_argument for a phrase without children.
DependencyTree to_dependency(const ConstituentNode& tree, const TagsetRegistry& registry);

}  // namespace ktb
