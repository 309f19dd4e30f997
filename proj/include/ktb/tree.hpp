#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ktb/model.hpp"

namespace ktb {

class ConstituentNode;

struct Terminal {
  Eojeol eojeol;

  friend bool operator==(const Terminal&, const Terminal&) = default;
};

// KAIST-flavor phrases may carry agglutinated affixes (morphemes attached to
// the phrase rather than to any child). Penn-flavor phrases never do.
struct Phrase {
  PhraseType label = PhraseType::S;
  std::vector<FunctionTag> ftags;  // sorted, unique
  std::vector<Morpheme> affixes;
  std::vector<ConstituentNode> children;

  bool has_ftag(FunctionTag f) const;
  void add_ftag(FunctionTag f);
};

bool operator==(const Phrase& a, const Phrase& b);

class ConstituentNode {
 public:
  ConstituentNode(Phrase p) : node_(std::move(p)) {}
  ConstituentNode(Terminal t) : node_(std::move(t)) {}

  bool is_phrase() const { return std::holds_alternative<Phrase>(node_); }
  bool is_terminal() const { return std::holds_alternative<Terminal>(node_); }

  const Phrase& phrase() const { return std::get<Phrase>(node_); }
  Phrase& phrase() { return std::get<Phrase>(node_); }
  const Terminal& terminal() const { return std::get<Terminal>(node_); }
  Terminal& terminal() { return std::get<Terminal>(node_); }

  friend bool operator==(const ConstituentNode& a, const ConstituentNode& b) {
    return a.node_ == b.node_;
  }

 private:
  std::variant<Phrase, Terminal> node_;
};

/// Terminals in left-to-right order.
std::vector<const Terminal*> terminals(const ConstituentNode& node);
std::size_t terminal_count(const ConstituentNode& node);

/// Every morpheme in surface order: a phrase yields its children, then its
/// own affixes.
std::vector<Morpheme> morpheme_yield(const ConstituentNode& node);

bool has_phrase_affixes(const ConstituentNode& node);

struct DepToken {
  std::size_t index = 0;  // 1-based
  Eojeol eojeol;
  std::size_t head = 0;  // 0 = artificial root
  std::string label;

  friend bool operator==(const DepToken&, const DepToken&) = default;
};

struct DependencyTree {
  std::vector<DepToken> tokens;

  std::size_t size() const { return tokens.size(); }
  friend bool operator==(const DependencyTree&, const DependencyTree&) = default;
};

}  // namespace ktb
