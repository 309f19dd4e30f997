#include "oracle.hpp"

#include <string>

namespace ktb::oracle {

namespace {

void leaves(const ConstituentNode& node, std::vector<std::string>& tags) {
  if (node.is_terminal()) {
    for (const auto& m : node.terminal().eojeol.morphemes()) tags.push_back(m.tag().id);
    return;
  }
  for (const auto& c : node.phrase().children) leaves(c, tags);
  for (const auto& m : node.phrase().affixes) tags.push_back(m.tag().id);
}

struct Walk {
  std::vector<std::size_t> head;
  std::size_t next = 1;

  std::size_t visit(const ConstituentNode& node) {
    if (node.is_terminal()) {
      head.push_back(0);
      return next++;
    }
    const auto& p = node.phrase();
    std::vector<std::size_t> lexical;
    for (const auto& c : p.children) lexical.push_back(visit(c));
    const auto h = head_child(p);
    for (std::size_t i = 0; i < lexical.size(); ++i)
      if (i != h) head[lexical[i] - 1] = lexical[h];
    return lexical[h];
  }
};

}  // namespace

bool is_punct_tag(const std::string& t) { return t.size() == 2 && t[0] == 's'; }

bool is_affix_tag(const std::string& t) { return t[0] == 'j' || t[0] == 'e' || t[0] == 'x'; }

bool excluded(const ConstituentNode& node) {
  if (node.is_phrase()) {
    const auto& p = node.phrase();
    if (p.label == PhraseType::AUXP || p.label == PhraseType::IP) return true;
    for (auto f : p.ftags)
      if (f == FunctionTag::PRN) return true;
  }
  std::vector<std::string> tags;
  leaves(node, tags);
  if (tags.empty()) return false;
  bool affix = true, punct = true;
  for (const auto& t : tags) {
    affix = affix && is_affix_tag(t);
    punct = punct && is_punct_tag(t);
  }
  return affix || punct;
}

std::size_t head_child(const Phrase& phrase) {
  const auto n = phrase.children.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded(phrase.children[i])) continue;
    bool rest_excluded = true;
    for (std::size_t j = i + 1; j < n; ++j) rest_excluded = rest_excluded && excluded(phrase.children[j]);
    if (rest_excluded) return i;
  }
  return n - 1;
}

std::vector<std::size_t> heads(const ConstituentNode& tree) {
  Walk w;
  w.visit(tree);
  return w.head;
}

}  // namespace ktb::oracle
