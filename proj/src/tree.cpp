#include "ktb/tree.hpp"

#include <algorithm>

namespace ktb {

bool Phrase::has_ftag(FunctionTag f) const {
  return std::find(ftags.begin(), ftags.end(), f) != ftags.end();
}

void Phrase::add_ftag(FunctionTag f) {
  if (!has_ftag(f)) {
    ftags.push_back(f);
    std::sort(ftags.begin(), ftags.end());
  }
}

bool operator==(const Phrase& a, const Phrase& b) {
  return a.label == b.label && a.ftags == b.ftags && a.affixes == b.affixes &&
         a.children == b.children;
}

namespace {

void collect_terminals(const ConstituentNode& node, std::vector<const Terminal*>& out) {
  if (node.is_terminal()) {
    out.push_back(&node.terminal());
    return;
  }
  for (const auto& c : node.phrase().children) collect_terminals(c, out);
}

void collect_morphemes(const ConstituentNode& node, std::vector<Morpheme>& out) {
  if (node.is_terminal()) {
    const auto& ms = node.terminal().eojeol.morphemes();
    out.insert(out.end(), ms.begin(), ms.end());
    return;
  }
  const auto& p = node.phrase();
  for (const auto& c : p.children) collect_morphemes(c, out);
  out.insert(out.end(), p.affixes.begin(), p.affixes.end());
}

}  // namespace

std::vector<const Terminal*> terminals(const ConstituentNode& node) {
  std::vector<const Terminal*> out;
  collect_terminals(node, out);
  return out;
}

std::size_t terminal_count(const ConstituentNode& node) {
  if (node.is_terminal()) return 1;
  std::size_t n = 0;
  for (const auto& c : node.phrase().children) n += terminal_count(c);
  return n;
}

std::vector<Morpheme> morpheme_yield(const ConstituentNode& node) {
  std::vector<Morpheme> out;
  collect_morphemes(node, out);
  return out;
}

bool has_phrase_affixes(const ConstituentNode& node) {
  if (node.is_terminal()) return false;
  const auto& p = node.phrase();
  if (!p.affixes.empty()) return true;
  return std::any_of(p.children.begin(), p.children.end(),
                     [](const ConstituentNode& c) { return has_phrase_affixes(c); });
}

}  // namespace ktb
