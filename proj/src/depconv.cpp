#include "ktb/depconv.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ktb {

namespace {

bool all_of_morphemes(const ConstituentNode& node, auto pred) {
  const auto ms = morpheme_yield(node);
  return !ms.empty() && std::all_of(ms.begin(), ms.end(), pred);
}

const Terminal& lexical_head(const ConstituentNode& node, const TagsetRegistry& registry) {
  if (node.is_terminal()) return node.terminal();
  const auto& p = node.phrase();
  return lexical_head(p.children[head_child_index(p, registry)], registry);
}

bool starts_with_any(std::string_view s, const std::vector<std::string>& prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](const std::string& p) { return !p.empty() && s.starts_with(p); });
}

// The morpheme that decides what category a head token belongs to: the last
// one that is neither punctuation nor a particle/ending.
const Morpheme& stem_of(const Eojeol& e, const TagsetRegistry& registry) {
  const auto& ms = e.morphemes();
  for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(it->tag().id[0])));
    if (c == 'j' || c == 'e' || registry.is_punct(it->tag())) continue;
    return *it;
  }
  return ms.front();
}

std::optional<DependencyLabel> own_case(const Eojeol& e, const TagsetRegistry& registry) {
  const auto& ms = e.morphemes();
  for (auto it = ms.rbegin(); it != ms.rend(); ++it)
    if (auto l = registry.case_label(it->tag())) return l;
  return std::nullopt;
}

class Converter {
 public:
  explicit Converter(const TagsetRegistry& registry) : registry_(registry) {}

  DependencyTree run(const ConstituentNode& root) {
    collect(root);
    donated_.assign(tree_.tokens.size() + 1, std::nullopt);
    const auto head = visit(root);
    auto& tok = tree_.tokens[head - 1];
    tok.head = 0;
    tok.label = std::string(to_string(DependencyLabel::root));
    return std::move(tree_);
  }

 private:
  void collect(const ConstituentNode& node) {
    if (node.is_terminal()) {
      const auto index = tree_.tokens.size() + 1;
      tree_.tokens.push_back(DepToken{index, node.terminal().eojeol, 0, ""});
      return;
    }
    if (node.phrase().children.empty()) throw std::invalid_argument("phrase without children");
    for (const auto& c : node.phrase().children) collect(c);
  }

  // Returns the lexical head token index of `node`.
  std::size_t visit(const ConstituentNode& node) {
    if (node.is_terminal()) return next_++;
    const auto& p = node.phrase();
    std::vector<std::size_t> heads;
    heads.reserve(p.children.size());
    for (const auto& c : p.children) heads.push_back(visit(c));
    const auto h = head_child_index(p, registry_);
    for (std::size_t i = 0; i < p.children.size(); ++i) {
      if (i == h) continue;
      LabelContext ctx{&p.children[i], p.children, i, h, donated_[heads[i]]};
      attach(heads[i], heads[h], ctx);
    }
    return heads[h];
  }

  void attach(std::size_t dep, std::size_t head, const LabelContext& ctx) {
    auto& tok = tree_.tokens[dep - 1];
    tok.head = head;
    const auto label = assign_label(tok, ctx, tree_.tokens[head - 1], registry_);
    tok.label = std::string(to_string(label));
    if (label == DependencyLabel::ejx) {
      if (auto c = own_case(tok.eojeol, registry_)) donated_[head] = c;
    }
  }

  const TagsetRegistry& registry_;
  DependencyTree tree_;
  std::vector<std::optional<DependencyLabel>> donated_;
  std::size_t next_ = 1;
};

}  // namespace

bool is_excluded_head(const ConstituentNode& child, const TagsetRegistry& registry) {
  if (child.is_phrase()) {
    const auto& p = child.phrase();
    if (p.label == PhraseType::AUXP || p.label == PhraseType::IP) return true;
    if (p.has_ftag(FunctionTag::PRN)) return true;
  }
  if (all_of_morphemes(child, [&](const Morpheme& m) { return registry.is_grammatical_affix(m.tag()); }))
    return true;
  return all_of_morphemes(child, [&](const Morpheme& m) { return registry.is_punct(m.tag()); });
}

std::size_t head_child_index(const Phrase& phrase, const TagsetRegistry& registry) {
  if (phrase.children.empty()) throw std::invalid_argument("phrase without children");
  for (std::size_t i = phrase.children.size(); i-- > 0;)
    if (!is_excluded_head(phrase.children[i], registry)) return i;
  return phrase.children.size() - 1;
}

DependencyLabel assign_label(const DepToken& dependent, const LabelContext& ctx,
                             const DepToken& head, const TagsetRegistry& registry) {
  const auto& rules = registry.rules();
  const auto& ms = dependent.eojeol.morphemes();
  const auto& first = ms.front().tag().id;
  const auto& last = ms.back().tag().id;
  const Phrase* source = ctx.source && ctx.source->is_phrase() ? &ctx.source->phrase() : nullptr;

  if (std::all_of(ms.begin(), ms.end(), [&](const Morpheme& m) { return registry.is_punct(m.tag()); }))
    return DependencyLabel::p;
  if (source && source->has_ftag(FunctionTag::PRN)) return DependencyLabel::prn;
  if (source && source->label == PhraseType::AUXP) return DependencyLabel::aux;
  if ((source && source->label == PhraseType::IP) || rules.intj_tags.contains(first))
    return DependencyLabel::intj;
  if (std::all_of(ms.begin(), ms.end(),
                  [&](const Morpheme& m) { return registry.is_grammatical_affix(m.tag()); }))
    return DependencyLabel::ejx;

  if (auto c = own_case(dependent.eojeol, registry)) return *c;
  if (ctx.donated_case) return *ctx.donated_case;

  // Coordination: the rightmost conjunct heads; earlier conjuncts are conj and
  // a conjunctive adverb sitting between conjuncts is cc.
  if (rules.conj_tags.contains(last)) return DependencyLabel::conj;
  if (ctx.source_index < ctx.head_index && !ctx.siblings.empty()) {
    auto is_conjunction = [&](std::size_t i) {
      const auto& t = lexical_head(ctx.siblings[i], registry).eojeol;
      return rules.cc_tags.contains(t.morphemes().front().tag().id);
    };
    if (rules.cc_tags.contains(first)) {
      for (std::size_t i = 0; i < ctx.source_index; ++i)
        if (!is_excluded_head(ctx.siblings[i], registry)) return DependencyLabel::cc;
    }
    for (std::size_t i = ctx.source_index + 1; i < ctx.head_index; ++i)
      if (is_conjunction(i)) return DependencyLabel::conj;
  }

  if (rules.adn_tags.contains(last) || starts_with_any(first, rules.adn_prefixes))
    return DependencyLabel::adn;
  if (rules.adv_tags.contains(last)) return DependencyLabel::adv;
  if (rules.sub_tags.contains(last)) return DependencyLabel::sub;

  const auto& stem = stem_of(head.eojeol, registry);
  if (rules.amod_head_tags.contains(stem.tag().id)) return DependencyLabel::amod;
  const auto coarse = registry.coarse_tag(stem.tag());
  if (rules.nmod_head_coarse.contains(coarse)) return DependencyLabel::nmod;
  if (rules.vmod_head_coarse.contains(coarse) || rules.vmod_head_tags.contains(stem.tag().id))
    return DependencyLabel::vmod;
  return DependencyLabel::dep;
}

DependencyTree to_dependency(const ConstituentNode& tree, const TagsetRegistry& registry) {
  return Converter(registry).run(tree);
}

}  // namespace ktb
