#include "ktb/transform.hpp"

#include <utility>

namespace ktb {

namespace {

bool is_bracket(const Morpheme& m) { return m.form() == "(" || m.form() == ")"; }

bool is_punct_like(const Morpheme& m, const TagsetRegistry& registry) {
  return is_bracket(m) || registry.is_punct(m.tag());
}

bool is_punct_kind(SegmentKind k) { return k != SegmentKind::base && k != SegmentKind::affix_run; }

// Cuts a fused surface into per-segment slices using the literal forms of
// the punctuation segments as anchors. Returns false when the anchors cannot
// be placed.
bool align_surface(const std::string& surface, std::vector<Segment>& segments) {
  std::size_t cursor = 0;
  Segment* pending = nullptr;
  for (auto& seg : segments) {
    if (!is_punct_kind(seg.kind)) {
      pending = &seg;
      continue;
    }
    const auto& form = seg.morphemes.front().form();
    const auto pos = surface.find(form, cursor + (pending ? 1 : 0));
    if (pos == std::string::npos || (!pending && pos != cursor)) return false;
    if (pending) pending->surface = surface.substr(cursor, pos - cursor);
    pending = nullptr;
    cursor = pos + form.size();
  }
  if (pending) {
    if (cursor >= surface.size()) return false;
    pending->surface = surface.substr(cursor);
  } else if (cursor != surface.size()) {
    return false;
  }
  return true;
}

class PennBuilder {
 public:
  PennBuilder(const TagsetRegistry& registry, std::vector<Diagnostic>* diagnostics)
      : registry_(registry), diagnostics_(diagnostics) {}

  struct Built {
    Phrase phrase;
    std::size_t raisable = 0;  // trailing children that are eojeol-final punctuation
  };

  Built build(const Phrase& in) {
    Built out;
    out.phrase.label = in.label;
    out.phrase.ftags = in.ftags;
    auto& children = out.phrase.children;

    for (std::size_t i = 0; i < in.children.size(); ++i) {
      const bool last = i + 1 == in.children.size();
      const auto& child = in.children[i];
      if (child.is_terminal()) {
        const auto raisable = expand_terminal(child.terminal(), children);
        out.raisable = last ? raisable : 0;
        continue;
      }
      auto built = build(child.phrase());
      auto& grand = built.phrase.children;
      std::vector<ConstituentNode> hoisted;
      if (last && in.affixes.empty() && built.raisable > 0 && grand.size() > built.raisable) {
        hoisted.assign(std::make_move_iterator(grand.end() - built.raisable),
                       std::make_move_iterator(grand.end()));
        grand.erase(grand.end() - built.raisable, grand.end());
      }
      children.emplace_back(std::move(built.phrase));
      out.raisable = hoisted.size();
      for (auto& h : hoisted) children.push_back(std::move(h));
    }

    if (!in.affixes.empty()) {
      Terminal* target = out.raisable == 0 ? rightmost_terminal(out.phrase) : nullptr;
      if (target && !contains_punct(target->eojeol)) {
        target->eojeol = target->eojeol.with_appended(in.affixes);
        collapse_unary(out.phrase);
      } else {
        children.emplace_back(Terminal{Eojeol(in.affixes)});
      }
      out.raisable = 0;
    }
    return out;
  }

 private:
  // (NP+x (NP y)) lowers to (NP y+x) rather than (NP (NP y+x)).
  static void collapse_unary(Phrase& p) {
    if (p.children.size() != 1 || !p.children[0].is_phrase()) return;
    auto& inner = p.children[0].phrase();
    if (inner.label != p.label || inner.ftags != p.ftags || !inner.affixes.empty()) return;
    auto grand = std::move(inner.children);
    p.children = std::move(grand);
  }

  // Appends the tokens of one terminal; returns how many trailing tokens are
  // punctuation that follows real content from the same eojeol.
  std::size_t expand_terminal(const Terminal& t, std::vector<ConstituentNode>& out) {
    auto segments = segment_eojeol(t.eojeol, registry_);
    if (t.eojeol.has_explicit_surface() && segments.size() > 1) {
      bool aligned = false;
      for (const auto& s : segments) aligned = aligned || s.surface.has_value();
      if (!aligned) {
        warn("surface-alignment", "cannot split surface '" + t.eojeol.surface() +
                                      "' at punctuation; using morpheme forms");
      }
    }
    auto grouped = group_parentheticals(std::move(segments));
    for (auto& d : grouped.diagnostics) warn(std::move(d));

    std::size_t trailing = 0;
    bool content = false;
    for (auto& item : grouped.items) {
      const auto* seg = std::get_if<Segment>(&item);
      if (seg && is_punct_kind(seg->kind)) {
        ++trailing;
      } else {
        content = true;
        trailing = 0;
      }
      out.push_back(to_node(std::move(item)));
    }
    return content ? trailing : 0;
  }

  ConstituentNode to_node(GroupItem item) {
    if (auto* seg = std::get_if<Segment>(&item)) return Terminal{seg->to_eojeol()};
    auto& group = std::get<PrnGroup>(item);
    Phrase p;
    p.label = registry_.prn_label();
    p.add_ftag(FunctionTag::PRN);
    for (auto& inner : group.items) p.children.push_back(to_node(std::move(inner)));
    return p;
  }

  static Terminal* rightmost_terminal(Phrase& p) {
    if (p.children.empty()) return nullptr;
    auto& last = p.children.back();
    if (last.is_terminal()) return &last.terminal();
    return rightmost_terminal(last.phrase());
  }

  bool contains_punct(const Eojeol& e) const {
    for (const auto& m : e.morphemes())
      if (is_punct_like(m, registry_)) return true;
    return false;
  }

  void warn(std::string code, std::string message) {
    warn(make_warning(std::move(code), std::move(message)));
  }
  void warn(Diagnostic d) {
    if (diagnostics_) diagnostics_->push_back(std::move(d));
  }

  const TagsetRegistry& registry_;
  std::vector<Diagnostic>* diagnostics_;
};

}  // namespace

std::string_view to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::base: return "base";
    case SegmentKind::punct: return "punct";
    case SegmentKind::paren_open: return "paren_open";
    case SegmentKind::paren_close: return "paren_close";
    case SegmentKind::affix_run: return "affix_run";
  }
  return "?";
}

bool operator==(const PrnGroup& a, const PrnGroup& b) { return a.items == b.items; }

std::vector<Segment> segment_eojeol(const Eojeol& e, const TagsetRegistry& registry) {
  std::vector<Segment> out;
  bool after_punct = false;
  bool in_run = false;
  for (const auto& m : e.morphemes()) {
    if (is_punct_like(m, registry)) {
      SegmentKind kind = SegmentKind::punct;
      if (m.form() == "(") kind = SegmentKind::paren_open;
      else if (m.form() == ")") kind = SegmentKind::paren_close;
      out.push_back({kind, {m}, std::nullopt});
      after_punct = true;
      in_run = false;
      continue;
    }
    if (!in_run) {
      out.push_back({after_punct ? SegmentKind::affix_run : SegmentKind::base, {}, std::nullopt});
      in_run = true;
    }
    auto& run = out.back();
    run.morphemes.push_back(m);
    if (run.kind == SegmentKind::affix_run && !registry.is_grammatical_affix(m.tag()))
      run.kind = SegmentKind::base;
  }

  if (e.has_explicit_surface()) {
    if (out.size() == 1) {
      out.front().surface = e.explicit_surface();
    } else if (!align_surface(*e.explicit_surface(), out)) {
      for (auto& s : out) s.surface.reset();
    }
  }
  return out;
}

GroupedSegments group_parentheticals(std::vector<Segment> segments) {
  GroupedSegments result;
  std::vector<std::vector<GroupItem>> stack(1);
  for (auto& seg : segments) {
    if (seg.kind == SegmentKind::paren_open) {
      stack.emplace_back();
      stack.back().emplace_back(std::move(seg));
    } else if (seg.kind == SegmentKind::paren_close) {
      if (stack.size() > 1) {
        auto items = std::move(stack.back());
        stack.pop_back();
        items.emplace_back(std::move(seg));
        stack.back().emplace_back(PrnGroup{std::move(items)});
      } else {
        result.diagnostics.push_back(
            make_warning("unbalanced-paren", "')' without a matching '('; kept as punctuation"));
        seg.kind = SegmentKind::punct;
        stack.back().emplace_back(std::move(seg));
      }
    } else {
      stack.back().emplace_back(std::move(seg));
    }
  }
  while (stack.size() > 1) {
    auto items = std::move(stack.back());
    stack.pop_back();
    result.diagnostics.push_back(
        make_warning("unbalanced-paren", "'(' without a matching ')'; kept as punctuation"));
    std::get<Segment>(items.front()).kind = SegmentKind::punct;
    for (auto& item : items) stack.back().push_back(std::move(item));
  }
  result.items = std::move(stack.front());
  return result;
}

namespace {

void flatten(std::vector<GroupItem>& items, std::vector<Segment>& out) {
  for (auto& item : items) {
    if (auto* seg = std::get_if<Segment>(&item)) out.push_back(std::move(*seg));
    else flatten(std::get<PrnGroup>(item).items, out);
  }
}

}  // namespace

std::vector<Segment> eojeol_tokens(const Eojeol& e, const TagsetRegistry& registry) {
  auto grouped = group_parentheticals(segment_eojeol(e, registry));
  std::vector<Segment> out;
  flatten(grouped.items, out);
  return out;
}

ConstituentNode to_penn(const ConstituentNode& tree, const TagsetRegistry& registry,
                        std::vector<Diagnostic>* diagnostics) {
  PennBuilder builder(registry, diagnostics);
  if (tree.is_phrase()) return builder.build(tree.phrase()).phrase;
  Phrase wrapper;
  wrapper.children.push_back(tree);
  auto built = builder.build(wrapper).phrase;
  if (built.children.size() == 1) return std::move(built.children.front());
  return built;
}

}  // namespace ktb
