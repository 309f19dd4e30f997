#include "ktb/audit.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <iomanip>
#include <map>
#include <sstream>

#include "ktb/transform.hpp"

namespace ktb {

// ---------------------------------------------------------------------------

std::vector<Diagnostic> validate_dependency(const DependencyTree& tree, SourceLocation where) {
  std::vector<Diagnostic> out;
  const auto& toks = tree.tokens;
  const std::size_t n = toks.size();
  if (n == 0) {
    out.push_back(make_error("empty-sentence", "sentence has no tokens", where));
    return out;
  }

  bool heads_ok = true;
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = toks[i];
    const std::string who = "token " + std::to_string(i + 1);
    if (t.index != i + 1) {
      out.push_back(make_error("bad-index", who + " has index " + std::to_string(t.index), where));
    }
    if (t.head > n) {
      out.push_back(make_error("head-out-of-range", who + " has head " + std::to_string(t.head), where));
      heads_ok = false;
    } else if (t.head == i + 1) {
      out.push_back(make_error("self-loop", who + " is its own head", where));
      heads_ok = false;
    }
    if (!parse_dependency_label(t.label)) {
      out.push_back(make_error("unknown-label", who + " has label '" + t.label + "'", where));
    }
    if (t.head == 0) {
      ++roots;
      if (t.label != to_string(DependencyLabel::root))
        out.push_back(make_error("root-label", who + " attaches to the root as '" + t.label + "'", where));
    } else if (t.label == to_string(DependencyLabel::root)) {
      out.push_back(make_error("root-label", who + " is labeled root but has head " +
                                                 std::to_string(t.head), where));
    }
  }
  if (roots == 0) out.push_back(make_error("no-root", "no token attaches to the root", where));
  if (roots > 1)
    out.push_back(make_error("multiple-roots", std::to_string(roots) + " tokens attach to the root", where));
  if (!heads_ok) return out;

  // 0 = unvisited, 1 = on current path, 2 = done
  std::vector<int> state(n + 1, 0);
  state[0] = 2;
  for (std::size_t start = 1; start <= n; ++start) {
    std::vector<std::size_t> path;
    std::size_t v = start;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = toks[v - 1].head;
    }
    if (state[v] == 1) {
      std::string members;
      std::size_t u = v;
      do {
        if (!members.empty()) members += ' ';
        members += std::to_string(u);
        u = toks[u - 1].head;
      } while (u != v);
      out.push_back(make_error("cycle", "cycle through tokens " + members, where));
    }
    for (auto p : path) state[p] = 2;
  }

  struct Arc {
    std::size_t lo, hi;
  };
  std::vector<Arc> arcs;
  arcs.reserve(n);
  for (const auto& t : toks) arcs.push_back({std::min(t.index, t.head), std::max(t.index, t.head)});
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (std::size_t b = 0; b < arcs.size(); ++b) {
      if (arcs[a].lo < arcs[b].lo && arcs[b].lo < arcs[a].hi && arcs[a].hi < arcs[b].hi) {
        out.push_back(make_warning(
            "non-projective",
            "arcs " + std::to_string(arcs[a].lo) + "-" + std::to_string(arcs[a].hi) + " and " +
                std::to_string(arcs[b].lo) + "-" + std::to_string(arcs[b].hi) + " cross",
            where));
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

StatsEntry& StatsEntry::operator+=(const StatsEntry& other) {
  trees += other.trees;
  tokens += other.tokens;
  dropped += other.dropped;
  return *this;
}

StatsEntry StatsReport::total() const {
  StatsEntry t{"total"};
  for (const auto& e : entries) t += e;
  return t;
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "dev") return Split::dev;
  if (s == "test") return Split::test;
  return std::nullopt;
}

std::array<std::size_t, 3> SplitPlan::counts() const {
  std::array<std::size_t, 3> c{};
  for (auto s : assignment) ++c[static_cast<std::size_t>(s)];
  return c;
}

std::size_t token_count(const ConstituentNode& tree, const TagsetRegistry& registry) {
  return terminal_count(to_penn(tree, registry));
}

namespace {

// Calls `fn(ordinal, tokens)` for each valid record and `drop(ordinal)` for
// each malformed one.
template <typename Fn, typename Drop>
void for_each_record(std::istream& in, FileFormat format, const TagsetRegistry& registry,
                     Tagset tagset, std::vector<Diagnostic>* diagnostics, Fn fn, Drop drop) {
  auto report = [&](std::vector<Diagnostic>& ds) {
    if (!diagnostics) return;
    for (auto& d : ds) diagnostics->push_back(std::move(d));
  };
  if (format == FileFormat::brackets) {
    TreebankReader reader(in, registry, tagset);
    while (auto rec = reader.next()) {
      report(rec->diagnostics);
      if (rec->tree) fn(rec->ordinal, token_count(*rec->tree, registry));
      else drop(rec->ordinal);
    }
  } else {
    ConllReader reader(in, registry, tagset);
    while (auto rec = reader.next()) {
      report(rec->diagnostics);
      if (rec->tree) fn(rec->ordinal, rec->tree->size());
      else drop(rec->ordinal);
    }
  }
}

std::string format_rate(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

StatsReport corpus_stats(std::span<const CorpusInput> inputs, const TagsetRegistry& registry,
                         Tagset tagset, const SplitPlan* plan,
                         std::vector<Diagnostic>* diagnostics) {
  StatsReport report;
  if (plan) {
    if (inputs.size() != 1) throw std::invalid_argument("a split plan needs exactly one input");
    for (auto s : {Split::train, Split::dev, Split::test})
      report.entries.push_back({inputs[0].name + ":" + std::string(to_string(s))});
  }
  for (const auto& input : inputs) {
    if (!plan) report.entries.push_back({input.name});
    auto entry_for = [&](std::size_t ordinal) -> StatsEntry& {
      if (!plan) return report.entries.back();
      if (ordinal == 0 || ordinal > plan->size())
        throw ManifestError("record " + std::to_string(ordinal) + " is not covered by the split plan");
      return report.entries[static_cast<std::size_t>(plan->assignment[ordinal - 1])];
    };
    for_each_record(
        *input.stream, input.format, registry, tagset, diagnostics,
        [&](std::size_t ordinal, std::size_t tokens) {
          auto& e = entry_for(ordinal);
          ++e.trees;
          e.tokens += tokens;
        },
        [&](std::size_t ordinal) { ++entry_for(ordinal).dropped; });
  }
  return report;
}

std::string format_stats_text(const StatsReport& report) {
  std::ostringstream os;
  auto line = [&](const StatsEntry& e) {
    os << std::left << std::setw(24) << e.name << " trees " << std::right << std::setw(8) << e.trees
       << "  tokens " << std::setw(9) << e.tokens;
    if (e.dropped) os << "  dropped " << e.dropped;
    os << '\n';
  };
  for (const auto& e : report.entries) line(e);
  if (report.entries.size() != 1) line(report.total());
  return os.str();
}

std::string format_stats_tsv(const StatsReport& report) {
  std::ostringstream os;
  os << "name\ttrees\ttokens\tdropped\n";
  auto line = [&](const StatsEntry& e) {
    os << e.name << '\t' << e.trees << '\t' << e.tokens << '\t' << e.dropped << '\n';
  };
  for (const auto& e : report.entries) line(e);
  line(report.total());
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<ManifestEntry> parse_manifest(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> parts;
    for (std::string w; words >> w;)
      if (w != "->" && w != "→") parts.push_back(w);
    if (parts.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": " + what);
    };
    if (parts.size() != 2) fail("expected '<range> <split>'");
    auto number = [&](std::string_view s) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size() || v == 0)
        fail("bad ordinal '" + std::string(s) + "'");
      return v;
    };
    ManifestEntry e;
    const std::string_view range = parts[0];
    if (auto dash = range.find('-'); dash != std::string_view::npos) {
      e.first = number(range.substr(0, dash));
      e.last = number(range.substr(dash + 1));
    } else {
      e.first = e.last = number(range);
    }
    if (e.last < e.first) fail("empty range '" + parts[0] + "'");
    auto split = parse_split(parts[1]);
    if (!split) fail("unknown split '" + parts[1] + "'");
    e.split = *split;
    out.push_back(e);
  }
  return out;
}

SplitPlan split_by_ratios(std::size_t n, std::array<double, 3> ratios) {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0)) throw std::invalid_argument("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw std::invalid_argument("split ratios must sum to 1");
  const auto train = std::min<std::size_t>(n, std::llround(static_cast<double>(n) * ratios[0]));
  const auto dev = std::min<std::size_t>(n - train, std::llround(static_cast<double>(n) * ratios[1]));
  SplitPlan plan;
  plan.assignment.reserve(n);
  plan.assignment.insert(plan.assignment.end(), train, Split::train);
  plan.assignment.insert(plan.assignment.end(), dev, Split::dev);
  plan.assignment.insert(plan.assignment.end(), n - train - dev, Split::test);
  return plan;
}

SplitPlan split_by_manifest(std::size_t n, std::span<const ManifestEntry> manifest) {
  std::vector<std::optional<Split>> seen(n);
  for (const auto& e : manifest) {
    if (e.first == 0 || e.last > n)
      throw ManifestError("range " + std::to_string(e.first) + "-" + std::to_string(e.last) +
                          " exceeds the " + std::to_string(n) + " records in the corpus");
    for (std::size_t i = e.first; i <= e.last; ++i) {
      if (seen[i - 1]) throw ManifestError("record " + std::to_string(i) + " is assigned twice");
      seen[i - 1] = e.split;
    }
  }
  SplitPlan plan;
  plan.assignment.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw ManifestError("record " + std::to_string(i + 1) + " is not assigned to a split");
    plan.assignment.push_back(*seen[i]);
  }
  return plan;
}

std::size_t count_records(std::istream& in, FileFormat format, const TagsetRegistry& registry,
                          Tagset tagset) {
  std::size_t n = 0;
  for_each_record(in, format, registry, tagset, nullptr,
                  [&](std::size_t, std::size_t) { ++n; }, [&](std::size_t) { ++n; });
  return n;
}

std::array<std::size_t, 3> split_corpus(std::istream& in, FileFormat format,
                                        const TagsetRegistry& registry, Tagset tagset,
                                        const SplitPlan& plan, std::array<std::ostream*, 3> outs,
                                        std::vector<Diagnostic>& diagnostics) {
  std::array<std::size_t, 3> written{};
  auto target = [&](std::size_t ordinal) {
    if (ordinal == 0 || ordinal > plan.size())
      throw ManifestError("record " + std::to_string(ordinal) + " is not covered by the split plan");
    return static_cast<std::size_t>(plan.assignment[ordinal - 1]);
  };
  auto take = [&](std::vector<Diagnostic>& ds) {
    for (auto& d : ds) diagnostics.push_back(std::move(d));
  };
  if (format == FileFormat::brackets) {
    TreebankReader reader(in, registry, tagset);
    while (auto rec = reader.next()) {
      take(rec->diagnostics);
      const auto s = target(rec->ordinal);
      if (!rec->tree) continue;
      *outs[s] << serialize_tree(*rec->tree) << "\n\n";
      ++written[s];
    }
  } else {
    ConllReader reader(in, registry, tagset);
    while (auto rec = reader.next()) {
      take(rec->diagnostics);
      const auto s = target(rec->ordinal);
      if (!rec->tree) continue;
      *outs[s] << write_conll(*rec->tree, registry);
      ++written[s];
    }
  }
  return written;
}

// ---------------------------------------------------------------------------

namespace {

// Assigns automatic analyses to token eojeols; returns the replacement
// token eojeols, or nullopt when the sentence cannot be aligned.
std::optional<std::vector<Eojeol>> align_and_substitute(std::span<const Eojeol* const> tokens,
                                                        std::span<const Eojeol> analyses,
                                                        const TagsetRegistry& registry,
                                                        SourceLocation where,
                                                        std::vector<Diagnostic>& diags) {
  std::vector<Eojeol> out;
  out.reserve(tokens.size());
  for (const auto* t : tokens) out.push_back(*t);

  const std::size_t n = tokens.size();
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < analyses.size(); ++k) {
    const auto& analysis = analyses[k];
    const auto pieces = eojeol_tokens(analysis, registry);
    const std::string target = analysis.surface();
    const std::string who = "eojeol " + std::to_string(k + 1) + " '" + target + "'";

    std::size_t end = cursor;
    std::string acc;
    while (end < n && acc.size() < target.size()) {
      const auto next = acc + tokens[end]->surface();
      if (!target.starts_with(next)) break;
      acc = next;
      ++end;
    }
    if (acc != target || end == cursor) {
      diags.push_back(make_warning("surface-mismatch",
                                   who + " does not match the sentence surface; aligning by position",
                                   where));
      end = cursor + pieces.size();
    }
    if (end > n) {
      diags.push_back(make_error("length-mismatch",
                                 "analyses run past the end of the sentence at " + who, where));
      return std::nullopt;
    }
    if (end - cursor == pieces.size()) {
      for (std::size_t i = 0; i < pieces.size(); ++i)
        out[cursor + i] = Eojeol(pieces[i].morphemes, tokens[cursor + i]->surface());
    } else {
      diags.push_back(make_warning("count-mismatch",
                                   who + " splits into " + std::to_string(pieces.size()) +
                                       " tokens but covers " + std::to_string(end - cursor) +
                                       "; keeping gold morphology",
                                   where));
    }
    cursor = end;
  }
  if (cursor != n) {
    diags.push_back(make_error("length-mismatch",
                               std::to_string(analyses.size()) + " analyses cover " +
                                   std::to_string(cursor) + " of " + std::to_string(n) + " tokens",
                               where));
    return std::nullopt;
  }
  return out;
}

void collect_terminals(ConstituentNode& node, std::vector<Terminal*>& out) {
  if (node.is_terminal()) {
    out.push_back(&node.terminal());
    return;
  }
  for (auto& c : node.phrase().children) collect_terminals(c, out);
}

}  // namespace

Substituted<DependencyTree> substitute_morphology(const DependencyTree& sentence,
                                                  std::span<const Eojeol> analyses,
                                                  const TagsetRegistry& registry,
                                                  SourceLocation where) {
  Substituted<DependencyTree> result{sentence, {}, false};
  std::vector<const Eojeol*> tokens;
  for (const auto& t : sentence.tokens) tokens.push_back(&t.eojeol);
  auto replaced = align_and_substitute(tokens, analyses, registry, where, result.diagnostics);
  if (!replaced) return result;
  for (std::size_t i = 0; i < replaced->size(); ++i)
    result.value.tokens[i].eojeol = std::move((*replaced)[i]);
  result.substituted = true;
  return result;
}

Substituted<ConstituentNode> substitute_morphology(const ConstituentNode& penn_tree,
                                                   std::span<const Eojeol> analyses,
                                                   const TagsetRegistry& registry,
                                                   SourceLocation where) {
  Substituted<ConstituentNode> result{penn_tree, {}, false};
  std::vector<Terminal*> terms;
  collect_terminals(result.value, terms);
  std::vector<const Eojeol*> tokens;
  for (const auto* t : terms) tokens.push_back(&t->eojeol);
  auto replaced = align_and_substitute(tokens, analyses, registry, where, result.diagnostics);
  if (!replaced) return result;
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i]->eojeol = std::move((*replaced)[i]);
  result.substituted = true;
  return result;
}

// ---------------------------------------------------------------------------

double AgreementReport::accuracy() const {
  return eojeols ? static_cast<double>(exact) / static_cast<double>(eojeols) : 0.0;
}

double AgreementReport::precision() const {
  return auto_morphemes ? static_cast<double>(matched) / static_cast<double>(auto_morphemes) : 0.0;
}

double AgreementReport::recall() const {
  return gold_morphemes ? static_cast<double>(matched) / static_cast<double>(gold_morphemes) : 0.0;
}

double AgreementReport::f1() const {
  const double p = precision(), r = recall();
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

AgreementReport& AgreementReport::operator+=(const AgreementReport& o) {
  eojeols += o.eojeols;
  exact += o.exact;
  gold_morphemes += o.gold_morphemes;
  auto_morphemes += o.auto_morphemes;
  matched += o.matched;
  alignment_failures += o.alignment_failures;
  return *this;
}

AgreementReport sentence_agreement(std::span<const Eojeol> gold, std::span<const Eojeol> automatic) {
  AgreementReport r;
  if (gold.size() != automatic.size()) {
    r.alignment_failures = 1;
    return r;
  }
  using Key = std::pair<std::string, std::string>;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& g = gold[i].morphemes();
    const auto& a = automatic[i].morphemes();
    ++r.eojeols;
    r.gold_morphemes += g.size();
    r.auto_morphemes += a.size();
    bool same = g.size() == a.size();
    for (std::size_t k = 0; same && k < g.size(); ++k)
      same = g[k].form() == a[k].form() && g[k].tag().id == a[k].tag().id;
    if (same) ++r.exact;
    std::map<Key, std::size_t> pool;
    for (const auto& m : g) ++pool[{m.form(), m.tag().id}];
    for (const auto& m : a) {
      auto it = pool.find({m.form(), m.tag().id});
      if (it != pool.end() && it->second > 0) {
        --it->second;
        ++r.matched;
      }
    }
  }
  return r;
}

AgreementReport morph_agreement(std::span<const std::vector<Eojeol>> gold,
                                std::span<const std::vector<Eojeol>> automatic) {
  if (gold.size() != automatic.size())
    throw std::invalid_argument("gold has " + std::to_string(gold.size()) + " sentences, automatic has " +
                                std::to_string(automatic.size()));
  AgreementReport total;
  for (std::size_t i = 0; i < gold.size(); ++i) total += sentence_agreement(gold[i], automatic[i]);
  return total;
}

std::string format_agreement_text(const AgreementReport& r) {
  std::ostringstream os;
  os << "eojeols            " << r.eojeols << '\n'
     << "eojeol accuracy    " << format_rate(r.accuracy()) << " (" << r.exact << " exact)\n"
     << "morpheme precision " << format_rate(r.precision()) << '\n'
     << "morpheme recall    " << format_rate(r.recall()) << '\n'
     << "morpheme F1        " << format_rate(r.f1()) << '\n'
     << "alignment failures " << r.alignment_failures << '\n';
  return os.str();
}

std::string format_agreement_tsv(const AgreementReport& r) {
  std::ostringstream os;
  os << "eojeols\texact\taccuracy\tgold_morphemes\tauto_morphemes\tmatched\tprecision\trecall\tf1\t"
        "alignment_failures\n"
     << r.eojeols << '\t' << r.exact << '\t' << format_rate(r.accuracy()) << '\t' << r.gold_morphemes
     << '\t' << r.auto_morphemes << '\t' << r.matched << '\t' << format_rate(r.precision()) << '\t'
     << format_rate(r.recall()) << '\t' << format_rate(r.f1()) << '\t' << r.alignment_failures << '\n';
  return os.str();
}

}  // namespace ktb
