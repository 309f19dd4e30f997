#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ktb/diagnostic.hpp"
#include "ktb/model.hpp"
#include "ktb/tree.hpp"
#include "ktb/treeio.hpp"

namespace ktb {

// ---------------------------------------------------------------------------
// Dependency validation

/// Empty iff the tree has exactly one root labeled root, no cycles, heads in
/// range, labels from the label set, and no crossing arcs. Crossing arcs are
/// a warning; everything else is an error.
std::vector<Diagnostic> validate_dependency(const DependencyTree& tree, SourceLocation where = {});

// ---------------------------------------------------------------------------
// Statistics

struct StatsEntry {
  std::string name;
  std::size_t trees = 0;
  std::size_t tokens = 0;
  std::size_t dropped = 0;

  StatsEntry& operator+=(const StatsEntry& other);
};

struct StatsReport {
  std::vector<StatsEntry> entries;

  StatsEntry total() const;
};

struct CorpusInput {
  std::string name;
  std::istream* stream = nullptr;
  FileFormat format = FileFormat::brackets;
};

enum class Split { train, dev, test };

std::string_view to_string(Split s);
std::optional<Split> parse_split(std::string_view s);

/// Split assigned to each record ordinal; element 0 is ordinal 1.
struct SplitPlan {
  std::vector<Split> assignment;

  std::size_t size() const { return assignment.size(); }
  std::array<std::size_t, 3> counts() const;
};

/// Token count of one tree after the Penn-style transformation.
std::size_t token_count(const ConstituentNode& tree, const TagsetRegistry& registry);

/// Counts trees and tokens per input. Bracketed inputs are counted after
/// the Penn-style transformation. With a plan, the single input is broken
/// down by split instead.
StatsReport corpus_stats(std::span<const CorpusInput> inputs, const TagsetRegistry& registry,
                         Tagset tagset, const SplitPlan* plan = nullptr,
                         std::vector<Diagnostic>* diagnostics = nullptr);

std::string format_stats_text(const StatsReport& report);
/// Columns: name, trees, tokens, dropped; header line first.
std::string format_stats_tsv(const StatsReport& report);

// ---------------------------------------------------------------------------
// Splitting

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifestEntry {
  std::size_t first = 0;  // 1-based, inclusive
  std::size_t last = 0;
  Split split = Split::train;
};

/// Lines of `<first>[-<last>] [->] <split>`; '#' starts a comment.
std::vector<ManifestEntry> parse_manifest(std::istream& in);

/// Contiguous split: the first round(n*train) records go to train, the next
/// round(n*dev) to dev, the rest to test. Ratios must be non-negative and
/// sum to 1.
SplitPlan split_by_ratios(std::size_t n, std::array<double, 3> ratios);

/// Every ordinal 1..n must be covered exactly once.
SplitPlan split_by_manifest(std::size_t n, std::span<const ManifestEntry> manifest);

/// Number of records (tree or sentence blocks, valid or not) in a stream.
std::size_t count_records(std::istream& in, FileFormat format, const TagsetRegistry& registry,
                          Tagset tagset);

/// Writes each valid record to the stream of its split, in input order and
/// in canonical form. Malformed records are dropped with diagnostics.
/// Returns the number of records written per split.
std::array<std::size_t, 3> split_corpus(std::istream& in, FileFormat format,
                                        const TagsetRegistry& registry, Tagset tagset,
                                        const SplitPlan& plan, std::array<std::ostream*, 3> outs,
                                        std::vector<Diagnostic>& diagnostics);

// ---------------------------------------------------------------------------
// Automatic morphology

template <typename T>
struct Substituted {
  T value;
  std::vector<Diagnostic> diagnostics;
  bool substituted = false;  // false when the whole sentence was left as is
};

/// Replaces gold morphology with automatic analyses, one per eojeol in
/// sentence order. Tokens are grouped into eojeols by surface; each group
/// takes the token split of its automatic analysis. Groups whose token count
/// disagrees keep gold morphology (warning). If the analyses do not cover
/// the sentence exactly, nothing is substituted (error).
Substituted<DependencyTree> substitute_morphology(const DependencyTree& sentence,
                                                  std::span<const Eojeol> analyses,
                                                  const TagsetRegistry& registry,
                                                  SourceLocation where = {});

Substituted<ConstituentNode> substitute_morphology(const ConstituentNode& penn_tree,
                                                   std::span<const Eojeol> analyses,
                                                   const TagsetRegistry& registry,
                                                   SourceLocation where = {});

struct AgreementReport {
  std::size_t eojeols = 0;
  std::size_t exact = 0;
  std::size_t gold_morphemes = 0;
  std::size_t auto_morphemes = 0;
  std::size_t matched = 0;
  std::size_t alignment_failures = 0;  // sentences with differing eojeol counts

  // Rates are 0 when their denominator is 0.
  double accuracy() const;
  double precision() const;
  double recall() const;
  double f1() const;

  AgreementReport& operator+=(const AgreementReport& other);
};

/// Agreement for one sentence; morphemes match as (form, tag) multisets per
/// eojeol.
AgreementReport sentence_agreement(std::span<const Eojeol> gold, std::span<const Eojeol> automatic);

/// Throws std::invalid_argument when the sentence counts differ.
AgreementReport morph_agreement(std::span<const std::vector<Eojeol>> gold,
                                std::span<const std::vector<Eojeol>> automatic);

std::string format_agreement_text(const AgreementReport& r);
/// Columns: eojeols, exact, accuracy, gold_morphemes, auto_morphemes,
/// matched, precision, recall, f1, alignment_failures; header line first.
std::string format_agreement_tsv(const AgreementReport& r);

}  // namespace ktb
