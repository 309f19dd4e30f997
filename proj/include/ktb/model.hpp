#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ktb {

// Fine-grained POS inventories: the KAIST Treebank tagset (lowercase) and the
// tagset of the Sejong morphological analyzer (uppercase).
enum class Tagset { kaist, sejong };

std::string_view to_string(Tagset t);
std::optional<Tagset> parse_tagset(std::string_view name);

// Strict mode rejects unknown tags; lenient mode passes them through with a
// diagnostic and falls back to prefix-based classification.
enum class Mode { strict, lenient };

class UnknownTagError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FineTag {
  std::string id;
  Tagset tagset = Tagset::kaist;

  friend bool operator==(const FineTag&, const FineTag&) = default;
};

/// One root form or affix with its fine-grained tag.
class Morpheme {
 public:
  /// Throws std::invalid_argument if form or tag id is empty, or if the form
  /// contains a tab, carriage return or newline.
  Morpheme(std::string form, FineTag tag);

  const std::string& form() const { return form_; }
  const FineTag& tag() const { return tag_; }

  friend bool operator==(const Morpheme&, const Morpheme&) = default;

 private:
  std::string form_;
  FineTag tag_;
};

/// A whitespace-delimited surface token with its ordered morpheme analysis.
///
/// The surface defaults to the concatenation of the morpheme forms. An
/// explicit surface is kept only when it differs from that concatenation,
/// which happens when morphology fuses forms (들이키+였 -> 들이켰).
class Eojeol {
 public:
  explicit Eojeol(std::vector<Morpheme> morphemes,
                  std::optional<std::string> surface = std::nullopt);

  const std::vector<Morpheme>& morphemes() const { return morphemes_; }
  std::string surface() const;
  std::string concatenation() const;
  bool has_explicit_surface() const { return surface_.has_value(); }
  const std::optional<std::string>& explicit_surface() const { return surface_; }

  /// Copy with morphemes appended; an explicit surface is extended by the
  /// appended forms.
  Eojeol with_appended(std::span<const Morpheme> tail) const;

  friend bool operator==(const Eojeol&, const Eojeol&) = default;

 private:
  std::vector<Morpheme> morphemes_;
  std::optional<std::string> surface_;
};

enum class PhraseType { ADJP, ADVP, AUXP, IP, NP, VP, S };
inline constexpr std::array<PhraseType, 7> kPhraseTypes = {
    PhraseType::ADJP, PhraseType::ADVP, PhraseType::AUXP, PhraseType::IP,
    PhraseType::NP,   PhraseType::VP,   PhraseType::S};

std::string_view to_string(PhraseType t);
std::optional<PhraseType> parse_phrase_type(std::string_view s);

enum class FunctionTag { PRN };

std::string_view to_string(FunctionTag t);
std::optional<FunctionTag> parse_function_tag(std::string_view s);

enum class DependencyLabel {
  // case labels
  comit, comp, obj, quot, sbj, tpc,
  // inferred labels
  adn, adv, amod, aux, cc, conj, dep, ejx, intj, nmod, p, prn, root, sub, vmod,
};

inline constexpr std::size_t kDependencyLabelCount = 21;

std::span<const DependencyLabel> all_dependency_labels();
std::string_view to_string(DependencyLabel l);
std::optional<DependencyLabel> parse_dependency_label(std::string_view s);
bool is_case_label(DependencyLabel l);

struct TagInfo {
  std::string id;
  std::string description;
};

// Data for the dependency label cascade. Every set holds tag identifiers of
// the tagset being converted; coarse sets hold single-character coarse tags.
struct LabelRules {
  std::map<std::string, DependencyLabel, std::less<>> case_labels;
  std::set<std::string, std::less<>> conj_tags;
  std::set<std::string, std::less<>> cc_tags;
  std::set<std::string, std::less<>> adn_tags;
  std::vector<std::string> adn_prefixes;
  std::set<std::string, std::less<>> adv_tags;
  std::set<std::string, std::less<>> sub_tags;
  std::set<std::string, std::less<>> intj_tags;
  std::set<std::string, std::less<>> amod_head_tags;
  std::set<std::string, std::less<>> nmod_head_coarse;
  std::set<std::string, std::less<>> vmod_head_coarse;
  std::set<std::string, std::less<>> vmod_head_tags;
};

/// Closed tag vocabularies plus the tables that classify them. The built-in
/// tables are loaded by the default constructor; a config file may override
/// any of them (see README for the key/value format).
class TagsetRegistry {
 public:
  TagsetRegistry();

  static TagsetRegistry from_config_file(const std::filesystem::path& path);
  /// Applies `key = value` overrides. Throws ConfigError with a line number.
  void apply_config(std::istream& in, std::string_view source_name = "<config>");

  Mode mode() const { return mode_; }
  void set_mode(Mode m) { mode_ = m; }

  std::span<const TagInfo> tags(Tagset t) const;
  bool validate_tag(Tagset t, std::string_view id) const;

  // The predicates below throw UnknownTagError for unregistered tags in
  // strict mode.
  bool is_grammatical_affix(const FineTag& tag) const;
  bool is_punct(const FineTag& tag) const;
  std::string coarse_tag(const FineTag& tag) const;
  std::optional<DependencyLabel> case_label(const FineTag& tag) const;

  const std::set<std::string, std::less<>>& punct_tags(Tagset t) const;
  const std::vector<std::string>& affix_prefixes(Tagset t) const;
  const std::map<std::string, std::string, std::less<>>& coarse_exceptions(Tagset t) const;

  const LabelRules& rules() const { return rules_; }
  PhraseType prn_label() const { return prn_label_; }

 private:
  struct TagsetTables {
    std::vector<TagInfo> tags;
    std::set<std::string, std::less<>> ids;
    std::set<std::string, std::less<>> punct;
    std::vector<std::string> affix_prefixes;
    std::map<std::string, std::string, std::less<>> coarse_exceptions;
  };

  const TagsetTables& tables(Tagset t) const;
  TagsetTables& tables(Tagset t);
  void require_known(const FineTag& tag) const;

  std::array<TagsetTables, 2> tables_;
  LabelRules rules_;
  PhraseType prn_label_ = PhraseType::NP;
  Mode mode_ = Mode::strict;
};

}  // namespace ktb
