#include "ktb/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

namespace ktb {

namespace {

const std::vector<TagInfo> kKaistTags = {
    {"nbn", "Non-unit bound noun"},
    {"nbu", "Unit bound noun"},
    {"ncn", "Non-predicative common noun"},
    {"ncpa", "Active-predicative common noun"},
    {"ncps", "Stative-predicative common noun"},
    {"nnc", "Cardinal numerals"},
    {"nno", "Ordinal numerals"},
    {"npd", "Demonstrative pronoun"},
    {"npp", "Personal pronoun"},
    {"nq", "Proper noun"},
    {"f", "Foreign word"},
    {"paa", "Attributive adjective"},
    {"pad", "Demonstrative adjective"},
    {"pvd", "Demonstrative verb"},
    {"pvg", "General verb"},
    {"px", "Auxiliary verb"},
    {"mad", "Demonstrative adverb"},
    {"mag", "General adverb"},
    {"maj", "Conjunctive adverb"},
    {"mma", "Attributive adnoun"},
    {"mmd", "Demonstrative adnoun"},
    {"jca", "Adverbial case particle"},
    {"jcc", "Complemental case particle"},
    {"jcj", "Conjunctive case particle"},
    {"jcm", "Adnominal case particle"},
    {"jco", "Objective case particle"},
    {"jcr", "Quotative case particle"},
    {"jcs", "Subjective case particle"},
    {"jct", "Comitative case particle"},
    {"jcv", "Vocative case particle"},
    {"jp", "Predicative marker"},
    {"jxc", "Common auxiliary"},
    {"jxf", "Final auxiliary"},
    {"jxt", "Topical auxiliary"},
    {"ecc", "Coordinate conjunction ending marker"},
    {"ecs", "Subordinate conjunction ending marker"},
    {"ecx", "Auxiliary conjunction ending marker"},
    {"ef", "Final ending marker"},
    {"ep", "Pre-final ending marker"},
    {"etm", "Adnominalizing ending marker"},
    {"etn", "Nominalizing ending marker"},
    {"xp", "Prefix"},
    {"xsa", "Adverb derivational suffix"},
    {"xsm", "Adjective derivational suffix"},
    {"xsn", "Noun derivational suffix"},
    {"xsv", "Verb derivational suffix"},
    {"ii", "Interjection"},
    {"sd", "Punctuation"},
    {"sf", "Punctuation"},
    {"sl", "Punctuation"},
    {"sp", "Punctuation"},
    {"sr", "Punctuation"},
    {"su", "Punctuation"},
    {"sy", "Punctuation"},
};

const std::vector<TagInfo> kSejongTags = {
    {"NNG", "General noun"},
    {"NNP", "Proper noun"},
    {"NNB", "Bound noun"},
    {"NP", "Pronoun"},
    {"NR", "Numeral"},
    {"VV", "Verb"},
    {"VA", "Adjective"},
    {"VX", "Auxiliary predicate"},
    {"VCP", "Copula"},
    {"VCN", "Negation adjective"},
    {"MM", "Adnoun"},
    {"MAG", "General adverb"},
    {"MAJ", "Conjunctive adverb"},
    {"JKS", "Subjective case particle"},
    {"JKC", "Complemental case particle"},
    {"JKG", "Adnominal case particle"},
    {"JKO", "Objective case particle"},
    {"JKB", "Adverbial case particle"},
    {"JKV", "Vocative case particle"},
    {"JKQ", "Quotative case particle"},
    {"EP", "Prefinal ending marker"},
    {"EF", "Final ending marker"},
    {"EC", "Conjunctive ending marker"},
    {"ETN", "Nominalizing ending marker"},
    {"ETM", "Adnominalizing ending marker"},
    {"XPN", "Noun prefix"},
    {"XSN", "Noun derivational suffix"},
    {"XSV", "Verb derivational suffix"},
    {"XSA", "Adjective derivational suffix"},
    {"XR", "Base morpheme"},
    {"JX", "Auxiliary particle"},
    {"JC", "Conjunctive particle"},
    {"IC", "Interjection"},
    {"SN", "Number"},
    {"SL", "Foreign word"},
    {"SH", "Chinese word"},
    {"NF", "Noun-like word"},
    {"NV", "Predicate-like word"},
    {"NA", "Unknown word"},
    {"SF", "Punctuation"},
    {"SP", "Punctuation"},
    {"SS", "Punctuation"},
    {"SE", "Punctuation"},
    {"SO", "Punctuation"},
    {"SW", "Punctuation"},
};

constexpr std::array<DependencyLabel, kDependencyLabelCount> kLabels = {
    DependencyLabel::comit, DependencyLabel::comp, DependencyLabel::obj,
    DependencyLabel::quot,  DependencyLabel::sbj,  DependencyLabel::tpc,
    DependencyLabel::adn,   DependencyLabel::adv,  DependencyLabel::amod,
    DependencyLabel::aux,   DependencyLabel::cc,   DependencyLabel::conj,
    DependencyLabel::dep,   DependencyLabel::ejx,  DependencyLabel::intj,
    DependencyLabel::nmod,  DependencyLabel::p,    DependencyLabel::prn,
    DependencyLabel::root,  DependencyLabel::sub,  DependencyLabel::vmod,
};

constexpr std::array<std::string_view, kDependencyLabelCount> kLabelNames = {
    "comit", "comp", "obj", "quot", "sbj", "tpc", "adn",  "adv", "amod", "aux", "cc",
    "conj",  "dep",  "ejx", "intj", "nmod", "p",   "prn", "root", "sub", "vmod",
};

bool starts_with_any(std::string_view s, const std::vector<std::string>& prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](const std::string& p) { return s.starts_with(p); });
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <typename Set>
Set to_set(const std::vector<std::string>& words) {
  return Set(words.begin(), words.end());
}

}  // namespace

std::string_view to_string(Tagset t) { return t == Tagset::kaist ? "kaist" : "sejong"; }

std::optional<Tagset> parse_tagset(std::string_view name) {
  if (name == "kaist") return Tagset::kaist;
  if (name == "sejong") return Tagset::sejong;
  return std::nullopt;
}

Morpheme::Morpheme(std::string form, FineTag tag) : form_(std::move(form)), tag_(std::move(tag)) {
  if (form_.empty()) throw std::invalid_argument("morpheme form is empty");
  if (tag_.id.empty()) throw std::invalid_argument("morpheme tag is empty");
  if (form_.find_first_of("\t\r\n") != std::string::npos)
    throw std::invalid_argument("morpheme form contains a tab or line break");
}

Eojeol::Eojeol(std::vector<Morpheme> morphemes, std::optional<std::string> surface)
    : morphemes_(std::move(morphemes)), surface_(std::move(surface)) {
  if (morphemes_.empty()) throw std::invalid_argument("eojeol has no morphemes");
  if (surface_) {
    if (surface_->empty()) throw std::invalid_argument("eojeol surface is empty");
    if (surface_->find_first_of(" \t\r\n") != std::string::npos)
      throw std::invalid_argument("eojeol surface contains whitespace");
    if (*surface_ == concatenation()) surface_.reset();
  }
}

std::string Eojeol::concatenation() const {
  std::string out;
  for (const auto& m : morphemes_) out += m.form();
  return out;
}

std::string Eojeol::surface() const { return surface_ ? *surface_ : concatenation(); }

Eojeol Eojeol::with_appended(std::span<const Morpheme> tail) const {
  auto morphemes = morphemes_;
  morphemes.insert(morphemes.end(), tail.begin(), tail.end());
  std::optional<std::string> surface = surface_;
  if (surface) {
    for (const auto& m : tail) *surface += m.form();
  }
  return Eojeol(std::move(morphemes), std::move(surface));
}

std::string_view to_string(PhraseType t) {
  switch (t) {
    case PhraseType::ADJP: return "ADJP";
    case PhraseType::ADVP: return "ADVP";
    case PhraseType::AUXP: return "AUXP";
    case PhraseType::IP: return "IP";
    case PhraseType::NP: return "NP";
    case PhraseType::VP: return "VP";
    case PhraseType::S: return "S";
  }
  return "?";
}

std::optional<PhraseType> parse_phrase_type(std::string_view s) {
  for (auto t : kPhraseTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::string_view to_string(FunctionTag) { return "PRN"; }

std::optional<FunctionTag> parse_function_tag(std::string_view s) {
  if (s == "PRN") return FunctionTag::PRN;
  return std::nullopt;
}

std::span<const DependencyLabel> all_dependency_labels() { return kLabels; }

std::string_view to_string(DependencyLabel l) { return kLabelNames[static_cast<std::size_t>(l)]; }

std::optional<DependencyLabel> parse_dependency_label(std::string_view s) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i)
    if (kLabelNames[i] == s) return kLabels[i];
  return std::nullopt;
}

bool is_case_label(DependencyLabel l) { return l <= DependencyLabel::tpc; }

TagsetRegistry::TagsetRegistry() {
  auto& kaist = tables(Tagset::kaist);
  kaist.tags = kKaistTags;
  kaist.punct = {"sd", "sf", "sl", "sp", "sr", "su", "sy"};
  kaist.affix_prefixes = {"j", "e", "x"};

  auto& sejong = tables(Tagset::sejong);
  sejong.tags = kSejongTags;
  sejong.punct = {"SF", "SP", "SS", "SE", "SO", "SW"};
  // XR is a base morpheme, not an affix.
  sejong.affix_prefixes = {"J", "E", "XP", "XS"};
  sejong.coarse_exceptions = {{"SN", "N"}, {"NF", "N"}, {"SL", "F"}, {"SH", "F"}, {"NV", "V"}};

  for (auto& t : tables_)
    for (const auto& info : t.tags) t.ids.insert(info.id);

  rules_.case_labels = {
      {"jcs", DependencyLabel::sbj},   {"jco", DependencyLabel::obj},
      {"jcc", DependencyLabel::comp},  {"jct", DependencyLabel::comit},
      {"jcr", DependencyLabel::quot},  {"jxt", DependencyLabel::tpc},
  };
  rules_.conj_tags = {"ecc", "jcj"};
  rules_.cc_tags = {"maj"};
  rules_.adn_tags = {"jcm", "etm"};
  rules_.adn_prefixes = {"mm"};
  rules_.adv_tags = {"jca"};
  rules_.sub_tags = {"ecs"};
  rules_.intj_tags = {"ii"};
  rules_.amod_head_tags = {"paa", "pad", "xsm"};
  rules_.nmod_head_coarse = {"n"};
  rules_.vmod_head_coarse = {"p"};
  rules_.vmod_head_tags = {"px", "xsv"};
}

const TagsetRegistry::TagsetTables& TagsetRegistry::tables(Tagset t) const {
  return tables_[static_cast<std::size_t>(t)];
}

TagsetRegistry::TagsetTables& TagsetRegistry::tables(Tagset t) {
  return tables_[static_cast<std::size_t>(t)];
}

std::span<const TagInfo> TagsetRegistry::tags(Tagset t) const { return tables(t).tags; }

bool TagsetRegistry::validate_tag(Tagset t, std::string_view id) const {
  return tables(t).ids.contains(id);
}

void TagsetRegistry::require_known(const FineTag& tag) const {
  if (mode_ == Mode::strict && !validate_tag(tag.tagset, tag.id))
    throw UnknownTagError("unknown " + std::string(to_string(tag.tagset)) + " tag '" + tag.id + "'");
}

bool TagsetRegistry::is_grammatical_affix(const FineTag& tag) const {
  require_known(tag);
  return starts_with_any(tag.id, tables(tag.tagset).affix_prefixes);
}

bool TagsetRegistry::is_punct(const FineTag& tag) const {
  require_known(tag);
  return tables(tag.tagset).punct.contains(tag.id);
}

std::string TagsetRegistry::coarse_tag(const FineTag& tag) const {
  require_known(tag);
  const auto& exceptions = tables(tag.tagset).coarse_exceptions;
  if (auto it = exceptions.find(tag.id); it != exceptions.end()) return it->second;
  return tag.id.substr(0, 1);
}

std::optional<DependencyLabel> TagsetRegistry::case_label(const FineTag& tag) const {
  if (auto it = rules_.case_labels.find(tag.id); it != rules_.case_labels.end()) return it->second;
  return std::nullopt;
}

const std::set<std::string, std::less<>>& TagsetRegistry::punct_tags(Tagset t) const {
  return tables(t).punct;
}

const std::vector<std::string>& TagsetRegistry::affix_prefixes(Tagset t) const {
  return tables(t).affix_prefixes;
}

const std::map<std::string, std::string, std::less<>>& TagsetRegistry::coarse_exceptions(
    Tagset t) const {
  return tables(t).coarse_exceptions;
}

TagsetRegistry TagsetRegistry::from_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  TagsetRegistry registry;
  registry.apply_config(in, path.string());
  return registry;
}

void TagsetRegistry::apply_config(std::istream& in, std::string_view source_name) {
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ConfigError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + what);
  };
  auto tagset_of = [&](std::string_view name) {
    auto t = parse_tagset(name);
    if (!t) fail("unknown tagset '" + std::string(name) + "'");
    return *t;
  };

  std::map<std::string, std::set<std::string, std::less<>>*, std::less<>> rule_sets = {
      {"rule.conj", &rules_.conj_tags},
      {"rule.cc", &rules_.cc_tags},
      {"rule.adn", &rules_.adn_tags},
      {"rule.adv", &rules_.adv_tags},
      {"rule.sub", &rules_.sub_tags},
      {"rule.intj", &rules_.intj_tags},
      {"rule.amod_head", &rules_.amod_head_tags},
      {"rule.nmod_head_coarse", &rules_.nmod_head_coarse},
      {"rule.vmod_head_coarse", &rules_.vmod_head_coarse},
      {"rule.vmod_head", &rules_.vmod_head_tags},
  };

  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto words = split_words(value);

    if (key == "mode") {
      if (value == "strict") mode_ = Mode::strict;
      else if (value == "lenient") mode_ = Mode::lenient;
      else fail("mode must be strict or lenient");
    } else if (key == "prn.label") {
      auto t = parse_phrase_type(value);
      if (!t) fail("unknown phrase type '" + value + "'");
      prn_label_ = *t;
    } else if (key.starts_with("case.")) {
      const std::string tag = key.substr(5);
      if (tag.empty()) fail("missing tag in case key");
      if (value == "none") {
        rules_.case_labels.erase(tag);
        continue;
      }
      auto label = parse_dependency_label(value);
      if (!label || !is_case_label(*label)) fail("'" + value + "' is not a case label");
      rules_.case_labels[tag] = *label;
    } else if (key.starts_with("punct.")) {
      tables(tagset_of(key.substr(6))).punct = to_set<std::set<std::string, std::less<>>>(words);
    } else if (key.starts_with("affix.")) {
      tables(tagset_of(key.substr(6))).affix_prefixes = words;
    } else if (key.starts_with("coarse.")) {
      const auto rest = key.substr(7);
      const auto dot = rest.find('.');
      if (dot == std::string::npos) fail("expected coarse.<tagset>.<TAG>");
      auto& exceptions = tables(tagset_of(rest.substr(0, dot))).coarse_exceptions;
      const std::string tag = rest.substr(dot + 1);
      if (value == "none") exceptions.erase(tag);
      else if (value.size() != 1) fail("coarse tag must be one character");
      else exceptions[tag] = value;
    } else if (key.starts_with("tag.")) {
      const auto rest = key.substr(4);
      const auto dot = rest.find('.');
      if (dot == std::string::npos) fail("expected tag.<tagset>.<TAG>");
      auto& t = tables(tagset_of(rest.substr(0, dot)));
      const std::string id = rest.substr(dot + 1);
      if (id.empty()) fail("missing tag identifier");
      if (t.ids.insert(id).second) t.tags.push_back({id, value});
    } else if (key == "rule.adn_prefix") {
      rules_.adn_prefixes = words;
    } else if (auto it = rule_sets.find(key); it != rule_sets.end()) {
      *it->second = to_set<std::set<std::string, std::less<>>>(words);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
}

}  // namespace ktb
