#include "ktb/treeio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace ktb {

namespace {

constexpr std::string_view kSpecialChars = "()+/|\\ ";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_blank(std::string_view s) {
  for (char c : s)
    if (!is_space(c)) return false;
  return true;
}

std::size_t codepoints(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Splits on `sep` wherever it is not preceded by an escaping backslash.
std::vector<std::string_view> split_unescaped(std::string_view raw, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\') {
      ++i;
    } else if (raw[i] == sep) {
      out.push_back(raw.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(raw.substr(start));
  return out;
}

std::size_t rfind_unescaped(std::string_view raw, char sep) {
  std::size_t found = std::string_view::npos;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\') ++i;
    else if (raw[i] == sep) found = i;
  }
  return found;
}

std::size_t find_unescaped(std::string_view raw, char sep) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\') ++i;
    else if (raw[i] == sep) return i;
  }
  return std::string_view::npos;
}

std::optional<std::string> unescape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\') {
      if (i + 1 == raw.size()) return std::nullopt;
      out += raw[++i];
    } else {
      out += raw[i];
    }
  }
  return out;
}

// Parses `form/tag`. Tag validity is reported through `diags`.
std::optional<Morpheme> parse_morpheme(std::string_view raw, const TagsetRegistry& registry,
                                       Tagset tagset, SourceLocation where,
                                       std::vector<Diagnostic>& diags) {
  const auto slash = rfind_unescaped(raw, '/');
  if (slash == std::string_view::npos) {
    diags.push_back(make_error("malformed-morpheme",
                               "morpheme '" + std::string(raw) + "' is missing '/tag'", where));
    return std::nullopt;
  }
  auto form = unescape(raw.substr(0, slash));
  auto tag = unescape(raw.substr(slash + 1));
  if (!form || !tag) {
    diags.push_back(make_error("bad-escape", "dangling backslash in '" + std::string(raw) + "'",
                               where));
    return std::nullopt;
  }
  if (form->empty() || tag->empty()) {
    diags.push_back(make_error("malformed-morpheme",
                               "morpheme '" + std::string(raw) + "' has an empty form or tag",
                               where));
    return std::nullopt;
  }
  if (!registry.validate_tag(tagset, *tag)) {
    const std::string msg =
        "unknown " + std::string(to_string(tagset)) + " tag '" + *tag + "'";
    if (registry.mode() == Mode::strict) {
      diags.push_back(make_error("unknown-tag", msg, where));
      return std::nullopt;
    }
    diags.push_back(make_warning("unknown-tag", msg, where));
  }
  try {
    return Morpheme(std::move(*form), FineTag{std::move(*tag), tagset});
  } catch (const std::invalid_argument& e) {
    diags.push_back(make_error("malformed-morpheme", e.what(), where));
    return std::nullopt;
  }
}

std::optional<std::vector<Morpheme>> parse_morphemes(std::string_view raw,
                                                     const TagsetRegistry& registry,
                                                     Tagset tagset, SourceLocation where,
                                                     std::vector<Diagnostic>& diags) {
  std::vector<Morpheme> out;
  bool ok = true;
  for (auto piece : split_unescaped(raw, '+')) {
    if (auto m = parse_morpheme(piece, registry, tagset, where, diags)) out.push_back(std::move(*m));
    else ok = false;
  }
  if (!ok) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Bracket lexer/parser

struct Token {
  enum Kind { open, close, atom } kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class BracketParser {
 public:
  BracketParser(std::string_view text, const TagsetRegistry& registry,
                const TreeParseOptions& options)
      : registry_(registry), options_(options) {
    lex(text);
  }

  Parsed<ConstituentNode> run() {
    Parsed<ConstituentNode> result;
    if (!diags_.empty()) {
      result.diagnostics = std::move(diags_);
      return result;
    }
    if (tokens_.empty()) {
      result.diagnostics.push_back(make_error("empty-input", "no tree found", at(options_.first_line, options_.first_column)));
      return result;
    }
    if (tokens_[0].kind != Token::open) {
      result.diagnostics.push_back(
          make_error("expected-tree", "expected '(' at start of tree", at(tokens_[0])));
      return result;
    }
    auto node = parse_phrase();
    if (node && pos_ < tokens_.size()) {
      diags_.push_back(
          make_error("trailing-input", "unexpected input after the tree", at(tokens_[pos_])));
      node.reset();
    }
    if (node && options_.require_root_s && node->phrase().label != PhraseType::S) {
      auto d = make_error("root-not-s",
                          "root phrase is " + std::string(to_string(node->phrase().label)) +
                              ", expected S",
                          at(tokens_[0]));
      if (registry_.mode() == Mode::lenient) d.severity = Severity::warning;
      else node.reset();
      diags_.push_back(std::move(d));
    }
    result.value = std::move(node);
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  SourceLocation at(std::size_t line, std::size_t column) const {
    return {options_.ordinal, line, column};
  }
  SourceLocation at(const Token& t) const { return at(t.line, t.column); }

  void lex(std::string_view text) {
    std::size_t line = options_.first_line;
    std::size_t column = options_.first_column;
    std::vector<std::pair<std::size_t, std::size_t>> open_stack;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
      for (std::size_t k = 0; k < n; ++k, ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '\n') {
          ++line;
          column = 1;
        } else if ((c & 0xC0) != 0x80) {
          ++column;
        }
      }
    };
    while (i < text.size()) {
      const char c = text[i];
      if (is_space(c)) {
        advance(1);
      } else if (c == '(') {
        tokens_.push_back({Token::open, text.substr(i, 1), line, column});
        open_stack.emplace_back(line, column);
        advance(1);
      } else if (c == ')') {
        if (open_stack.empty()) {
          diags_.push_back(
              make_error("unbalanced-brackets", "unmatched ')'", at(line, column)));
          return;
        }
        open_stack.pop_back();
        tokens_.push_back({Token::close, text.substr(i, 1), line, column});
        advance(1);
      } else {
        const std::size_t start = i;
        const std::size_t l = line, col = column;
        while (i < text.size() && !is_space(text[i]) && text[i] != '(' && text[i] != ')') {
          if (text[i] == '\\' && i + 1 < text.size()) advance(1);
          advance(1);
        }
        tokens_.push_back({Token::atom, text.substr(start, i - start), l, col});
      }
    }
    if (!open_stack.empty()) {
      const auto [l, col] = open_stack.back();
      diags_.push_back(make_error("unbalanced-brackets", "unbalanced brackets: '(' is never closed",
                                  at(l, col)));
    }
  }

  std::optional<ConstituentNode> parse_phrase() {
    const Token& open_tok = tokens_[pos_++];
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::atom) {
      diags_.push_back(make_error("missing-label", "phrase has no label", at(open_tok)));
      return std::nullopt;
    }
    const Token& label_tok = tokens_[pos_++];
    auto phrase = parse_label(label_tok);
    bool ok = phrase.has_value();

    while (pos_ < tokens_.size() && tokens_[pos_].kind != Token::close) {
      const Token& t = tokens_[pos_];
      if (t.kind == Token::open) {
        auto child = parse_phrase();
        if (!child) return std::nullopt;
        if (phrase) phrase->children.push_back(std::move(*child));
      } else {
        ++pos_;
        auto leaf = parse_leaf(t);
        if (!leaf) ok = false;
        else if (phrase) phrase->children.push_back(std::move(*leaf));
      }
    }
    // The lexer guarantees balance, so a close token is next.
    ++pos_;
    if (!ok) return std::nullopt;
    if (phrase->children.empty()) {
      diags_.push_back(make_error("empty-phrase", "phrase has no children", at(open_tok)));
      return std::nullopt;
    }
    return ConstituentNode(std::move(*phrase));
  }

  std::optional<Phrase> parse_label(const Token& t) {
    const auto plus = find_unescaped(t.text, '+');
    const auto head = t.text.substr(0, plus);
    const auto parts = split_unescaped(head, '-');
    Phrase p;
    auto label = parse_phrase_type(parts[0]);
    if (!label) {
      diags_.push_back(make_error("unknown-phrase-type",
                                  "unknown phrase type '" + std::string(parts[0]) + "'", at(t)));
      return std::nullopt;
    }
    p.label = *label;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      auto f = parse_function_tag(parts[i]);
      if (!f) {
        diags_.push_back(make_error("unknown-function-tag",
                                    "unknown function tag '" + std::string(parts[i]) + "'", at(t)));
        return std::nullopt;
      }
      p.add_ftag(*f);
    }
    if (plus != std::string_view::npos) {
      auto affixes = parse_morphemes(t.text.substr(plus + 1), registry_, options_.tagset, at(t), diags_);
      if (!affixes) return std::nullopt;
      p.affixes = std::move(*affixes);
    }
    return p;
  }

  std::optional<ConstituentNode> parse_leaf(const Token& t) {
    std::string_view body = t.text;
    std::optional<std::string> surface;
    if (const auto bar = find_unescaped(body, '|'); bar != std::string_view::npos) {
      surface = unescape(body.substr(0, bar));
      if (!surface || surface->empty()) {
        diags_.push_back(make_error("bad-surface", "malformed surface in '" + std::string(body) + "'", at(t)));
        return std::nullopt;
      }
      body = body.substr(bar + 1);
    }
    auto morphemes = parse_morphemes(body, registry_, options_.tagset, at(t), diags_);
    if (!morphemes) return std::nullopt;
    try {
      return ConstituentNode(Terminal{Eojeol(std::move(*morphemes), std::move(surface))});
    } catch (const std::invalid_argument& e) {
      diags_.push_back(make_error("bad-surface", e.what(), at(t)));
      return std::nullopt;
    }
  }

  const TagsetRegistry& registry_;
  const TreeParseOptions& options_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
};

void append_morphemes(std::string& out, const std::vector<Morpheme>& ms) {
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += '+';
    out += escape_form(ms[i].form());
    out += '/';
    out += escape_form(ms[i].tag().id);
  }
}

void serialize_into(const ConstituentNode& node, std::string& out) {
  if (node.is_terminal()) {
    const auto& e = node.terminal().eojeol;
    if (e.explicit_surface()) {
      out += escape_form(*e.explicit_surface());
      out += '|';
    }
    append_morphemes(out, e.morphemes());
    return;
  }
  const auto& p = node.phrase();
  out += '(';
  out += to_string(p.label);
  for (auto f : p.ftags) {
    out += '-';
    out += to_string(f);
  }
  if (!p.affixes.empty()) {
    out += '+';
    append_morphemes(out, p.affixes);
  }
  for (const auto& c : p.children) {
    out += ' ';
    serialize_into(c, out);
  }
  out += ')';
}

// Escapes only what the CoNLL LEMMA column needs to split back on '+'.
std::string escape_lemma(std::string_view form) {
  std::string out;
  for (char c : form) {
    if (c == '\\' || c == '+') out += '\\';
    out += c;
  }
  return out;
}

void check_stream(const std::istream& in) {
  if (in.bad()) throw IoError("read failure on input stream");
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += len;
  }
  return true;
}

std::string escape_form(std::string_view form) {
  std::string out;
  out.reserve(form.size());
  for (char c : form) {
    if (kSpecialChars.find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

Parsed<ConstituentNode> parse_tree(std::string_view text, const TagsetRegistry& registry,
                                   const TreeParseOptions& options) {
  return BracketParser(text, registry, options).run();
}

std::string serialize_tree(const ConstituentNode& node) {
  std::string out;
  serialize_into(node, out);
  return out;
}

// ---------------------------------------------------------------------------

TreebankReader::TreebankReader(std::istream& in, const TagsetRegistry& registry, Tagset tagset)
    : in_(in), registry_(registry), tagset_(tagset) {}

bool TreebankReader::read_line(std::string& line) {
  if (!std::getline(in_, line)) {
    check_stream(in_);
    return false;
  }
  ++line_no_;
  strip_cr(line);
  if (!is_valid_utf8(line))
    throw IoError("input is not valid UTF-8 (line " + std::to_string(line_no_) + ")");
  return true;
}

std::optional<std::string> TreebankReader::read_block() {
  std::string block;
  bool started = false;
  bool escaped = false;
  int depth = 0;
  for (;;) {
    if (pending_pos_ >= pending_.size()) {
      std::string line;
      if (!read_line(line)) break;
      if (started && depth > 0 && is_blank(line)) {
        pending_.clear();
        pending_pos_ = 0;
        return block;
      }
      pending_ = std::move(line);
      pending_pos_ = 0;
      pending_line_ = line_no_;
      if (started) block += '\n';
    }
    for (std::size_t i = pending_pos_; i < pending_.size(); ++i) {
      const char c = pending_[i];
      if (!started) {
        if (is_space(c)) continue;
        started = true;
        block_line_ = pending_line_;
        block_column_ = codepoints(std::string_view(pending_).substr(0, i)) + 1;
      }
      block += c;
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (--depth <= 0) {
          pending_pos_ = i + 1;
          return block;
        }
      }
    }
    pending_pos_ = pending_.size();
    // Junk outside any bracket ends at the end of its line.
    if (started && depth == 0) return block;
  }
  if (started) return block;
  return std::nullopt;
}

std::optional<TreeRecord> TreebankReader::next() {
  auto block = read_block();
  if (!block) return std::nullopt;
  TreeRecord record;
  record.ordinal = ++ordinal_;
  TreeParseOptions options{tagset_, record.ordinal, block_line_, block_column_, true};
  auto parsed = parse_tree(*block, registry_, options);
  record.tree = std::move(parsed.value);
  record.diagnostics = std::move(parsed.diagnostics);
  if (record.tree) ++kept_;
  else ++dropped_;
  return record;
}

// ---------------------------------------------------------------------------

Parsed<Eojeol> parse_morph_line(std::string_view line, const TagsetRegistry& registry,
                                Tagset tagset, SourceLocation where) {
  Parsed<Eojeol> result;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) {
    result.diagnostics.push_back(make_error("missing-tab", "expected surface<TAB>analysis", where));
    return result;
  }
  const auto surface = line.substr(0, tab);
  const auto analysis = line.substr(tab + 1);
  if (surface.empty() || surface.find(' ') != std::string_view::npos) {
    result.diagnostics.push_back(
        make_error("bad-surface", "surface must be non-empty and free of spaces", where));
    return result;
  }
  if (analysis.empty()) {
    result.diagnostics.push_back(make_error("empty-analysis", "no morphemes after tab", where));
    return result;
  }
  auto morphemes = parse_morphemes(analysis, registry, tagset, where, result.diagnostics);
  if (!morphemes) return result;
  try {
    result.value = Eojeol(std::move(*morphemes), std::string(surface));
  } catch (const std::invalid_argument& e) {
    result.diagnostics.push_back(make_error("bad-surface", e.what(), where));
  }
  return result;
}

std::string format_morph_line(const Eojeol& e) {
  std::string out = e.surface();
  out += '\t';
  const auto& ms = e.morphemes();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += '+';
    for (char c : ms[i].form()) {
      if (c == '\\' || c == '+' || c == '/') out += '\\';
      out += c;
    }
    out += '/';
    out += ms[i].tag().id;
  }
  return out;
}

MorphReader::MorphReader(std::istream& in, const TagsetRegistry& registry, Tagset tagset)
    : in_(in), registry_(registry), tagset_(tagset) {}

std::optional<MorphSentence> MorphReader::next() {
  MorphSentence sentence;
  bool started = false;
  for (std::string line; std::getline(in_, line);) {
    ++line_no_;
    strip_cr(line);
    if (!is_valid_utf8(line))
      throw IoError("input is not valid UTF-8 (line " + std::to_string(line_no_) + ")");
    if (is_blank(line)) {
      if (started) break;
      continue;
    }
    if (!started) {
      started = true;
      sentence.ordinal = ++ordinal_;
    }
    auto parsed = parse_morph_line(line, registry_, tagset_, {sentence.ordinal, line_no_, 1});
    for (auto& d : parsed.diagnostics) sentence.diagnostics.push_back(std::move(d));
    if (parsed.value) sentence.eojeols.push_back(std::move(*parsed.value));
  }
  check_stream(in_);
  if (!started) return std::nullopt;
  return sentence;
}

// ---------------------------------------------------------------------------

std::string write_conll(const DependencyTree& tree, const TagsetRegistry& registry) {
  std::string out;
  for (const auto& tok : tree.tokens) {
    if (registry.mode() == Mode::strict && !parse_dependency_label(tok.label))
      throw std::invalid_argument("dependency label '" + tok.label + "' is not in the label set");
    const auto& ms = tok.eojeol.morphemes();
    std::string lemma, cpos, pos;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (i) {
        lemma += '+';
        cpos += '+';
        pos += '+';
      }
      lemma += escape_lemma(ms[i].form());
      cpos += registry.coarse_tag(ms[i].tag());
      pos += ms[i].tag().id;
    }
    out += std::to_string(tok.index);
    out += '\t';
    out += tok.eojeol.surface();
    out += '\t';
    out += lemma;
    out += '\t';
    out += cpos;
    out += '\t';
    out += pos;
    out += "\t_\t";
    out += std::to_string(tok.head);
    out += '\t';
    out += tok.label;
    out += "\t_\t_\n";
  }
  out += '\n';
  return out;
}

Parsed<DependencyTree> from_conll(std::string_view block, const TagsetRegistry& registry,
                                  Tagset tagset, SourceLocation where) {
  Parsed<DependencyTree> result;
  auto& diags = result.diagnostics;
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= block.size();) {
    auto end = block.find('\n', start);
    if (end == std::string_view::npos) end = block.size();
    auto piece = block.substr(start, end - start);
    if (!piece.empty() && piece.back() == '\r') piece.remove_suffix(1);
    if (!is_blank(piece)) lines.push_back(piece);
    start = end + 1;
  }
  if (lines.empty()) {
    diags.push_back(make_error("empty-sentence", "sentence has no tokens", where));
    return result;
  }

  struct Row {
    std::vector<std::string_view> cols;
    SourceLocation where;
  };
  std::vector<Row> rows;
  bool ok = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    SourceLocation loc = where;
    if (loc.line) loc.line += i;
    std::vector<std::string_view> cols;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= lines[i].size(); ++k) {
      if (k == lines[i].size() || lines[i][k] == '\t') {
        cols.push_back(lines[i].substr(start, k - start));
        start = k + 1;
      }
    }
    if (cols.size() != 10) {
      diags.push_back(make_error("column-count",
                                 "expected 10 columns, found " + std::to_string(cols.size()), loc));
      ok = false;
      continue;
    }
    rows.push_back({std::move(cols), loc});
  }
  if (!ok) return result;

  const std::size_t n = rows.size();
  DependencyTree tree;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cols = rows[i].cols;
    const auto& loc = rows[i].where;
    auto number = [](std::string_view s) -> std::optional<std::size_t> {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
      return v;
    };
    auto id = number(cols[0]);
    if (!id || *id != i + 1) {
      diags.push_back(make_error("bad-id", "token ID '" + std::string(cols[0]) + "' should be " +
                                               std::to_string(i + 1), loc));
      ok = false;
      continue;
    }
    auto head = number(cols[6]);
    if (!head) {
      diags.push_back(make_error("bad-head", "head '" + std::string(cols[6]) + "' is not a number", loc));
      ok = false;
      continue;
    }
    if (*head > n) {
      diags.push_back(make_error("head-out-of-range",
                                 "head out of range: " + std::to_string(*head) + " in a sentence of " +
                                     std::to_string(n) + " tokens", loc));
      ok = false;
      continue;
    }
    if (*head == *id) {
      diags.push_back(make_error("self-loop", "token is its own head", loc));
      ok = false;
      continue;
    }
    if (!parse_dependency_label(cols[7])) {
      const std::string msg = "dependency label '" + std::string(cols[7]) + "' is not in the label set";
      if (registry.mode() == Mode::strict) {
        diags.push_back(make_error("unknown-label", msg, loc));
        ok = false;
        continue;
      }
      diags.push_back(make_warning("unknown-label", msg, loc));
    }
    const auto forms = split_unescaped(cols[2], '+');
    const auto tags = split_unescaped(cols[4], '+');
    if (forms.size() != tags.size()) {
      diags.push_back(make_error("misaligned-morphemes",
                                 "LEMMA has " + std::to_string(forms.size()) + " parts but POSTAG has " +
                                     std::to_string(tags.size()), loc));
      ok = false;
      continue;
    }
    std::vector<Morpheme> morphemes;
    bool token_ok = true;
    for (std::size_t k = 0; k < forms.size(); ++k) {
      std::string raw = escape_form(unescape(forms[k]).value_or(std::string(forms[k])));
      raw += '/';
      raw += escape_form(tags[k]);
      auto m = parse_morpheme(raw, registry, tagset, loc, diags);
      if (!m) token_ok = false;
      else morphemes.push_back(std::move(*m));
    }
    if (!token_ok || cols[1].empty()) {
      if (cols[1].empty()) diags.push_back(make_error("bad-surface", "empty FORM", loc));
      ok = false;
      continue;
    }
    try {
      tree.tokens.push_back(
          DepToken{*id, Eojeol(std::move(morphemes), std::string(cols[1])), *head, std::string(cols[7])});
    } catch (const std::invalid_argument& e) {
      diags.push_back(make_error("bad-surface", e.what(), loc));
      ok = false;
    }
  }
  if (ok) result.value = std::move(tree);
  return result;
}

ConllReader::ConllReader(std::istream& in, const TagsetRegistry& registry, Tagset tagset)
    : in_(in), registry_(registry), tagset_(tagset) {}

std::optional<std::string> ConllReader::read_block() {
  std::string block;
  bool started = false;
  for (std::string line; std::getline(in_, line);) {
    ++line_no_;
    strip_cr(line);
    if (!is_valid_utf8(line))
      throw IoError("input is not valid UTF-8 (line " + std::to_string(line_no_) + ")");
    if (is_blank(line)) {
      if (started) return block;
      continue;
    }
    if (!started) {
      started = true;
      block_line_ = line_no_;
    }
    block += line;
    block += '\n';
  }
  check_stream(in_);
  if (started) return block;
  return std::nullopt;
}

std::optional<ConllRecord> ConllReader::next() {
  auto block = read_block();
  if (!block) return std::nullopt;
  ConllRecord record;
  record.ordinal = ++ordinal_;
  auto parsed = from_conll(*block, registry_, tagset_, {record.ordinal, block_line_, 1});
  record.tree = std::move(parsed.value);
  record.diagnostics = std::move(parsed.diagnostics);
  return record;
}

FileFormat sniff_format(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  char c;
  while (in.get(c)) {
    if (is_space(c)) continue;
    return c == '(' ? FileFormat::brackets : FileFormat::conll;
  }
  return FileFormat::brackets;
}

}  // namespace ktb
