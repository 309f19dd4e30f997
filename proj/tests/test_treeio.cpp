#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "ktb/treeio.hpp"
#include "support/util.hpp"

using namespace ktb;
using ktb::testing::km;
using ktb::testing::parse_or_throw;

namespace {

bool has_code(const std::vector<Diagnostic>& ds, std::string_view code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

const char* kAffixedTree = "(S (NP+는/jxt (NP 나/npp)) (VP 들이키/pvg+였/ep+다/ef+./sf))";

}  // namespace

TEST(ParseTree, AffixedPhrase) {
  TagsetRegistry r;
  auto t = parse_or_throw(kAffixedTree, r);
  ASSERT_TRUE(t.is_phrase());
  const auto& s = t.phrase();
  EXPECT_EQ(s.label, PhraseType::S);
  ASSERT_EQ(s.children.size(), 2u);
  const auto& np = s.children[0].phrase();
  EXPECT_EQ(np.label, PhraseType::NP);
  ASSERT_EQ(np.affixes.size(), 1u);
  EXPECT_EQ(np.affixes[0], km("는", "jxt"));
  EXPECT_EQ(s.children[1].phrase().children[0].terminal().eojeol.morphemes().size(), 4u);
}

TEST(ParseTree, MinimalTree) {
  TagsetRegistry r;
  auto t = parse_or_throw("(NP 나/npp)", r);
  ASSERT_EQ(t.phrase().children.size(), 1u);
  const auto& e = t.phrase().children[0].terminal().eojeol;
  ASSERT_EQ(e.morphemes().size(), 1u);
  EXPECT_EQ(e.morphemes()[0], km("나", "npp"));
}

TEST(ParseTree, UnbalancedReportsColumn) {
  TagsetRegistry r;
  auto p = parse_tree("(S (NP", r);
  EXPECT_FALSE(p.ok());
  ASSERT_FALSE(p.diagnostics.empty());
  EXPECT_EQ(p.diagnostics[0].code, "unbalanced-brackets");
  EXPECT_EQ(p.diagnostics[0].where.line, 1u);
  EXPECT_GT(p.diagnostics[0].where.column, 0u);
}

TEST(ParseTree, Errors) {
  TagsetRegistry r;
  EXPECT_TRUE(has_code(parse_tree("(XP 나/npp)", r).diagnostics, "unknown-phrase-type"));
  EXPECT_TRUE(has_code(parse_tree("(NP-FOO 나/npp)", r).diagnostics, "unknown-function-tag"));
  EXPECT_TRUE(has_code(parse_tree("(NP)", r).diagnostics, "empty-phrase"));
  EXPECT_TRUE(has_code(parse_tree("(NP 나)", r).diagnostics, "malformed-morpheme"));
  EXPECT_TRUE(has_code(parse_tree("(NP 나/npp) x", r).diagnostics, "trailing-input"));
  EXPECT_TRUE(has_code(parse_tree("", r).diagnostics, "empty-input"));
  EXPECT_TRUE(has_code(parse_tree("(NP 나/zz)", r).diagnostics, "unknown-tag"));
  EXPECT_FALSE(parse_tree("(NP 나/zz)", r).ok());
}

TEST(ParseTree, LenientAcceptsUnknownTagWithWarning) {
  TagsetRegistry r;
  r.set_mode(Mode::lenient);
  auto p = parse_tree("(NP 나/zz)", r);
  ASSERT_TRUE(p.ok());
  ASSERT_EQ(p.diagnostics.size(), 1u);
  EXPECT_EQ(p.diagnostics[0].severity, Severity::warning);
}

TEST(Serialize, CanonicalRoundTrip) {
  TagsetRegistry r;
  EXPECT_EQ(serialize_tree(parse_or_throw(kAffixedTree, r)), kAffixedTree);
  const char* cognac = "(S (NP+는/jxt (NP 나/npp)) (VP (NP+을/jco 꼬냑/ncn+\\(/sl+Cognac/f+\\)/sr) (VP 들이켰다.|들이키/pvg+였/ep+다/ef+./sf)))";
  EXPECT_EQ(serialize_tree(parse_or_throw(cognac, r)), cognac);
}

TEST(Serialize, EscapesAndFunctionTags) {
  Phrase p;
  p.label = PhraseType::NP;
  p.add_ftag(FunctionTag::PRN);
  p.children.emplace_back(Terminal{Eojeol({km("(", "sl")})});
  p.children.emplace_back(Terminal{Eojeol({km("a b+c/d|e\\", "f")})});
  const auto text = serialize_tree(p);
  EXPECT_EQ(text, "(NP-PRN \\(/sl a\\ b\\+c\\/d\\|e\\\\/f)");
  TagsetRegistry r;
  EXPECT_EQ(parse_or_throw(text, r), ConstituentNode(p));
}

TEST(TreebankReader, FiltersMalformedTrees) {
  TagsetRegistry r;
  std::istringstream in("(S (NP 나/npp))\n\n(S (NP 나/npp\n\n(S (VP 가/pvg+ㄴ다/ef))\n");
  TreebankReader reader(in, r, Tagset::kaist);
  std::vector<TreeRecord> recs;
  while (auto rec = reader.next()) recs.push_back(std::move(*rec));
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_TRUE(recs[0].tree && recs[2].tree);
  EXPECT_FALSE(recs[1].tree);
  EXPECT_EQ(recs[1].ordinal, 2u);
  EXPECT_TRUE(has_errors(recs[1].diagnostics));
  EXPECT_EQ(recs[1].diagnostics[0].where.tree, 2u);
  EXPECT_EQ(reader.kept(), 2u);
  EXPECT_EQ(reader.dropped(), 1u);
}

TEST(TreebankReader, EmptyStream) {
  TagsetRegistry r;
  std::istringstream in("");
  TreebankReader reader(in, r, Tagset::kaist);
  EXPECT_FALSE(reader.next());
  EXPECT_EQ(reader.kept(), 0u);
}

TEST(TreebankReader, MultiLineAndSeveralPerLine) {
  TagsetRegistry r;
  std::istringstream in("(S\n  (NP 나/npp)\n  (VP 가/pvg+ㄴ다/ef))\n(S (NP 너/npp)) (S (NP 그/npp))\n");
  TreebankReader reader(in, r, Tagset::kaist);
  std::size_t n = 0;
  while (auto rec = reader.next()) {
    EXPECT_TRUE(rec->tree) << (rec->diagnostics.empty() ? "" : format_diagnostic(rec->diagnostics[0]));
    ++n;
  }
  EXPECT_EQ(n, 3u);
}

TEST(TreebankReader, RequiresSRoot) {
  TagsetRegistry r;
  std::istringstream in("(NP 나/npp)\n");
  TreebankReader reader(in, r, Tagset::kaist);
  auto rec = reader.next();
  ASSERT_TRUE(rec);
  EXPECT_FALSE(rec->tree);
  EXPECT_TRUE(has_code(rec->diagnostics, "root-not-s"));
}

TEST(MorphLine, Examples) {
  TagsetRegistry r;
  auto a = parse_morph_line("나는\t나/npp+는/jxt", r, Tagset::kaist);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a.value->surface(), "나는");
  EXPECT_EQ(a.value->morphemes(), (std::vector<Morpheme>{km("나", "npp"), km("는", "jxt")}));

  auto b = parse_morph_line("들이켰다.\t들이키/pvg+였/ep+다/ef+./sf", r, Tagset::kaist);
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(b.value->morphemes().size(), 4u);
  EXPECT_NE(b.value->surface(), b.value->concatenation());

  auto c = parse_morph_line("+\t\\+/sy", r, Tagset::kaist);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.value->morphemes(), (std::vector<Morpheme>{km("+", "sy")}));
  EXPECT_EQ(format_morph_line(*c.value), "+\t\\+/sy");
}

TEST(MorphLine, Errors) {
  TagsetRegistry r;
  EXPECT_TRUE(has_code(parse_morph_line("나는 나/npp", r, Tagset::kaist).diagnostics, "missing-tab"));
  EXPECT_TRUE(has_code(parse_morph_line("나는\t", r, Tagset::kaist).diagnostics, "empty-analysis"));
  EXPECT_FALSE(parse_morph_line("나는\t나/npp+", r, Tagset::kaist).ok());
}

TEST(MorphReader, Sentences) {
  TagsetRegistry r;
  std::istringstream in(ktb::testing::read_file(ktb::testing::data_path("cognac.morph")) + "나\t나/npp\n");
  MorphReader reader(in, r, Tagset::kaist);
  auto s1 = reader.next();
  ASSERT_TRUE(s1);
  EXPECT_EQ(s1->eojeols.size(), 3u);
  EXPECT_EQ(s1->eojeols[1].surface(), "꼬냑(Cognac)을");
  auto s2 = reader.next();
  ASSERT_TRUE(s2);
  EXPECT_EQ(s2->ordinal, 2u);
  EXPECT_FALSE(reader.next());
}

namespace {

DependencyTree fused_root_only() {
  DependencyTree t;
  t.tokens.push_back(DepToken{1, Eojeol({km("들이키", "pvg"), km("였", "ep"), km("다", "ef")}, std::string("들이켰다")), 0, "root"});
  t.tokens.push_back(DepToken{2, Eojeol({km(".", "sf")}), 1, "p"});
  return t;
}

}  // namespace

TEST(Conll, WriteRow) {
  TagsetRegistry r;
  const auto text = write_conll(fused_root_only(), r);
  EXPECT_EQ(text,
            "1\t들이켰다\t들이키+였+다\tp+e+e\tpvg+ep+ef\t_\t0\troot\t_\t_\n"
            "2\t.\t.\ts\tsf\t_\t1\tp\t_\t_\n\n");
}

TEST(Conll, FixtureRowAndColumnCount) {
  TagsetRegistry r;
  const auto text = ktb::testing::read_file(ktb::testing::data_path("cognac.conll"));
  auto p = from_conll(text, r, Tagset::kaist);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p.value->size(), 8u);
  EXPECT_EQ(write_conll(*p.value, r), text);
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line) && !line.empty();)
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 9);
}

TEST(Conll, RoundTrip) {
  TagsetRegistry r;
  const auto t = fused_root_only();
  auto p = from_conll(write_conll(t, r), r, Tagset::kaist);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(*p.value, t);
}

TEST(Conll, HeadOutOfRange) {
  TagsetRegistry r;
  auto text = ktb::testing::read_file(ktb::testing::data_path("cognac.conll"));
  text.replace(text.find("\t7\ttpc"), 6, "\t9\ttpc");
  auto p = from_conll(text, r, Tagset::kaist);
  EXPECT_FALSE(p.ok());
  ASSERT_TRUE(has_code(p.diagnostics, "head-out-of-range"));
  EXPECT_NE(p.diagnostics[0].message.find("head out of range"), std::string::npos);
}

TEST(Conll, MalformedRows) {
  TagsetRegistry r;
  EXPECT_TRUE(has_code(from_conll("1\t나\t나\tn\tnpp\t_\t0\n", r, Tagset::kaist).diagnostics, "column-count"));
  EXPECT_TRUE(has_code(from_conll("2\t나\t나\tn\tnpp\t_\t0\troot\t_\t_\n", r, Tagset::kaist).diagnostics, "bad-id"));
  EXPECT_TRUE(has_code(from_conll("1\t나\t나\tn\tnpp\t_\t1\troot\t_\t_\n", r, Tagset::kaist).diagnostics, "self-loop"));
  EXPECT_TRUE(has_code(from_conll("1\t나\t나\tn\tnpp\t_\t0\tfoo\t_\t_\n", r, Tagset::kaist).diagnostics, "unknown-label"));
  EXPECT_TRUE(has_code(from_conll("1\t나\t나+는\tn\tnpp\t_\t0\troot\t_\t_\n", r, Tagset::kaist).diagnostics,
                       "misaligned-morphemes"));
}

TEST(Conll, ReaderSplitsBlocks) {
  TagsetRegistry r;
  const auto one = ktb::testing::read_file(ktb::testing::data_path("cognac.conll"));
  std::istringstream in(one + one + "\n\n");
  ConllReader reader(in, r, Tagset::kaist);
  std::size_t n = 0;
  while (auto rec = reader.next()) {
    EXPECT_TRUE(rec->tree);
    ++n;
  }
  EXPECT_EQ(n, 2u);
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("나는 abc"));
  EXPECT_FALSE(is_valid_utf8("\xff\xfe"));
  EXPECT_FALSE(is_valid_utf8("\xed\xa0\x80"));  // surrogate
}

TEST(Sniff, Formats) {
  EXPECT_EQ(sniff_format(ktb::testing::data_path("cognac.kaist")), FileFormat::brackets);
  EXPECT_EQ(sniff_format(ktb::testing::data_path("cognac.conll")), FileFormat::conll);
  EXPECT_EQ(sniff_format(ktb::testing::data_path("empty.brackets")), FileFormat::brackets);
}
