#include <gtest/gtest.h>

#include "ktb/depconv.hpp"
#include "ktb/transform.hpp"
#include "support/oracle.hpp"
#include "support/util.hpp"

using namespace ktb;
using ktb::testing::km;
using ktb::testing::parse_or_throw;

namespace {

struct Arc {
  std::size_t head;
  std::string label;
  friend bool operator==(const Arc&, const Arc&) = default;
};

std::ostream& operator<<(std::ostream& os, const Arc& a) { return os << a.head << "/" << a.label; }

std::vector<Arc> arcs(const DependencyTree& t) {
  std::vector<Arc> out;
  for (const auto& tok : t.tokens) out.push_back({tok.head, tok.label});
  return out;
}

DependencyTree convert_file(const char* name, const TagsetRegistry& r) {
  auto tree = parse_or_throw(ktb::testing::read_file(ktb::testing::data_path(name)), r);
  return to_dependency(to_penn(tree, r), r);
}

ConstituentNode leaf(std::vector<Morpheme> ms) { return Terminal{Eojeol(std::move(ms))}; }

ConstituentNode phrase(PhraseType label, std::vector<ConstituentNode> children, bool prn = false) {
  Phrase p;
  p.label = label;
  p.children = std::move(children);
  if (prn) p.add_ftag(FunctionTag::PRN);
  return p;
}

}  // namespace

TEST(ExcludedHead, Examples) {
  TagsetRegistry r;
  EXPECT_TRUE(is_excluded_head(phrase(PhraseType::AUXP, {leaf({km("보", "px")})}), r));
  EXPECT_TRUE(is_excluded_head(leaf({km("을", "jco")}), r));
  EXPECT_FALSE(is_excluded_head(leaf({km("들이키", "pvg"), km("였", "ep"), km("다", "ef")}), r));
  EXPECT_TRUE(is_excluded_head(phrase(PhraseType::IP, {leaf({km("아", "ii")})}), r));
  EXPECT_TRUE(is_excluded_head(phrase(PhraseType::NP, {leaf({km("x", "f")})}, true), r));
  EXPECT_TRUE(is_excluded_head(leaf({km(".", "sf")}), r));
}

TEST(HeadChild, Examples) {
  TagsetRegistry r;
  auto vp = phrase(PhraseType::VP, {leaf({km("먹", "pvg"), km("어", "ecx")})});
  auto auxp = phrase(PhraseType::AUXP, {leaf({km("보", "px"), km("다", "ef")})});
  auto np = phrase(PhraseType::NP, {leaf({km("꼬냑", "ncn")})});
  auto prn = phrase(PhraseType::NP, {leaf({km("(", "sl")}), leaf({km("Cognac", "f")}), leaf({km(")", "sr")})}, true);
  auto particle = leaf({km("을", "jco")});
  auto period = leaf({km(".", "sf")});

  auto check = [&](std::vector<ConstituentNode> children, std::size_t expected) {
    const auto p = phrase(PhraseType::S, std::move(children));
    EXPECT_EQ(head_child_index(p.phrase(), r), expected);
    EXPECT_EQ(oracle::head_child(p.phrase()), expected);
  };
  check({vp, auxp}, 0);
  check({auxp}, 0);
  check({np, prn, particle}, 0);
  check({np, vp, period}, 1);
}

TEST(Convert, Cognac) {
  TagsetRegistry r;
  const auto t = convert_file("cognac.kaist", r);
  ASSERT_EQ(t.size(), 8u);
  const std::vector<Arc> expected = {{7, "tpc"}, {7, "obj"}, {4, "p"},    {2, "prn"},
                                     {4, "p"},   {2, "ejx"}, {0, "root"}, {7, "p"}};
  EXPECT_EQ(arcs(t), expected);
}

TEST(Convert, CognacMatchesRecursiveOracle) {
  TagsetRegistry r;
  auto penn = to_penn(parse_or_throw(ktb::testing::read_file(ktb::testing::data_path("cognac.kaist")), r), r);
  const auto t = to_dependency(penn, r);
  const auto heads = oracle::heads(penn);
  ASSERT_EQ(heads.size(), t.size());
  for (std::size_t i = 0; i < heads.size(); ++i) EXPECT_EQ(t.tokens[i].head, heads[i]) << i;
}

TEST(Convert, Coordination) {
  TagsetRegistry r;
  const auto t = convert_file("coordination.kaist", r);
  ASSERT_EQ(t.size(), 5u);
  const std::vector<Arc> expected = {{3, "conj"}, {3, "cc"}, {5, "obj"}, {5, "conj"}, {0, "root"}};
  EXPECT_EQ(arcs(t), expected);
}

TEST(Convert, SingleToken) {
  TagsetRegistry r;
  auto t = to_dependency(parse_or_throw("(S 가/pvg+다/ef)", r), r);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.tokens[0].head, 0u);
  EXPECT_EQ(t.tokens[0].label, "root");
}

TEST(Convert, EmptyPhraseThrows) {
  TagsetRegistry r;
  Phrase empty;
  EXPECT_THROW(to_dependency(empty, r), std::invalid_argument);
}

TEST(Labels, Cascade) {
  TagsetRegistry r;
  auto label_of = [&](const char* tree, std::size_t token) {
    auto t = to_dependency(to_penn(parse_or_throw(tree, r), r), r);
    return t.tokens.at(token - 1).label;
  };
  EXPECT_EQ(label_of("(S (NP 나/npp+는/jxt) (VP 가/pvg+ㄴ다/ef))", 1), "tpc");
  EXPECT_EQ(label_of("(S (NP 나/npp+가/jcs) (VP 가/pvg+ㄴ다/ef))", 1), "sbj");
  EXPECT_EQ(label_of("(S (NP (NP 버스/ncn) (NP 정류장/ncn)) (VP 가/pvg+ㄴ다/ef))", 1), "nmod");
  EXPECT_EQ(label_of("(S (ADVP 빨리/mag) (VP 가/pvg+ㄴ다/ef))", 1), "vmod");
  EXPECT_EQ(label_of("(S (NP (NP 나/npp+의/jcm) (NP 책/ncn)) (VP 있/paa+다/ef))", 1), "adn");
  EXPECT_EQ(label_of("(S (NP 서울/nq+에/jca) (VP 가/pvg+ㄴ다/ef))", 1), "adv");
  EXPECT_EQ(label_of("(S (VP 오/pvg+면/ecs) (VP 가/pvg+ㄴ다/ef))", 1), "sub");
  EXPECT_EQ(label_of("(S (VP 먹/pvg+어/ecx) (AUXP 보/px+았/ep+다/ef))", 2), "aux");
  EXPECT_EQ(label_of("(S (IP 아/ii) (VP 가/pvg+ㄴ다/ef))", 1), "intj");
  EXPECT_EQ(label_of("(S (VP (ADVP 매우/mag) (ADJP 예쁘/paa+ㄴ/etm)) (NP 꽃/ncn+이/jp+다/ef))", 1), "amod");
}

TEST(Labels, DonatedCaseReachesHead) {
  TagsetRegistry r;
  auto t = to_dependency(to_penn(parse_or_throw("(S (NP+을/jco (NP 책/ncn+./sf)) (VP 읽/pvg+다/ef))", r), r), r);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t.tokens[0].label, "obj");
  EXPECT_EQ(t.tokens[2].label, "ejx");
}

TEST(Convert, SejongWithShippedConfig) {
  auto r = TagsetRegistry::from_config_file(std::string(KTB_SOURCE_DIR) + "/config/sejong.conf");
  auto tree = parse_or_throw("(S (NP 나/NP+는/JX) (VP (NP 책/NNG+을/JKO) (VP 읽/VV+는다/EF+./SF)))", r, Tagset::sejong);
  const auto t = to_dependency(to_penn(tree, r), r);
  const std::vector<Arc> expected = {{3, "tpc"}, {3, "obj"}, {0, "root"}, {3, "p"}};
  EXPECT_EQ(arcs(t), expected);
  // The KAIST defaults keep working under the same config.
  EXPECT_EQ(arcs(convert_file("coordination.kaist", r)),
            (std::vector<Arc>{{3, "conj"}, {3, "cc"}, {5, "obj"}, {5, "conj"}, {0, "root"}}));
}
