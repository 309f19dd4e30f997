#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ktb/cli.hpp"
#include "support/util.hpp"

namespace fs = std::filesystem;
using ktb::testing::data_path;
using ktb::testing::read_file;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ktb_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return ktb::cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, ConvertCognac) {
  ASSERT_EQ(run({"convert", "--in", data_path("cognac.kaist"), "--out", path("out.conll"), "--tagset", "kaist"}), 0)
      << err_.str();
  EXPECT_EQ(read_file(path("out.conll")), read_file(data_path("cognac.conll")));
  EXPECT_EQ(run({"validate", "--in", path("out.conll")}), 0);
  EXPECT_NE(out_.str().find("errors\t0"), std::string::npos);
}

TEST_F(Cli, StatsOnEmptyFile) {
  EXPECT_EQ(run({"stats", "--in", data_path("empty.brackets"), "--report-format", "tsv"}), 0);
  EXPECT_EQ(out_.str(), "name\ttrees\ttokens\tdropped\n" + data_path("empty.brackets") + "\t0\t0\t0\ntotal\t0\t0\t0\n");
}

TEST_F(Cli, TransformAndWorkersAgree) {
  std::string corpus;
  for (int i = 0; i < 40; ++i) corpus += read_file(data_path(i % 3 ? "coordination.kaist" : "cognac.kaist"));
  write("c.kaist", corpus);
  ASSERT_EQ(run({"convert", "--in", path("c.kaist")}), 0);
  const auto single = out_.str();
  ASSERT_EQ(run({"convert", "--in", path("c.kaist"), "--workers", "4"}), 0);
  EXPECT_EQ(out_.str(), single);
  ASSERT_EQ(run({"transform", "--in", path("c.kaist")}), 0);
  const auto text = out_.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 80);
}

TEST_F(Cli, ErrorDiagnosticsGiveExitOne) {
  write("bad.kaist", read_file(data_path("cognac.kaist")) + "(S (NP 나/npp\n\n" + read_file(data_path("coordination.kaist")));
  EXPECT_EQ(run({"convert", "--in", path("bad.kaist")}), 1);
  EXPECT_NE(err_.str().find("error\t2:"), std::string::npos) << err_.str();
  const auto text = out_.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 8 + 1 + 5 + 1);
}

TEST_F(Cli, UsageAndIoFailures) {
  EXPECT_EQ(run({"convert"}), 2);
  EXPECT_EQ(run({"frobnicate", "--in", data_path("cognac.kaist")}), 2);
  EXPECT_EQ(run({"convert", "--in", path("missing.kaist")}), 2);
  EXPECT_EQ(run({"convert", "--in", data_path("cognac.kaist"), "--strict", "--lenient"}), 2);
  EXPECT_EQ(run({"convert", "--in", data_path("cognac.kaist"), "--tagset", "penn"}), 2);
  EXPECT_EQ(run({"split", "--in", data_path("cognac.kaist"), "--out", path("s"), "--ratios", "1,0,0", "--manifest",
                 data_path("cognac.kaist")}),
            2);
  EXPECT_EQ(run({"split", "--in", data_path("cognac.kaist"), "--out", path("s"), "--ratios", "0.5,0.6"}), 2);
  write("bad.cfg", "nonsense = 1\n");
  EXPECT_EQ(run({"convert", "--in", data_path("cognac.kaist"), "--config", path("bad.cfg")}), 2);
}

TEST_F(Cli, SplitByRatiosAndManifest) {
  std::string corpus;
  for (int i = 0; i < 10; ++i) corpus += read_file(data_path("coordination.kaist"));
  write("ten.kaist", corpus);
  ASSERT_EQ(run({"split", "--in", path("ten.kaist"), "--out", path("ten"), "--ratios", ".8,.1,.1"}), 0) << err_.str();
  EXPECT_EQ(out_.str(), "train\t8\ndev\t1\ntest\t1\n");
  EXPECT_EQ(read_file(path("ten.dev")), read_file(data_path("coordination.kaist")) + "\n");

  write("m.txt", "1-9 train\n10 test\n");
  ASSERT_EQ(run({"split", "--in", path("ten.kaist"), "--out", path("m"), "--manifest", path("m.txt")}), 0);
  EXPECT_EQ(out_.str(), "train\t9\ndev\t0\ntest\t1\n");
  write("partial.txt", "1-5 train\n");
  EXPECT_EQ(run({"split", "--in", path("ten.kaist"), "--out", path("p"), "--manifest", path("partial.txt")}), 2);
}

TEST_F(Cli, StatsWithManifest) {
  write("two.kaist", read_file(data_path("cognac.kaist")) + read_file(data_path("coordination.kaist")));
  write("m.txt", "1 train\n2 dev\n");
  ASSERT_EQ(run({"stats", "--in", path("two.kaist"), "--manifest", path("m.txt"), "--report-format", "tsv"}), 0)
      << err_.str();
  EXPECT_NE(out_.str().find(":train\t1\t8\t0\n"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find(":dev\t1\t5\t0\n"), std::string::npos);
}

TEST_F(Cli, SubstituteAndAgree) {
  ASSERT_EQ(run({"subst", "--in", data_path("cognac.conll"), "--morph", data_path("cognac.morph")}), 0) << err_.str();
  EXPECT_EQ(out_.str(), read_file(data_path("cognac.conll")));

  write("auto.morph", "나는\t나/NP+는/JX\n꼬냑(Cognac)을\t꼬냑/NNG+(/SS+Cognac/SL+)/SS+을/JKO\n"
                      "들이켰다.\t들이켜/VV+었/EP+다/EF+./SF\n");
  ASSERT_EQ(run({"subst", "--in", data_path("cognac.conll"), "--morph", path("auto.morph"), "--tagset", "sejong"}), 0)
      << err_.str();
  EXPECT_EQ(out_.str().substr(0, out_.str().find('\n')), "1\t나는\t나+는\tN+J\tNP+JX\t_\t7\ttpc\t_\t_");

  ASSERT_EQ(run({"agree", "--gold", data_path("cognac.morph"), "--auto", data_path("cognac.morph"), "--report-format",
                 "tsv"}),
            0);
  EXPECT_NE(out_.str().find("\n3\t3\t1.0000\t"), std::string::npos) << out_.str();
}

TEST_F(Cli, DeterministicOutput) {
  ASSERT_EQ(run({"convert", "--in", data_path("coordination.kaist"), "--out", path("a.conll")}), 0);
  ASSERT_EQ(run({"convert", "--in", data_path("coordination.kaist"), "--out", path("b.conll")}), 0);
  EXPECT_EQ(read_file(path("a.conll")), read_file(path("b.conll")));
}
