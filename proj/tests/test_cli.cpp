#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace bibnov::test;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(BIBNOV_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(run("synth --docs 300 --entities 12 --years 2000:2008 --seed 4 --out-dir " + dir.path().string()), 0);
    corpus = dir.file("synth.jsonl");
  }
  TempDir dir;
  std::string corpus;
};

}  // namespace

TEST_F(Cli, PipelineWritesScoresAndManifests) {
  const std::string out = dir.file("out");
  EXPECT_EQ(run("ingest --corpus " + corpus + " --out-dir " + out), 0);
  EXPECT_EQ(run("novelty lee --on journals --year 2004 --corpus " + corpus + " --out-dir " + out), 0);
  EXPECT_EQ(run("novelty uzzi --on keywords --year 2004 --samples 5 --corpus " + corpus + " --out-dir " + out), 0);
  EXPECT_EQ(run("novelty foster --year 2004 --corpus " + corpus + " --out-dir " + out), 0);
  EXPECT_EQ(run("novelty wang --year 2004 --b 2 --f 2 --corpus " + corpus + " --out-dir " + out), 0);
  EXPECT_EQ(run("disruption --year 2004 --measures di1,dinok1,depth --corpus " + corpus + " --out-dir " + out), 0);
  EXPECT_EQ(run("cooc build --on keywords --years 2001:2003 --corpus " + corpus + " --out-dir " + out), 0);
  for (const char* f : {"lee_journals_2004.jsonl", "uzzi_keywords_2004.jsonl", "foster_journals_2004.jsonl",
                        "wang_journals_2004.jsonl", "disruption_citations_2004.jsonl", "cooc_keywords_2001_2003.tsv"}) {
    const auto path = out + "/" + f;
    EXPECT_FALSE(slurp(path).empty()) << f;
    EXPECT_NE(slurp(path + ".manifest.json").find("\"fingerprint\""), std::string::npos) << f;
  }
  const auto lee = out + "/lee_journals_2004.jsonl";
  EXPECT_EQ(run("report trends " + lee + " --out-dir " + out), 0);
  EXPECT_EQ(run("report correlate " + lee + " " + out + "/foster_journals_2004.jsonl --out-dir " + out), 0);
  EXPECT_NE(slurp(out + "/correlation.csv").find("pearson"), std::string::npos);
  EXPECT_EQ(run("verify --indicators lee,foster,disruption --year 2004 --corpus " + corpus), 0);
}

TEST_F(Cli, ExitCodes) {
  const std::string out = dir.file("out");
  EXPECT_EQ(run("novelty lee --year 2004 --corpus " + dir.file("missing.jsonl") + " --out-dir " + out), 1);
  EXPECT_EQ(run("novelty lee --corpus " + corpus), 1);  // --year required
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("report doc --doc nobody " + out + "/none.jsonl"), 1);
  // Shibayama skips documents without two resolvable references.
  std::ofstream(dir.file("extra.jsonl")) << slurp(corpus) << R"({"id":"zz","year":2004,"references":[{"source":"x"}]})"
                                         << "\n";
  EXPECT_EQ(run("novelty shibayama --year 2004 --embeddings " + dir.file("synth.embeddings.jsonl") + " --corpus " +
                dir.file("extra.jsonl") + " --out-dir " + out),
            2);
  std::ofstream(dir.file("noisy.jsonl")) << slurp(corpus) << "not a record\n";
  EXPECT_EQ(run("novelty lee --year 2004 --no-cache --corpus " + dir.file("noisy.jsonl") + " --out-dir " + out), 2);
}

TEST_F(Cli, ByteStableAcrossRunsAndThreads) {
  for (const char* cmd : {"novelty uzzi --year 2005 --samples 20 --seed 11", "novelty foster --on keywords --year 2005",
                          "disruption"}) {
    std::string payloads[3];
    const char* threads[] = {"1", "1", "8"};
    std::string file;
    for (int k = 0; k < 3; ++k) {
      const auto out = dir.file("run" + std::to_string(k));
      ASSERT_EQ(run(std::string(cmd) + " --threads " + threads[k] + " --corpus " + corpus + " --out-dir " + out), 0);
      for (const auto& e : std::filesystem::directory_iterator(out))
        if (e.path().extension() == ".jsonl") file = e.path().filename().string();
      payloads[k] = slurp(out + "/" + file);
      std::filesystem::remove_all(out);
    }
    EXPECT_FALSE(payloads[0].empty()) << cmd;
    EXPECT_EQ(payloads[0], payloads[1]) << cmd;
    EXPECT_EQ(payloads[0], payloads[2]) << cmd;
  }
}
