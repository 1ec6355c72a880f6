#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "softspace/config.hpp"
#include "softspace/error.hpp"
#include "softspace/pipeline.hpp"
#include "softspace/rng.hpp"

namespace fs = std::filesystem;
using namespace softspace;

namespace {

struct CliResult {
  int code;
  std::string err;
};

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("softspace_ut_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  std::string str(const std::string& sub = "") const { return (sub.empty() ? path_ : path_ / sub).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

CliResult cli(const std::string& args, const TempDir& dir) {
  const std::string errfile = dir.str("stderr.txt");
  const std::string cmd = std::string(SOFTSPACE_CLI) + " " + args + " > /dev/null 2> " + errfile;
  const int status = std::system(cmd.c_str());
  std::ifstream in(errfile);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(errfile);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> artifacts(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind("manifest_", 0) == 0 || name == "config.resolved") continue;
    out[name] = slurp(e.path());
  }
  return out;
}

}  // namespace

TEST(Config, SaveLoadRoundTrip) {
  PipelineConfig c;
  c.records = "in/records.csv";
  c.aliases = "a b.csv";
  c.years = {1999, 2020};
  c.percentile = 0.8;
  c.threshold = 1.0 / 3.0;
  c.inclusive = true;
  c.level = Level::Group;
  c.alpha = 0.1;
  c.mst = false;
  c.seed = 18446744073709551557ULL;
  c.multiplicity = 7;
  c.synth_tail = 2.25;
  std::istringstream in(c.save());
  EXPECT_EQ(PipelineConfig::parse(in, "mem"), c);
  std::istringstream defaults(PipelineConfig{}.save());
  EXPECT_EQ(PipelineConfig::parse(defaults, "mem"), PipelineConfig{});
}

TEST(Config, RandomRoundTrips) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    PipelineConfig c;
    c.percentile = rng.uniform();
    c.threshold = 0.01 + 3 * rng.uniform();
    c.alpha = rng.uniform();
    c.merge_fraction = rng.uniform();
    c.synth_noise = rng.uniform();
    c.seed = rng.next();
    c.window_length = 1 + static_cast<int>(rng.below(9));
    std::istringstream in(c.save());
    ASSERT_EQ(PipelineConfig::parse(in, "mem"), c);
  }
}

TEST(Config, DigestIgnoresPathsOnly) {
  PipelineConfig a, b;
  b.output_dir = "elsewhere";
  b.records = "x.csv";
  EXPECT_EQ(a.digest(), b.digest());
  b.seed = 43;
  EXPECT_NE(a.digest(), b.digest());
  EXPECT_EQ(a.digest().size(), 64u);
}

TEST(Config, ParseErrors) {
  std::istringstream unknown("colour = blue\n");
  EXPECT_THROW(PipelineConfig::parse(unknown, "mem"), ConfigError);
  std::istringstream bad("seed = many\n");
  EXPECT_THROW(PipelineConfig::parse(bad, "mem"), ConfigError);
  std::istringstream no_eq("seed 4\n");
  EXPECT_THROW(PipelineConfig::parse(no_eq, "mem"), ConfigError);
  std::istringstream comments("# note\n\n  seed = 4  \n");
  EXPECT_EQ(PipelineConfig::parse(comments, "mem").seed, 4u);
  PipelineConfig c;
  c.threshold = 0;
  EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, ThresholdZeroIsUsageError) {
  TempDir d;
  const auto r = cli("rca --threshold 0 -o " + d.str("out"), d);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("softspace: error: code=2 kind=argument stage=rca message=", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, MissingInputIsDataErrorWithSingleLine) {
  TempDir d;
  const auto r = cli("ingest -r " + d.str("nope.csv") + " -o " + d.str("out"), d);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("kind=data stage=ingest"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  const auto r2 = cli("rca -o " + d.str("out"), d);
  EXPECT_EQ(r2.code, 3);
}

TEST(Cli, BadFlagsAndConfigAreUsageErrors) {
  TempDir d;
  EXPECT_EQ(cli("all --no-such-flag", d).code, 2);
  EXPECT_EQ(cli("", d).code, 2);
  EXPECT_EQ(cli("ingest --config " + d.str("missing.conf"), d).code, 2);
  EXPECT_EQ(cli("ingest --set colour=blue", d).code, 2);
  EXPECT_EQ(cli("ingest --level county", d).code, 2);
  EXPECT_EQ(cli("--help", d).code, 0);
}

TEST(Cli, FlagsOverrideConfigFile) {
  TempDir d;
  {
    std::ofstream conf(d.path() / "run.conf");
    conf << "threshold = 2\nseed = 9\nsynth_papers = 50\n";
  }
  ASSERT_EQ(cli("synth --config " + d.str("run.conf") + " --seed 11 -o " + d.str("s"), d).code, 0);
  const auto resolved = PipelineConfig::load(d.str("s/config.resolved"));
  EXPECT_EQ(resolved.seed, 11u);
  EXPECT_EQ(resolved.threshold, 2.0);
  EXPECT_EQ(resolved.synth_papers, 50);
}

TEST(Pipeline, StageByStageEqualsAllAndOutputsAreLabelled) {
  TempDir d;
  ASSERT_EQ(cli("synth --synth-blocks 3 -o " + d.str("s"), d).code, 0);
  const std::string common =
      " --percentile 0.5 --graphml -r " + d.str("s/corpus.csv") + " --aliases " + d.str("s/aliases.csv");
  ASSERT_EQ(cli("all" + common + " -o " + d.str("a"), d).code, 0);
  for (const auto& stage : pipeline_stages()) ASSERT_EQ(cli(stage + common + " -o " + d.str("b"), d).code, 0) << stage;
  const auto a = artifacts(d.path() / "a"), b = artifacts(d.path() / "b");
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains("proximity.graphml"));

  const auto manifest = nlohmann::json::parse(slurp(d.path() / "a" / "manifest_all.json"));
  const std::string digest = manifest.at("config_digest");
  for (const auto& [name, text] : a) {
    if (name.ends_with(".csv")) {
      EXPECT_EQ(text.rfind("# softspace ", 0), 0u) << name;
      EXPECT_NE(text.substr(0, text.find('\n')).find("config=" + digest.substr(0, 16)), std::string::npos) << name;
    } else if (name.ends_with(".json")) {
      const auto j = nlohmann::json::parse(text);
      EXPECT_EQ(j.at("config_digest"), digest) << name;
      EXPECT_TRUE(j.contains("stage")) << name;
    }
    EXPECT_EQ(manifest.at("outputs").at(name), sha256_hex(text)) << name;
  }
  for (const char* key : {"inputs", "config", "version", "wall_time_seconds", "timestamp"})
    EXPECT_TRUE(manifest.contains(key)) << key;
}

TEST(Pipeline, FailureRemovesThisRunsOutputs) {
  TempDir d;
  ASSERT_EQ(cli("synth -o " + d.str("s"), d).code, 0);
  const auto r = cli("all --percentile 0.5 --xmin 100000 -r " + d.str("s/corpus.csv") + " -o " + d.str("out"), d);
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_NE(r.err.find("stage=powerlaw"), std::string::npos) << r.err;
  std::size_t left = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(d.path() / "out")) ++left;
  EXPECT_EQ(left, 0u);
}

TEST(Pipeline, EmptyFilterIsDataError) {
  TempDir d;
  {
    std::ofstream rec(d.path() / "r.csv");
    rec << "paper_id,software,label,doi,year,discipline_codes\n"
        << "p1,A,software,10.1/a,2010,31\np2,B,software,10.1/b,2010,49\n";
  }
  const auto r = cli("ingest -r " + d.str("r.csv") + " -o " + d.str("o"), d);
  EXPECT_EQ(r.code, 3) << r.err;
}
