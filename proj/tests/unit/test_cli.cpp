#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "redweyl/error.hpp"
#include "redweyl/experiment.hpp"

using namespace redweyl;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kDisk = R"({
  "group": {"kind": "planar_so2", "n": 2},
  "domain": {"kind": "disk", "radius": 1.0},
  "operator": {"symbol": "euclidean_power", "order": 2},
  "characters": [0, 1],
  "lambda_grid": {"min": 1e3, "max": 1e5, "points": 20, "spacing": "log"},
  "mc": {"samples": 20000, "seed": 3},
  "output": {"prefix": "t"}
})";

class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() / ("redweyl_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

#ifdef REDWEYL_CLI_PATH
int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = std::string(REDWEYL_CLI_PATH) + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

std::string with(const char* base, const std::string& pointer, const json& value) {
  json j = json::parse(base);
  j[json::json_pointer(pointer)] = value;
  return j.dump();
}

}  // namespace

TEST(Config, ParsesBundledDiskConfig) {
  const auto c = parse_config(kDisk);
  EXPECT_EQ(c.group.kind, "planar_so2");
  EXPECT_EQ(c.characters.size(), 2u);
  EXPECT_DOUBLE_EQ(c.lambda.max, 1e5);
  EXPECT_EQ(c.mc.seed, 3u);
  EXPECT_EQ(make_action(c).dimension(), 1);
}

TEST(Config, RejectsUnknownKeysAnywhere) {
  EXPECT_THROW(parse_config(with(kDisk, "/colour", "blue")), ConfigError);
  EXPECT_THROW(parse_config(with(kDisk, "/domain/radious", 1.0)), ConfigError);
  EXPECT_THROW(parse_config(with(kDisk, "/mc/sample", 10)), ConfigError);
}

TEST(Config, RejectsMissingSectionsAndBadValues) {
  json j = json::parse(kDisk);
  j.erase("operator");
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  EXPECT_THROW(parse_config(with(kDisk, "/group/kind", "torus")), ConfigError);
  EXPECT_THROW(parse_config(with(kDisk, "/lambda_grid/spacing", "cubic")), ConfigError);
  EXPECT_THROW(parse_config(with(kDisk, "/mc/samples", "many")), ConfigError);
  EXPECT_THROW(parse_config("{ not json"), ConfigError);
}

TEST(Config, HashIgnoresFormattingButNotContent) {
  const auto a = parse_config(kDisk);
  const auto b = parse_config(json::parse(kDisk).dump());  // compact, same content
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  const auto c = parse_config(with(kDisk, "/mc/seed", 4));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(canonical_config(a), canonical_config(b));
}

TEST(Runs, ReportsAreSelfDescribing) {
  const auto c = parse_config(kDisk);
  const auto out = run_volume(c);
  EXPECT_EQ(out.extension, "json");
  const json r = json::parse(out.report);
  EXPECT_EQ(r["config_hash"], config_hash(c));
  EXPECT_EQ(r["seed"], 3);
  EXPECT_TRUE(r["versions"].contains("reduced_volume"));
  EXPECT_TRUE(r["reduced_volume"].contains("stderr"));
  EXPECT_EQ(r["reduced_volume"]["n_samples"], 20000);
}

TEST(Runs, CountIsRfc4180WithSidecar) {
  const auto out = run_count(parse_config(kDisk));
  EXPECT_EQ(out.extension, "csv");
  const auto eol = out.report.find("\r\n");
  ASSERT_NE(eol, std::string::npos);
  EXPECT_EQ(out.report.substr(0, eol).find(';'), std::string::npos);
  ASSERT_EQ(out.files.size(), 1u);
  EXPECT_EQ(out.files[0].first, "t_count.meta.json");
  EXPECT_TRUE(json::parse(out.files[0].second).contains("config_hash"));
}

TEST(Runs, CompareProducesVerdictsAndPlotData) {
  auto c = parse_config(with(kDisk, "/lambda_grid/max", 1e6));
  const auto out = run_compare(c);
  const json r = json::parse(out.report);
  ASSERT_EQ(r["comparisons"].size(), 2u);
  for (const auto& cmp : r["comparisons"]) {
    EXPECT_TRUE(cmp.contains("predicted"));
    EXPECT_TRUE(cmp["fitted"].contains("window"));
    EXPECT_TRUE(cmp["rel_err"].contains("coefficient"));
  }
  EXPECT_EQ(out.files.size(), 4u);
  EXPECT_EQ(out.files[0].first, "t_0_counts.dat");
}

#ifdef REDWEYL_CLI_PATH

TEST(Cli, VolumeIsByteIdenticalAcrossRuns) {
  Scratch s;
  const auto cfg = s.write("disk.json", kDisk);
  const auto d1 = s.dir() / "a", d2 = s.dir() / "b";
  ASSERT_EQ(run_cli("volume " + cfg.string() + " --out-dir " + d1.string(), s.dir() / "o1"), 0);
  ASSERT_EQ(run_cli("volume " + cfg.string() + " --out-dir " + d2.string(), s.dir() / "o2"), 0);
  const std::string r1 = slurp(d1 / "t_volume.json");
  EXPECT_FALSE(r1.empty());
  EXPECT_EQ(r1, slurp(d2 / "t_volume.json"));
  EXPECT_EQ(slurp(s.dir() / "o1"), slurp(s.dir() / "o2"));
}

TEST(Cli, SeedFlagOverridesConfig) {
  Scratch s;
  const auto cfg = s.write("disk.json", kDisk);
  ASSERT_EQ(run_cli("volume " + cfg.string() + " --seed 99", s.dir() / "o"), 0);
  const json r = json::parse(slurp(s.dir() / "o"));
  EXPECT_EQ(r["seed"], 99);
  EXPECT_EQ(r["config_hash"], config_hash(parse_config(with(kDisk, "/mc/seed", 99))));
}

TEST(Cli, ExitCodesPerErrorClass) {
  Scratch s;
  EXPECT_EQ(run_cli("predict " + std::string(REDWEYL_CONFIG_DIR) + "/noninvariant_quadratic.json", s.dir() / "o"), 3);
  EXPECT_EQ(run_cli("predict " + s.write("bad.json", "{ nope").string(), s.dir() / "o"), 2);
  EXPECT_EQ(run_cli("predict " + s.write("unk.json", with(kDisk, "/extra", 1)).string(), s.dir() / "o"), 2);
  EXPECT_EQ(run_cli("predict " + (s.dir() / "missing.json").string(), s.dir() / "o"), 2);
  EXPECT_EQ(run_cli("frobnicate " + s.write("ok.json", kDisk).string(), s.dir() / "o"), 2);
  // A lambda window with almost no eigenvalues leaves nothing to fit.
  const auto sparse = with(kDisk, "/lambda_grid", json{{"min", 1.0}, {"max", 50.0}, {"points", 10}});
  EXPECT_EQ(run_cli("compare " + s.write("sparse.json", sparse).string(), s.dir() / "o"), 4);
  EXPECT_EQ(run_cli("predict " + s.write("ok2.json", kDisk).string(), s.dir() / "o"), 0);
}

TEST(Cli, CharactersTableForFiniteGroup) {
  Scratch s;
  const auto cfg = s.write("c4.json", R"({
    "group": {"kind": "cyclic", "n": 2, "order": 4},
    "domain": {"kind": "box", "half_widths": [1, 1]},
    "operator": {"symbol": "euclidean_power", "order": 2}
  })");
  ASSERT_EQ(run_cli("characters " + cfg.string() + " --out-dir " + s.dir().string(), s.dir() / "o"), 0);
  EXPECT_TRUE(fs::exists(s.dir() / "redweyl_characters.csv"));
  EXPECT_TRUE(fs::exists(s.dir() / "redweyl_characters.meta.json"));
}

#endif
