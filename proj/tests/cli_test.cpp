#include "cli.hpp"
#include "fixtures.hpp"
#include "stylemark/arena.hpp"
#include "stylemark/io.hpp"
#include "stylemark/report.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using namespace stylemark;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "stylemark");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("stylemark_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& rel) const { return (dir / rel).string(); }
};

void write(const std::string& path, const std::string& content) {
  fs::create_directories(fs::path(path).parent_path());
  write_file_atomic(path, content);
}

// Short names stand for the trigram that repeats the action `name` three times.
std::string fp_json(const std::vector<std::pair<std::string, std::int64_t>>& counts) {
  std::vector<std::pair<std::string, std::int64_t>> keyed;
  for (const auto& [name, c] : counts) {
    const auto a = "Stand/Resting/" + name;
    keyed.emplace_back(a + "|" + a + "|" + a, c);
  }
  return fingerprint_to_json(test_util::from_counts(keyed)).dump(2);
}

// Every label is "<player>@<n>"; within a player the six pairs carry the given scores,
// across players 0.1.
std::string consistency_matrix_csv() {
  SimilarityMatrix m;
  const auto& rows = fixtures::consistency_rows();
  for (const auto& r : rows) {
    for (int k = 0; k < 4; ++k) m.labels.push_back(r.player + "@" + std::to_string(k));
  }
  m.values.assign(m.size() * m.size(), 0.1);
  for (std::size_t p = 0; p < rows.size(); ++p) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      m.at(4 * p + i, 4 * p + i) = 1.0;
      for (std::size_t j = i + 1; j < 4; ++j, ++s) {
        m.at(4 * p + i, 4 * p + j) = m.at(4 * p + j, 4 * p + i) = rows[p].scores[s];
      }
    }
  }
  return matrix_to_csv(m);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits 0 on every subcommand and lists its flags") {
  CHECK(run({"--help"}).code == 0);
  for (std::string sub : {"simulate", "tournament", "fingerprint", "compare", "matrix", "report", "identify"}) {
    CAPTURE(sub);
    const auto r = run({sub, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--seed") != std::string::npos);
    CHECK(r.out.find("--jobs") != std::string::npos);
  }
  CHECK(run({"report", "--help"}).out.find("--groups") != std::string::npos);
  CHECK(run({"simulate", "--help"}).out.find("--preset-file") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"dance"}).code == 2);
  CHECK(run({"simulate", "--matches", "zero"}).code == 2);
  CHECK(run({"--mode", "sometimes", "compare", "a", "b"}).code == 2);
  CHECK(run({"--format", "png", "matrix", "x"}).code == 2);
}

TEST_CASE("simulate") {
  Scratch tmp("simulate");
  SUBCASE("one pair, one match") {
    auto r = run({"simulate", "--presets", "normal,hard", "--matches", "1", "--seed", "7", "--out", tmp / "a"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("1 pairs, 1 matches") == 0);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(tmp.dir / "a")) files.push_back(e.path().filename().string());
    std::sort(files.begin(), files.end());
    CHECK(files == std::vector<std::string>{"manifest.json", "normal-vs-hard_01.jsonl"});

    run({"simulate", "--presets", "normal,hard", "--matches", "1", "--seed", "7", "--out", tmp / "b"});
    for (const auto& f : files) {
      CHECK(fnv1a64(read_file(tmp.dir / "a" / f)) == fnv1a64(read_file(tmp.dir / "b" / f)));
    }
  }
  SUBCASE("unknown preset") {
    auto r = run({"simulate", "--presets", "normal,godlike", "--out", tmp / "x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown preset \"godlike\"") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.dir / "x"));
  }
  SUBCASE("unwritable output directory") {
    write(tmp / "blocker", "not a directory");
    CHECK(run({"simulate", "--presets", "normal,hard", "--matches", "1", "--out", tmp / "blocker/sub"}).code == 1);
  }
  SUBCASE("combat config from the environment and the flag") {
    write(tmp / "bad.json", R"({"schema_version":1,"walk_forward_speed":-1})");
    setenv("STYLEMARK_CONFIG", (tmp / "bad.json").c_str(), 1);
    CHECK(run({"simulate", "--presets", "normal,hard", "--matches", "1", "--out", tmp / "e"}).code == 2);
    write(tmp / "ok.json", tuning_to_json(arena::CombatTuning{}).dump());
    CHECK(run({"simulate", "--presets", "normal,hard", "--matches", "1", "--config", tmp / "ok.json", "--out",
               tmp / "f"})
              .code == 0);
    unsetenv("STYLEMARK_CONFIG");
    CHECK(run({"simulate", "--presets", "normal,hard", "--matches", "1", "--config", tmp / "missing.json",
               "--out", tmp / "g"})
              .code == 1);
  }
  SUBCASE("preset file") {
    write(tmp / "presets.json",
          R"({"presets":[{"name":"calm","time_between_decisions":0.5,"time_between_actions":0.1,)"
          R"("rule_compliance":1,"aggressiveness":0,"combo_efficiency":0},)"
          R"({"name":"wild","time_between_decisions":0,"time_between_actions":0,)"
          R"("rule_compliance":0,"aggressiveness":1,"combo_efficiency":1}]})");
    auto r = run({"simulate", "--preset-file", tmp / "presets.json", "--matches", "1", "--out", tmp / "p"});
    CHECK(r.code == 0);
    CHECK(fs::exists(tmp.dir / "p" / "calm-vs-wild_01.jsonl"));
  }
}

TEST_CASE("fingerprint") {
  Scratch tmp("fingerprint");
  REQUIRE(run({"simulate", "--presets", "easy,hard", "--matches", "10", "--out", tmp / "rec"}).code == 0);
  fs::remove(tmp.dir / "rec" / "manifest.json");
  SUBCASE("one pair gives one opponent profile and one generalized profile per player") {
    auto r = run({"fingerprint", tmp / "rec", "--out", tmp / "fp"});
    REQUIRE(r.code == 0);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(tmp.dir / "fp")) files.push_back(e.path().filename().string());
    std::sort(files.begin(), files.end());
    CHECK(files == std::vector<std::string>{"easy.json", "easy@hard.json", "hard.json", "hard@easy.json"});
    const auto j = nlohmann::json::parse(read_file(tmp.dir / "fp" / "easy@hard.json"));
    CHECK(j["match_count"] == 10);
    CHECK(j["mode"] == "dedup");
    CHECK(nlohmann::json::parse(read_file(tmp.dir / "fp" / "easy.json"))["context"] == "generalized");
  }
  SUBCASE("per-frame mode is recorded") {
    REQUIRE(run({"--mode", "per-frame", "fingerprint", tmp / "rec", "--player", "hard", "--out", tmp / "pf"}).code == 0);
    CHECK(nlohmann::json::parse(read_file(tmp.dir / "pf" / "hard.json"))["mode"] == "per-frame");
    CHECK_FALSE(fs::exists(tmp.dir / "pf" / "easy.json"));
  }
  SUBCASE("unknown player") {
    auto r = run({"fingerprint", tmp / "rec", "--player", "ghost", "--out", tmp / "x"});
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(tmp.dir / "x"));
  }
  SUBCASE("a corrupted line names the file and line") {
    const auto victim = tmp / "rec/easy-vs-hard_04.jsonl";
    auto text = read_file(victim);
    std::size_t pos = 0;
    for (int line = 1; line < 7; ++line) pos = text.find('\n', pos) + 1;
    text.insert(pos, "{\"round\":1,\"f\":\n");
    write(victim, text);
    auto r = run({"fingerprint", tmp / "rec", "--out", tmp / "y"});
    CHECK(r.code == 2);
    CHECK(r.err.find("easy-vs-hard_04.jsonl: line 7: malformed JSON") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.dir / "y"));
  }
}

TEST_CASE("compare") {
  Scratch tmp("compare");
  write(tmp / "a.json", fp_json({{"t1", 1}, {"t2", 1}}));
  write(tmp / "b.json", fp_json({{"t1", 1}}));
  write(tmp / "c.json", fp_json({{"t3", 2}}));
  write(tmp / "empty.json", fp_json({}));
  CHECK(run({"compare", tmp / "a.json", tmp / "a.json"}).out == "1.000000\n");
  CHECK(run({"compare", tmp / "b.json", tmp / "c.json"}).out == "0.000000\n");
  CHECK(run({"compare", tmp / "a.json", tmp / "b.json"}).out == "0.707107\n");
  const auto e = run({"compare", tmp / "a.json", tmp / "empty.json"});
  CHECK(e.code == 2);
  CHECK(e.err.find("empty fingerprint") != std::string::npos);
  CHECK(run({"compare", tmp / "a.json", tmp / "nope.json"}).code == 1);
}

TEST_CASE("matrix and report") {
  Scratch tmp("report");
  SUBCASE("two identical profiles") {
    write(tmp / "p/x.json", fp_json({{"t1", 2}, {"t2", 1}}));
    write(tmp / "p/y.json", fp_json({{"t1", 4}, {"t2", 2}}));
    CHECK(run({"matrix", tmp / "p"}).out == "label,x,y\nx,1.000000,1.000000\ny,1.000000,1.000000\n");
    REQUIRE(run({"--format", "svg", "report", "--profiles", tmp / "p", "--out", tmp / "r"}).code == 0);
    CHECK(read_file(tmp.dir / "r" / "matrix.csv") == "label,x,y\nx,1.000000,1.000000\ny,1.000000,1.000000\n");
    CHECK(read_file(tmp.dir / "r" / "matrix.svg").find("<svg") != std::string::npos);
  }
  SUBCASE("needs two profiles") {
    write(tmp / "one/x.json", fp_json({{"t1", 2}}));
    CHECK(run({"report", "--profiles", tmp / "one", "--out", tmp / "r"}).code == 2);
  }
  SUBCASE("consistency rows from per-opponent labels") {
    write(tmp / "cons.csv", consistency_matrix_csv());
    REQUIRE(run({"report", "--matrix", tmp / "cons.csv", "--out", tmp / "r"}).code == 0);
    const auto csv = read_file(tmp.dir / "r" / "consistency.csv");
    CHECK(csv.find("\nAI-normal,0.76,0.98,0.88\n") != std::string::npos);
    CHECK(csv.find("\nIppo,0.61,0.93,0.82\n") != std::string::npos);
  }
  SUBCASE("cross-group rows") {
    write(tmp / "m.csv", matrix_to_csv(fixtures::cross_group_matrix()));
    write(tmp / "groups.json", R"({"AI":"ai","Ippo":"human","Kaori":"human","Ryoya":"human","Riku":"human"})");
    REQUIRE(run({"report", "--matrix", tmp / "m.csv", "--groups", tmp / "groups.json", "--threshold", "0.6",
                 "--out", tmp / "r"})
                .code == 0);
    const auto csv = read_file(tmp.dir / "r" / "cross_group.csv");
    CHECK(csv.find("\nRiku,0.18,0.44,0.44\n") != std::string::npos);
    CHECK(csv.find("\nRyoya,0.73,0.58,0.62\n") != std::string::npos);
    CHECK(read_file(tmp.dir / "r" / "clusters.csv") ==
          "cluster,label\n1,AI\n1,Ippo\n1,Kaori\n1,Ryoya\n2,Riku\n");
  }
  SUBCASE("a label missing from the groups file") {
    write(tmp / "m.csv", matrix_to_csv(fixtures::cross_group_matrix()));
    write(tmp / "groups.json", R"({"AI":"ai","Ippo":"human","Kaori":"human","Ryoya":"human"})");
    const auto r = run({"report", "--matrix", tmp / "m.csv", "--groups", tmp / "groups.json", "--out", tmp / "r"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Riku") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.dir / "r"));
  }
}

TEST_CASE("identify") {
  Scratch tmp("identify");
  write(tmp / "g/amy.json", fp_json({{"t1", 3}, {"t2", 1}}));
  write(tmp / "g/bob.json", fp_json({{"t3", 1}}));
  write(tmp / "q.json", fp_json({{"t1", 6}, {"t2", 2}}));
  const auto r = run({"identify", "--query", tmp / "q.json", "--gallery", tmp / "g"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "rank,label,similarity\n1,amy,1.000000\n2,bob,0.000000\n");

  write(tmp / "m.jsonl", test_util::header() + test_util::frame(1, 0));
  CHECK(run({"identify", "--query", tmp / "m.jsonl", "--gallery", tmp / "g"}).code == 2);
}

TEST_CASE("tournament writes recordings, profiles and a report") {
  Scratch tmp("tournament");
  const auto r = run({"tournament", "--presets", "very-easy,normal,very-hard", "--matches", "2", "--out", tmp / "t"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("leave-one-match-out accuracy") != std::string::npos);
  for (const auto* f : {"recordings/manifest.json", "profiles/normal.json", "profiles/normal@very-easy.json",
                        "report/matrix.csv", "report/consistency.csv", "report/separation.csv",
                        "report/identification.csv", "report/confusion.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(tmp.dir / "t" / f));
  }
}

}  // TEST_SUITE
