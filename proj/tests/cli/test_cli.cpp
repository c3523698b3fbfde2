#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("eclipse_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& leaf) const { return path / leaf; }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(static_cast<bool>(in), "cannot open ", path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(static_cast<bool>(in), "cannot open ", path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const TempDir& dir, const std::string& args) {
  const fs::path capture = dir / "cli_output.txt";
  const std::string cmd = std::string("\"") + ECLIPSE_CLI_PATH + "\" " + args +
                          " > \"" + capture.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.output = read_file(capture);
  return result;
}

void make_corpus(const TempDir& dir, int count, unsigned seed) {
  const CliResult r = run_cli(
      dir, "synth --out \"" + (dir / "corpus").string() + "\" --count " +
               std::to_string(count) + " --seed " + std::to_string(seed));
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
}

std::string oracle_arg(const TempDir& dir) {
  return "--oracle synthetic:\"" + (dir / "corpus").string() + "/oracle.json\"";
}

std::string fast_attack_args() {
  return " --max-iterations 150 --sample-size 32 --success-threshold 0.5";
}

}  // namespace

TEST_CASE("synth writes a complete corpus") {
  TempDir dir("synth");
  make_corpus(dir, 3, 7);
  const fs::path corpus = dir / "corpus";
  for (const char* name :
       {"manifest.csv", "oracle.json", "heatmap.png", "img_000.png",
        "img_001.png", "img_002.png"}) {
    CHECK_MESSAGE(fs::exists(corpus / name), name);
  }
  const std::vector<std::string> lines = read_lines(corpus / "manifest.csv");
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "filename,ground_truth_label,target_label");
  CHECK(lines[1].rfind("img_000.png,", 0) == 0);
}

TEST_CASE("attack output is deterministic for a fixed seed") {
  TempDir dir("attack_determinism");
  make_corpus(dir, 3, 42);
  const std::string base = "attack --corpus \"" + (dir / "corpus").string() +
                           "\" " + oracle_arg(dir) + fast_attack_args() +
                           " --seed 100";

  const CliResult r1 =
      run_cli(dir, base + " --workers 2 --out \"" + (dir / "run1").string() + "\"");
  REQUIRE_MESSAGE(r1.exit_code == 0, r1.output);
  const CliResult r2 =
      run_cli(dir, base + " --workers 1 --out \"" + (dir / "run2").string() + "\"");
  REQUIRE_MESSAGE(r2.exit_code == 0, r2.output);

  // Byte-identical artifacts regardless of worker pool width.
  CHECK(read_file(dir / "run1" / "summary.csv") ==
        read_file(dir / "run2" / "summary.csv"));
  CHECK(read_file(dir / "run1" / "outcomes.csv") ==
        read_file(dir / "run2" / "outcomes.csv"));
  CHECK(read_file(dir / "run1" / "adversarial" / "img_000.png") ==
        read_file(dir / "run2" / "adversarial" / "img_000.png"));
  CHECK(read_file(dir / "run1" / "traces" / "img_001.jsonl") ==
        read_file(dir / "run2" / "traces" / "img_001.jsonl"));

  const std::vector<std::string> outcome_lines =
      read_lines(dir / "run1" / "outcomes.csv");
  REQUIRE(outcome_lines.size() == 4);  // header + one row per image
  CHECK(outcome_lines[0] ==
        "image_id,success,iterations,queries,queries_uncached,final_fitness");

  const std::vector<std::string> summary_lines =
      read_lines(dir / "run1" / "summary.csv");
  REQUIRE(summary_lines.size() == 2);
  CHECK(summary_lines[0] ==
        "images,successes,failures,success_rate,median_queries,q1_queries,"
        "q3_queries,iqr_queries");
  CHECK(summary_lines[1].rfind("3,", 0) == 0);

  // The output directory doubles as a corpus for the evaluation commands.
  const std::vector<std::string> manifest =
      read_lines(dir / "run1" / "manifest.csv");
  REQUIRE(manifest.size() == 4);
  CHECK(manifest[1].rfind("adversarial/img_000.png,", 0) == 0);

  // Trace lines are JSON objects with the per-iteration ledger fields.
  const std::vector<std::string> trace =
      read_lines(dir / "run1" / "traces" / "img_000.jsonl");
  REQUIRE(!trace.empty());
  CHECK(trace[0].find("\"accepted\":") != std::string::npos);
  CHECK(trace[0].find("\"queries_uncached\":") != std::string::npos);
  CHECK(trace[0].find("\"t\":1") != std::string::npos);
}

TEST_CASE("empty corpus is an error and produces no outputs") {
  TempDir dir("attack_empty");
  fs::create_directories(dir / "corpus");
  {
    std::ofstream manifest(dir / "corpus" / "manifest.csv");
    manifest << "filename,ground_truth_label,target_label\n";
  }
  {
    std::ofstream spec(dir / "corpus" / "oracle.json");
    spec << "{}";
  }
  const CliResult r = run_cli(
      dir, "attack --corpus \"" + (dir / "corpus").string() + "\" " +
               oracle_arg(dir) + " --out \"" + (dir / "out").string() + "\"");
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("error:") != std::string::npos);
  CHECK(!fs::exists(dir / "out"));
}

TEST_CASE("baseline attacks run without a heatmap") {
  TempDir dir("attack_square");
  make_corpus(dir, 2, 11);
  fs::remove(dir / "corpus" / "heatmap.png");  // baselines must not need it
  const CliResult r = run_cli(
      dir, "attack --attack square --corpus \"" + (dir / "corpus").string() +
               "\" " + oracle_arg(dir) +
               " --max-iterations 3000 --success-threshold 0.5 --seed 200"
               " --out \"" + (dir / "out").string() + "\"");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  CHECK(fs::exists(dir / "out" / "adversarial" / "img_001.png"));

  // The gradient attack without its heatmap is an error...
  const CliResult missing = run_cli(
      dir, "attack --attack eclipse --corpus \"" + (dir / "corpus").string() +
               "\" " + oracle_arg(dir) + fast_attack_args() + " --out \"" +
               (dir / "out2").string() + "\"");
  CHECK(missing.exit_code != 0);
  CHECK(missing.output.find("heatmap") != std::string::npos);

  // ...unless it computes one by occlusion probing.
  const CliResult occlusion = run_cli(
      dir, "attack --attack eclipse --heatmap occlusion --corpus \"" +
               (dir / "corpus").string() + "\" " + oracle_arg(dir) +
               fast_attack_args() + " --seed 100 --out \"" +
               (dir / "out3").string() + "\"");
  REQUIRE_MESSAGE(occlusion.exit_code == 0, occlusion.output);
  CHECK(fs::exists(dir / "out3" / "outcomes.csv"));
}

TEST_CASE("unknown attack name is rejected") {
  TempDir dir("attack_bogus");
  make_corpus(dir, 1, 5);
  const CliResult r = run_cli(
      dir, "attack --attack bogus --corpus \"" + (dir / "corpus").string() +
               "\" " + oracle_arg(dir) + " --out \"" + (dir / "out").string() +
               "\"");
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("unknown attack") != std::string::npos);
}

TEST_CASE("config file fills in flags and the command line wins") {
  TempDir dir("attack_config");
  make_corpus(dir, 2, 42);
  {
    std::ofstream cfg(dir / "settings.toml");
    cfg << "# run settings\n"
        << "[attack]\n"
        << "kind = \"eclipse\"\n"
        << "max_iterations = 150\n"
        << "sample_size = 32\n"
        << "success_threshold = 0.5\n"
        << "seed = 100\n"
        << "\n"
        << "[oracle]\n"
        << "source = \"synthetic:" << (dir / "corpus" / "oracle.json").string()
        << "\"\n";
  }
  const std::string corpus_flag = "--corpus \"" + (dir / "corpus").string() + "\"";
  const std::string config_flag =
      "--config \"" + (dir / "settings.toml").string() + "\"";

  const CliResult from_config = run_cli(
      dir, "attack " + corpus_flag + " " + config_flag + " --out \"" +
               (dir / "run_cfg").string() + "\"");
  REQUIRE_MESSAGE(from_config.exit_code == 0, from_config.output);

  const CliResult from_flags = run_cli(
      dir, "attack " + corpus_flag + " " + oracle_arg(dir) + fast_attack_args() +
               " --seed 100 --out \"" + (dir / "run_flags").string() + "\"");
  REQUIRE_MESSAGE(from_flags.exit_code == 0, from_flags.output);
  CHECK(read_file(dir / "run_cfg" / "outcomes.csv") ==
        read_file(dir / "run_flags" / "outcomes.csv"));

  // An explicit flag overrides the same key in the file.
  const CliResult overridden = run_cli(
      dir, "attack " + corpus_flag + " " + config_flag + " --seed 101 --out \"" +
               (dir / "run_override").string() + "\"");
  REQUIRE_MESSAGE(overridden.exit_code == 0, overridden.output);
  CHECK(read_file(dir / "run_override" / "outcomes.csv") !=
        read_file(dir / "run_cfg" / "outcomes.csv"));

  // Malformed config is a clean error.
  {
    std::ofstream cfg(dir / "broken.toml");
    cfg << "[attack\nseed 5\n";
  }
  const CliResult broken = run_cli(
      dir, "attack " + corpus_flag + " --config \"" +
               (dir / "broken.toml").string() + "\" --out \"" +
               (dir / "run_broken").string() + "\"");
  CHECK(broken.exit_code != 0);
}

TEST_CASE("eval-p1 writes one report row per quality") {
  TempDir dir("eval_p1");
  make_corpus(dir, 3, 42);
  const CliResult attack = run_cli(
      dir, "attack --corpus \"" + (dir / "corpus").string() + "\" " +
               oracle_arg(dir) + fast_attack_args() + " --seed 100 --out \"" +
               (dir / "run").string() + "\"");
  REQUIRE_MESSAGE(attack.exit_code == 0, attack.output);

  const CliResult eval = run_cli(
      dir, "eval-p1 --corpus \"" + (dir / "run").string() + "\" " +
               oracle_arg(dir) +
               " --quality 50 --quality 75 --quality 95 --out \"" +
               (dir / "p1").string() + "\"");
  REQUIRE_MESSAGE(eval.exit_code == 0, eval.output);

  const std::vector<std::string> records = read_lines(dir / "p1" / "records.csv");
  CHECK(records.size() == 1 + 3 * 3);  // header + images x qualities
  CHECK(records[0] == "image_id,quality,pre_score,post_score,loss");

  const std::vector<std::string> report = read_lines(dir / "p1" / "p1_report.csv");
  REQUIRE(report.size() == 4);
  CHECK(report[0] == "quality,n,median_loss,low_loss_pct,surviving_pct");
  CHECK(report[1].rfind("50,3,", 0) == 0);
  CHECK(report[2].rfind("75,3,", 0) == 0);
  CHECK(report[3].rfind("95,3,", 0) == 0);
  CHECK(fs::exists(dir / "p1" / "p1_report.json"));
}

TEST_CASE("eval-p2 writes features, detector, fold report and query stats") {
  TempDir dir("eval_p2");
  make_corpus(dir, 4, 42);
  const CliResult attack = run_cli(
      dir, "attack --corpus \"" + (dir / "corpus").string() + "\" " +
               oracle_arg(dir) + fast_attack_args() + " --seed 100 --out \"" +
               (dir / "run").string() + "\"");
  REQUIRE_MESSAGE(attack.exit_code == 0, attack.output);

  const CliResult eval = run_cli(
      dir, "eval-p2 --benign \"" + (dir / "corpus").string() +
               "\" --adversarial \"" + (dir / "run").string() +
               "\" --bands 16 --folds 2 --out \"" + (dir / "p2").string() + "\"");
  REQUIRE_MESSAGE(eval.exit_code == 0, eval.output);

  const std::vector<std::string> features =
      read_lines(dir / "p2" / "features.csv");
  REQUIRE(features.size() >= 2 + 8);  // recipe + header + 4 benign + 4 adversarial
  CHECK(features[0] == "# recipe=dct-radial-logband-gray/v1");
  CHECK(features[1].rfind("class,image_id,band_0,", 0) == 0);
  CHECK(features[1].find(",band_15") != std::string::npos);
  CHECK(features[2].rfind("benign,img_000,", 0) == 0);
  CHECK(features.back().rfind("adversarial,img_003,", 0) == 0);

  const std::string detector = read_file(dir / "p2" / "detector.json");
  CHECK(detector.find("dct-radial-logband-gray/v1") != std::string::npos);

  const std::vector<std::string> cv = read_lines(dir / "p2" / "cv_report.csv");
  REQUIRE(cv.size() == 4);  // header + 2 folds + mean
  CHECK(cv[0] == "set,accuracy,precision,recall,f1,roc_auc");
  CHECK(cv[1].rfind("fold_1,", 0) == 0);
  CHECK(cv[3].rfind("mean,", 0) == 0);
  CHECK(cv[3].find("(± ") != std::string::npos);

  const std::vector<std::string> stats =
      read_lines(dir / "p2" / "query_stats.csv");
  REQUIRE(stats.size() == 2);
  CHECK(stats[0] ==
        "successes,failures,median_queries,q1_queries,q3_queries,iqr_queries");
}

TEST_CASE("ablation compares the full attack against component removals") {
  TempDir dir("ablation");
  make_corpus(dir, 3, 42);
  const CliResult r = run_cli(
      dir, "ablation --corpus \"" + (dir / "corpus").string() + "\" " +
               oracle_arg(dir) + fast_attack_args() +
               " --seed 100 --workers 3 --bands 16 --folds 2 --out \"" +
               (dir / "abl").string() + "\"");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);

  const std::vector<std::string> report =
      read_lines(dir / "abl" / "ablation_report.csv");
  REQUIRE(report.size() == 4);
  CHECK(report[0].rfind("variant,images,successes,success_rate,", 0) == 0);
  CHECK(report[1].rfind("ECLIPSE,3,", 0) == 0);
  CHECK(report[2].rfind("No Gaussian blur,3,", 0) == 0);
  CHECK(report[3].rfind("No Local Surrogate,3,", 0) == 0);
  for (const char* slug : {"eclipse", "no-blur", "no-surrogate"}) {
    CHECK(fs::exists(dir / "abl" / slug / "outcomes.csv"));
    CHECK(fs::exists(dir / "abl" / slug / "summary.csv"));
    CHECK(fs::exists(dir / "abl" / slug / "adversarial" / "img_000.png"));
  }
}
