#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#ifdef MTNAV_CLI_PATH

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::temp_directory_path() / "mtnav_cli_test";

// Runs the CLI with output captured to a file; returns the exit status.
int cli(const std::string& args, std::string* output = nullptr) {
  fs::create_directories(kScratch);
  const fs::path log = kScratch / "stdout.txt";
  const std::string cmd =
      std::string("\"") + MTNAV_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(log);
    std::ostringstream s;
    s << in.rdbuf();
    *output = s.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run writes results, trajectories and summary") {
  const fs::path out = kScratch / "track";
  fs::remove_all(out);
  std::string text;
  CHECK(cli("run --task track --trials 3 --seed 5 --threads 1 --out \"" + out.string() + "\"",
            &text) == 0);
  CHECK(text.find("success_count: 3") != std::string::npos);
  CHECK(fs::exists(out / "results.csv"));
  CHECK(fs::exists(out / "summary.txt"));
  for (int i = 0; i < 3; ++i) CHECK(fs::exists(out / ("trajectory_" + std::to_string(i) + ".csv")));
  CHECK(slurp(out / "results.csv").rfind("trial,seed,outcome,elapsed_s,ticks,final_x,final_y\n", 0) == 0);

  std::string stats;
  CHECK(cli("stats --in \"" + (out / "results.csv").string() + "\"", &stats) == 0);
  CHECK(stats.find("success_count: 3") != std::string::npos);
  CHECK(stats.find("mean_s: ") != std::string::npos);
}

TEST_CASE("spread subcommand on a return trajectory") {
  const fs::path out = kScratch / "return";
  fs::remove_all(out);
  CHECK(cli("run --task return --trials 1 --out \"" + out.string() + "\"") == 0);
  std::string text;
  CHECK(cli("spread --in \"" + (out / "trajectory_0.csv").string() + "\"", &text) == 0);
  CHECK(text.rfind("path_spread_m: ", 0) == 0);

  // A hover-only trajectory never reverses.
  const fs::path fwd = kScratch / "track_spread";
  CHECK(cli("run --task track --trials 1 --out \"" + fwd.string() + "\"") == 0);
  CHECK(cli("spread --in \"" + (fwd / "trajectory_0.csv").string() + "\"") == 1);
}

TEST_CASE("usage and config errors exit 2") {
  CHECK(cli("") == 2);
  CHECK(cli("run") == 2);
  CHECK(cli("run --task hover") == 2);
  CHECK(cli("run --task track --trials 0") == 2);
  CHECK(cli("run --task track --config /nonexistent/cfg.json") == 2);

  const fs::path cfg = kScratch / "bad.json";
  std::ofstream(cfg) << R"({"sim": {"dt": -1}})";
  CHECK(cli("run --task track --config \"" + cfg.string() + "\" --out \"" +
            (kScratch / "bad").string() + "\"") == 2);
}

TEST_CASE("strict mode exits 3 when a trial fails") {
  const fs::path cfg = kScratch / "timeout.json";
  std::ofstream(cfg) << R"({"mission": {"timeout": 1}})";
  const std::string base = "run --task forward --trials 2 --config \"" + cfg.string() +
                           "\" --out \"" + (kScratch / "strict").string() + "\"";
  CHECK(cli(base) == 0);
  CHECK(cli(base + " --strict") == 3);
  CHECK(slurp(kScratch / "strict" / "results.csv").find("failed:timeout") != std::string::npos);
}

TEST_CASE("dump-frames writes PPM images") {
  const fs::path out = kScratch / "frames";
  fs::remove_all(out);
  CHECK(cli("run --task track --trials 1 --dump-frames --out \"" + out.string() + "\"") == 0);
  bool any = false;
  for (const auto& e : fs::recursive_directory_iterator(out)) {
    any = any || e.path().extension() == ".ppm";
  }
  CHECK(any);
}

}  // TEST_SUITE

#endif  // MTNAV_CLI_PATH
