#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

// The CLI binary under test; exported by ctest as RWRE_CLI.
std::string cli_binary() {
  const char* env = std::getenv("RWRE_CLI");
  REQUIRE_MESSAGE(env != nullptr, "RWRE_CLI must point at the rwre binary (run via ctest)");
  return env;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = cli_binary() + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rwre-cli-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

fs::path write_config(const TempDir& dir, const std::string& body) {
  fs::path p = dir.path / "config.json";
  std::ofstream out(p);
  out << body;
  return p;
}

const char* kDirichletConfig = R"({
  "dim": 1,
  "jumps": [[1],[-1]],
  "law": {"kind": "dirichlet", "alphas": [2, 1]},
  "steps": 20000,
  "seed": 31,
  "reconstruction": {"degree": 8, "max_total": 8}
})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("simulate: deterministic reruns, header-only zero-step file") {
  TempDir dir;
  auto config = write_config(dir, kDirichletConfig);

  auto r1 = run("simulate --config " + config.string() + " --out " + (dir.path / "a").string());
  REQUIRE(r1.exit_code == 0);
  auto r2 = run("simulate --config " + config.string() + " --out " + (dir.path / "b").string());
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir.path / "a/trajectory.txt") == slurp(dir.path / "b/trajectory.txt"));
  CHECK(slurp(dir.path / "a/provenance.json") == slurp(dir.path / "b/provenance.json"));

  auto r3 = run("simulate --config " + config.string() + " --steps 0 --out " +
                (dir.path / "z").string());
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp(dir.path / "z/trajectory.txt") == "#rwre-traj v1 dim=1\n");
}

TEST_CASE("estimate on a drift trajectory: single history, empty R-hat") {
  TempDir dir;
  auto config = write_config(dir, R"({
    "dim": 1,
    "jumps": [[1],[2]],
    "law": {"kind": "mixture", "atoms": [{"w": 1.0, "p": [0.5, 0.5]}]},
    "steps": 5000,
    "seed": 5
  })");
  REQUIRE(run("simulate --config " + config.string() + " --out " + dir.path.string()).exit_code ==
          0);
  auto r = run("estimate --config " + config.string() + " --traj " +
               (dir.path / "trajectory.txt").string() + " --out " + dir.path.string());
  REQUIRE(r.exit_code == 0);

  auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  CHECK(report["histories"].size() == 1);
  CHECK(report["classification"]["R"].empty());
  CHECK(report["classification"]["T"].size() == 2);
  CHECK(report["recurrence"]["revisit_fraction"] == 0.0);
}

TEST_CASE("estimate rejects malformed trajectories with a line number") {
  TempDir dir;
  auto config = write_config(dir, kDirichletConfig);
  fs::path bad = dir.path / "bad.txt";
  {
    std::ofstream out(bad);
    out << "#rwre-traj v1 dim=1\n[1]\nwat\n";
  }
  auto r = run("estimate --config " + config.string() + " --traj " + bad.string() + " --out " +
               dir.path.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find(":3:") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2") {
  TempDir dir;
  auto config = write_config(dir, R"({"jumps": [[1]], "nonsense": true})");
  auto r = run("simulate --config " + config.string() + " --out " + dir.path.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("nonsense") != std::string::npos);
}

TEST_CASE("resample produces replica files with truncation metadata") {
  TempDir dir;
  auto config = write_config(dir, kDirichletConfig);
  REQUIRE(run("simulate --config " + config.string() + " --out " + dir.path.string()).exit_code ==
          0);
  auto r = run("resample --config " + config.string() + " --traj " +
               (dir.path / "trajectory.txt").string() + " --replicas 2 --out " +
               dir.path.string());
  REQUIRE(r.exit_code == 0);
  std::string first_line = slurp(dir.path / "replica_1.txt").substr(0, 60);
  CHECK(first_line.find("#rwre-traj v1 dim=1 replica=1 truncated=") == 0);
  CHECK(fs::exists(dir.path / "replica_2.txt"));

  // Deterministic: extraction is a pure function of the trajectory.
  auto again = run("resample --config " + config.string() + " --traj " +
                   (dir.path / "trajectory.txt").string() + " --replicas 2 --out " +
                   (dir.path / "again").string());
  REQUIRE(again.exit_code == 0);
  CHECK(slurp(dir.path / "replica_1.txt") == slurp(dir.path / "again/replica_1.txt"));
}

TEST_CASE("reconstruct from a trajectory and from a report") {
  TempDir dir;
  auto config = write_config(dir, kDirichletConfig);
  REQUIRE(run("simulate --config " + config.string() + " --out " + dir.path.string()).exit_code ==
          0);
  REQUIRE(run("estimate --config " + config.string() + " --traj " +
              (dir.path / "trajectory.txt").string() + " --out " + dir.path.string())
              .exit_code == 0);

  auto r = run("reconstruct --config " + config.string() + " --traj " +
               (dir.path / "trajectory.txt").string() + " --out " + (dir.path / "t").string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("verdict: complete") != std::string::npos);
  auto meta = nlohmann::json::parse(slurp(dir.path / "t/reconstruction.json"));
  CHECK(meta["verdict"] == "complete");
  CHECK(slurp(dir.path / "t/moments.csv").find("multi_index,value") == 0);
  CHECK(slurp(dir.path / "t/cdf.csv").find("a_1,cdf") == 0);

  auto r2 = run("reconstruct --config " + config.string() + " --report " +
                (dir.path / "report.json").string() + " --out " + (dir.path / "r").string());
  REQUIRE(r2.exit_code == 0);
  // Same moment table either way: the report carries the same V-hat values.
  CHECK(slurp(dir.path / "t/moments.csv") == slurp(dir.path / "r/moments.csv"));
}

TEST_CASE("fixtures pass at reduced scale") {
  TempDir dir;
  auto r1 = run("fixture --name example1 --steps 60000 --seed 3 --out " +
                (dir.path / "f1").string());
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("example1 PASS") != std::string::npos);

  auto r2 = run("fixture --name example2 --steps 60000 --seed 3 --out " +
                (dir.path / "f2").string());
  CHECK(r2.exit_code == 0);
  auto report = nlohmann::json::parse(slurp(dir.path / "f2/fixture_report.json"));
  CHECK(report["pass"] == true);

  auto r3 = run("fixture --name nope --out " + dir.path.string());
  CHECK(r3.exit_code == 2);
}

TEST_SUITE_END();
