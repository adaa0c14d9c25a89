#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rwre/config.hpp"
#include "rwre/environment.hpp"
#include "rwre/errors.hpp"
#include "rwre/report.hpp"
#include "rwre/trajectory_io.hpp"
#include "rwre/walker.hpp"

using namespace rwre;
namespace fs = std::filesystem;

namespace {

GroupElement g(std::int32_t c) { return GroupElement({c}); }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rwre-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_SUITE_BEGIN("io_config");

TEST_CASE("trajectory file round trip") {
  TempDir dir;
  JumpSet jumps({g(-1), g(1)});
  Trajectory traj(jumps);
  traj.append(g(1));
  traj.append(g(-1));
  traj.append(g(1));

  TrajectoryHeader header;
  header.dim = 1;
  write_trajectory(dir.path / "t.txt", traj, header);
  auto back = read_trajectory(dir.path / "t.txt", jumps);
  CHECK(back.traj == traj);
  CHECK(back.header.dim == 1);
  CHECK(!back.header.replica);

  // Re-serialization is byte-identical.
  write_trajectory(dir.path / "t2.txt", back.traj, back.header);
  std::ifstream a(dir.path / "t.txt"), b(dir.path / "t2.txt");
  std::string sa((std::istreambuf_iterator<char>(a)), {});
  std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
}

TEST_CASE("replica header fields survive the round trip") {
  TempDir dir;
  JumpSet jumps({g(1)});
  Trajectory traj(jumps);
  TrajectoryHeader header;
  header.dim = 1;
  header.replica = 3;
  header.truncated = true;
  write_trajectory(dir.path / "r.txt", traj, header);

  auto back = read_trajectory(dir.path / "r.txt", jumps);
  CHECK(back.traj.empty());
  CHECK(back.header.replica == 3);
  CHECK(back.header.truncated == true);
}

TEST_CASE("trajectory parse errors carry line numbers") {
  TempDir dir;
  JumpSet jumps({g(-1), g(1)});
  {
    std::ofstream out(dir.path / "bad.txt");
    out << "#rwre-traj v1 dim=1\n[1]\n[5]\n";
  }
  try {
    read_trajectory(dir.path / "bad.txt", jumps);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    CHECK(std::string(e.what()).find("[5]") != std::string::npos);
  }

  {
    std::ofstream out(dir.path / "garbled.txt");
    out << "#rwre-traj v1 dim=1\nnot-a-jump\n";
  }
  CHECK_THROWS_AS(read_trajectory(dir.path / "garbled.txt", jumps), IoError);

  {
    std::ofstream out(dir.path / "dim.txt");
    out << "#rwre-traj v1 dim=2\n";
  }
  CHECK_THROWS_AS(read_trajectory(dir.path / "dim.txt", jumps), IoError);
}

TEST_CASE("config parsing: the documented shapes") {
  auto j = nlohmann::json::parse(R"({
    "dim": 1,
    "jumps": [[1],[-1]],
    "law": {"kind":"mixture","atoms":[{"w":0.5,"p":[0.9,0.1]},{"w":0.5,"p":[0.1,0.9]}]},
    "steps": 100,
    "seed": 7
  })");
  RunConfig config = parse_config(j);
  CHECK(config.jumps.size() == 2);
  REQUIRE(config.law);
  CHECK(config.law->kind() == EnvironmentLaw::Kind::mixture);
  // p entries were aligned to the config's jump order [1], [-1]; after the
  // canonical sort the atom must give nu_{+1} = 0.9.
  CHECK(config.law->atoms()[0].law.probs[*config.jumps.index_of(g(1))] == 0.9);
  CHECK(config.steps == 100);
  CHECK(config.min_count == 30);  // default

  auto dirichlet = parse_config(nlohmann::json::parse(
      R"({"dim":1,"jumps":[[1],[-1]],"law":{"kind":"dirichlet","alphas":[2,1]}})"));
  REQUIRE(dirichlet.law);
  CHECK(dirichlet.law->alphas()[*dirichlet.jumps.index_of(g(1))] == 2.0);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"jumps":[[1]],"typo":1})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(
                      R"({"jumps":[[1]],"law":{"kind":"mixture","atoms":[{"w":1.0,"p":[1.0],"x":1}]}})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"jumps":[]})")), ValidationError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"jumps":[[1,2]]})")), ValidationError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(
                      R"({"jumps":[[1]],"law":{"kind":"mixture","atoms":[{"w":0.9,"p":[1.0]}]}})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(
                      R"({"jumps":[[1],[-1]],"law":{"kind":"dirichlet","alphas":[2]}})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"jumps":[[1]],"min_count":0})")),
                  ValidationError);
}

TEST_CASE("estimator report round trip powers a moment rebuild") {
  TempDir dir;
  JumpSet jumps({g(-1), g(1)});
  auto law = EnvironmentLaw::dirichlet(jumps, {1.0, 2.0});
  Trajectory traj = simulate_quenched(law, 19, 50000);
  auto state = EstimatorState::ingest(traj, jumps);
  auto cls = classify_r_t_empirical(traj);
  auto rec = recurrence_diagnostic(traj);

  auto report = build_estimator_report(state, cls, rec, 30);
  write_json(dir.path / "report.json", report);

  ReportData data = read_estimator_report(dir.path / "report.json");
  CHECK(data.jumps == jumps);
  CHECK(data.classification.r == cls.r);
  REQUIRE(!data.histories.empty());

  // The report-backed oracle reproduces empirical_v at the empty history.
  auto oracle = report_v_oracle(data, 30);
  auto v = oracle(MultiIndex{});
  REQUIRE(v);
  VEstimate direct = state.empirical_v(MultiIndex{});
  CHECK((*v)[1] == doctest::Approx(direct.probs[1]).epsilon(1e-12));
}

TEST_CASE("CSV emitters") {
  JumpSet jumps({g(-1), g(1)});
  MomentTable table(jumps, JumpSet{}, MomentSource::analytic);
  table.set(MultiIndex{}, 1.0);
  table.set(MultiIndex({{g(1), 2}}), 0.41);
  std::string csv = moment_table_csv(table);
  CHECK(csv == "multi_index,value\n\"{}\",1.0\n\"{[1]:2}\",0.41\n");

  CdfGrid grid;
  grid.variables = {g(1)};
  grid.degree = 4;
  grid.values = {{{0.25}, 0.0625}, {{0.75}, 0.6875}};
  CHECK(cdf_grid_csv(grid) == "a_1,cdf\n0.25,0.0625\n0.75,0.6875\n");
}

TEST_SUITE_END();
