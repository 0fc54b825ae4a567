#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conflab/cli.hpp"
#include "conflab/output.hpp"

using namespace conflab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("conflab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("range prints the admissible interval") {
  const auto r = run_cli({"range", "--lipschitz", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("(1.2, 6)", 0) == 0);
  const auto lg = run_cli({"range", "--local-graph"});
  CHECK(lg.code == 0);
  CHECK(lg.out.find("4)") != std::string::npos);
}

TEST_CASE("constant weight has characteristic one") {
  const auto r = run_cli({"apchar", "--weight", "power:a=0,p=2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("characteristic 1\n") != std::string::npos);
}

TEST_CASE("weight query grammar") {
  const auto q = cli::parse_weight_query("power:a=0.5,p=3,center=0.2,domain=line");
  CHECK(q.kind == "power");
  CHECK(q.a == 0.5);
  CHECK(q.p.value() == 3.0);
  CHECK(q.domain == WeightDomain::line);
  CHECK(cli::parse_weight_query("example").kind == "example");
  CHECK_THROWS_AS(cli::parse_weight_query("power:a=1,a=2"), ValidationError);
  CHECK_THROWS_AS(cli::parse_weight_query("power:bogus=1"), ValidationError);
  CHECK_THROWS_AS(cli::parse_weight_query("nosuch"), ValidationError);
  CHECK(cli::format_range({1.5, 3.0}) == "(1.5, 3)");
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"range", "--bogus"}).code == 1);
  CHECK(run_cli({"apchar"}).code == 1);
  CHECK(run_cli({"apchar", "--weight", "power:a=5,p=2"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"diffspec", "--map", "sector", "--N", "8"}).code == 1);
}

TEST_CASE("configuration files merge under command-line flags") {
  const fs::path dir = scratch_dir("config");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "# lipschitz constant\nlipschitz = 1\n";
  }
  const auto from_file = run_cli({"range", "--config", (dir / "run.cfg").string()});
  CHECK(from_file.code == 0);
  CHECK(from_file.out.rfind("(1.2, 6)", 0) == 0);
  const auto flag_wins = run_cli({"range", "--lipschitz", "1e9", "--config", (dir / "run.cfg").string()});
  CHECK(flag_wins.code == 0);
  CHECK(flag_wins.out.rfind("(1.2, 6)", 0) != 0);

  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "no-such-key = 3\n";
  }
  const auto bad = run_cli({"range", "--lipschitz", "1", "--config", (dir / "bad.cfg").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown configuration key") != std::string::npos);
}

TEST_CASE("outputs are written and reproducible") {
  const fs::path dir = scratch_dir("outputs");
  const std::vector<std::string> args = {"apchar", "--weight", "power:a=0.5", "--p-grid", "2,3",
                                         "--depth", "6", "--lattice", "16", "--out", dir.string()};
  REQUIRE(run_cli(args).code == 0);
  const std::string csv = slurp(dir / "apchar.csv");
  const std::string plot = slurp(dir / "apchar_plot.csv");
  CHECK(csv.rfind("# conflab apchar seed=1", 0) == 0);
  CHECK(fs::exists(dir / "apchar.json"));
  REQUIRE(run_cli(args).code == 0);
  CHECK(slurp(dir / "apchar.csv") == csv);
  CHECK(slurp(dir / "apchar_plot.csv") == plot);
}

TEST_CASE("plot data emission") {
  const fs::path dir = scratch_dir("plot");
  CHECK_THROWS_AS(output::emit_plot_data({}, dir / "empty.csv"), ValidationError);
  output::emit_plot_data({{1.0, 2.0}, {0.1, 1.0 / 3.0}}, dir / "a.csv", "demo");
  CHECK(slurp(dir / "a.csv") == "# demo\nx,y\n1,0.10000000000000001\n2,0.33333333333333331\n");
}

TEST_CASE("stage seeds are deterministic and distinct") {
  CHECK(output::stage_seed(1, 0) == output::stage_seed(1, 0));
  CHECK(output::stage_seed(1, 0) != output::stage_seed(1, 1));
  CHECK(output::stage_seed(1, 0) != output::stage_seed(2, 0));
}

TEST_CASE("diffspec reports a vanishing operator for the identity map") {
  const fs::path dir = scratch_dir("diffspec");
  const auto r = run_cli({"diffspec", "--map", "identity", "--N", "8", "--angular", "64", "--M", "256",
                          "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "diffspec.csv"));
}

}  // TEST_SUITE
