#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

std::string g_cli = "../gmseries";

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
    res.output.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

nlohmann::json parse(const std::string& text) {
  return nlohmann::json::parse(text);
}

}  // namespace

TEST_CASE("classify: consistent, inconsistent, config error") {
  const auto ok = run_cli(
      "classify --generator '{\"name\":\"harmonic\",\"params\":{}}' "
      "--class GM --grid 16:4096:2");
  CHECK(ok.exit_code == 0);
  const auto doc = parse(ok.output);
  CHECK(doc["verdict"] == "consistent-with-membership");

  const auto bad = run_cli(
      "classify --generator '{\"name\":\"remark6\",\"params\":{\"r\":3}}' "
      "--class GM --r 2 "
      "--beta '{\"variant\":\"b6\",\"c\":2.0,\"horizon\":100000}' "
      "--grid 16:4096:2");
  CHECK(bad.exit_code == 3);

  const auto cfg = run_cli("classify --class GM");
  CHECK(cfg.exit_code == 2);

  const auto unknown = run_cli(
      "classify --generator '{\"name\":\"nope\",\"params\":{}}' --class GM");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("classify: csv format and determinism") {
  const std::string cmd =
      "classify --generator '{\"name\":\"harmonic\",\"params\":{}}' "
      "--class GM --grid 16:1024:2 --format csv";
  const auto a = run_cli(cmd);
  const auto b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("m,variation,majorant,ratio") == 0);
}

TEST_CASE("norm subcommand") {
  const auto sn = run_cli(
      "norm --functional sn --kind sin "
      "--generator '{\"name\":\"explicit\",\"params\":{\"values\":[0,0,1]}}' "
      "--n 3 --tol 1e-8");
  CHECK(sn.exit_code == 0);
  const auto doc = parse(sn.output);
  CHECK(doc["value"].get<double>() == doctest::Approx(2.0 / 3.14159265358979)
                                          .epsilon(1e-8));

  const auto vn = run_cli(
      "norm --functional vn_sn --kind cos "
      "--generator "
      "'{\"name\":\"explicit\",\"params\":{\"values\":[2],\"start\":0}}' "
      "--n 6 --tol 1e-8");
  CHECK(vn.exit_code == 0);
  CHECK(parse(vn.output)["value"].get<double>() == 0.0);

  const auto badtol = run_cli(
      "norm --functional sn --generator "
      "'{\"name\":\"harmonic\",\"params\":{}}' --n 4 --tol 0");
  CHECK(badtol.exit_code == 2);

  const auto cauchy = run_cli(
      "norm --functional cauchy --kind cos "
      "--generator '{\"name\":\"harmonic\",\"params\":{}}' "
      "--n 4 --m 64 --tol 1e-8");
  CHECK(cauchy.exit_code == 0);
  CHECK(parse(cauchy.output)["value"].get<double>() > 0.0);
}

TEST_CASE("study subcommand and plotdata") {
  namespace fs = std::filesystem;
  fs::remove_all("cli_study_out");
  const auto study = run_cli(
      "study remark6 --grid 16:256:2 --out cli_study_out "
      "--param rbvs_horizon=100000 --param tail_horizon=100000");
  CHECK(study.exit_code == 0);
  const std::string path =
      study.output.substr(0, study.output.find('\n'));
  CHECK(fs::exists(path));

  // plotdata over the classify report shape.
  {
    const auto classify = run_cli(
        "classify --generator '{\"name\":\"harmonic\",\"params\":{}}' "
        "--class GM --grid 16:256:2 --out cli_study_out/scan.json");
    CHECK(classify.exit_code == 0);
    const auto plot = run_cli("plotdata cli_study_out/scan.json");
    CHECK(plot.exit_code == 0);
    CHECK(plot.output.find("x,y") == 0);
    CHECK(plot.output.find("16,") != std::string::npos);
  }

  const auto unsorted = run_cli(
      "study remark6 --grid 64,16 --out cli_study_out");
  CHECK(unsorted.exit_code == 2);
  fs::remove_all("cli_study_out");
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  for (int i = 1; i < argc; ++i)
    if (argv[i][0] != '-') g_cli = argv[i];
  return ctx.run();
}
