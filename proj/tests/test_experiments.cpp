#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "gmseries/experiments.hpp"
#include "gmseries/report_io.hpp"

using namespace gmseries;

namespace {

QuadratureSpec tol_spec(double tol) {
  QuadratureSpec q;
  q.abs_tol = tol;
  return q;
}

}  // namespace

TEST_CASE("remark5 study: lower bound vs quadrature gap (cos)") {
  const StudyReport rep = run_remark5(SeriesKind::kCosine, 50, 500,
                                      tol_spec(1e-6), {60, 120, 500});
  CHECK(rep.passed);
  const double lower = rep.document["lower_bound_sum"].get<double>();
  const double gap = rep.document["cauchy_gap"]["value"].get<double>();
  CHECK(lower > 0.0);
  CHECK(gap >= lower - 1e-6);

  // Increments of the lower bound against the integral-comparison oracle
  // computed directly here.
  const auto growth = rep.document["growth"];
  REQUIRE(growth.size() == 3);
  for (std::size_t i = 1; i < growth.size(); ++i) {
    const double inc = growth[i]["increment"].get<double>();
    const double pred = growth[i]["predicted_increment"].get<double>();
    CHECK(inc > 0.0);
    CHECK(std::abs(inc - pred) <= 0.15 * pred);
  }
}

TEST_CASE("remark5 study: sine variant and the single-summand edge") {
  const StudyReport rep =
      run_remark5(SeriesKind::kSine, 50, 500, tol_spec(1e-6), {60, 500});
  CHECK(rep.passed);
  const double lower = rep.document["lower_bound_sum"].get<double>();
  const double gap = rep.document["cauchy_gap"]["value"].get<double>();
  CHECK(gap >= lower - 1e-6);

  // M = n: one summand on each side.
  const StudyReport one = run_remark5(SeriesKind::kCosine, 50, 50,
                                      tol_spec(1e-8), {50});
  CHECK(one.passed);
  const double single = one.document["lower_bound_sum"].get<double>();
  const double term = 1.0 / (151.0 * std::log(151.0) * std::log(std::log(151.0)));
  CHECK(single ==
        doctest::Approx(std::sin(2.0 * M_PI / 3.0) / M_PI * term).epsilon(1e-12));
  CHECK(one.document["cauchy_gap"]["value"].get<double>() >= single - 1e-8);
}

TEST_CASE("remark6 study: three sub-reports") {
  const BetaSpec beta6 = BetaSpec::b6(2.0, 100000);
  const StudyReport rep = run_remark6(3, dyadic_grid(16, 1024), beta6,
                                      tol_spec(1e-6), 300000, 100000);
  CHECK(rep.passed);
  CHECK(rep.document["rbvs_scan"]["verdict"] == "consistent-with-membership");
  CHECK(rep.document["beta5_tail"]["summable"] == true);
  CHECK(rep.document["beta6_tail"]["summable"] == true);
  CHECK(rep.document["gm_beta6_scan"]["trend_slope"].get<double>() > 0.8);

  // Same shape at r = 4.
  const StudyReport rep4 = run_remark6(4, dyadic_grid(16, 256), beta6,
                                       tol_spec(1e-6), 100000, 100000);
  CHECK(rep4.passed);
  CHECK(rep4.document["gm_beta6_scan"]["trend_slope"].get<double>() > 0.8);

  // Single-point grid: verdicts degrade to inconclusive, checks still pass.
  const StudyReport stub =
      run_remark6(3, {64}, beta6, tol_spec(1e-6), 100000, 100000);
  CHECK(stub.document["gm_beta6_scan"]["verdict"] == "inconclusive");

  CHECK_THROWS_AS(
      run_remark6(2, dyadic_grid(16, 64), beta6, tol_spec(1e-6), 1000, 1000),
      ConfigError);
}

TEST_CASE("criterion-iff study: decaying vs stalling sequences") {
  auto harmonic = make_generator("harmonic");
  const StudyReport h = run_criterion_iff(harmonic, SeriesKind::kCosine,
                                          dyadic_grid(16, 512),
                                          tol_spec(1e-6), 1, 4096);
  CHECK(h.passed);
  CHECK(h.document["norm_o1"] == true);
  CHECK(h.document["criterion_o1"] == true);
  CHECK(h.document["precondition"] == "monotone");

  auto slow = make_generator("inv_log", {{"offset", 2.0}});
  const StudyReport s = run_criterion_iff(slow, SeriesKind::kCosine,
                                          dyadic_grid(16, 512),
                                          tol_spec(1e-6), 1, 4096);
  CHECK(s.passed);
  CHECK(s.document["norm_o1"] == false);
  CHECK(s.document["criterion_o1"] == false);

  auto zero = make_generator("explicit", {{"values", json::array()}});
  const StudyReport z = run_criterion_iff(zero, SeriesKind::kCosine,
                                          dyadic_grid(16, 128),
                                          tol_spec(1e-6), 1, 1024);
  CHECK(z.passed);
  CHECK(z.document["norm_o1"] == true);
  CHECK(z.document["criterion_o1"] == true);
}

TEST_CASE("embedding suite: default battery passes pointwise") {
  const StudySpec spec{.study_id = "embedding_suite"};
  const StudyReport rep = run_study(spec);
  CHECK(rep.passed);
  CHECK(rep.failures.empty());
  CHECK(rep.document["configs"].size() == 3);
}

TEST_CASE("theorem3 suite") {
  auto root = make_generator("power", {{"p", 0.5}});
  const StudyReport rep = run_theorem3_suite(root, SeriesKind::kCosine,
                                             BetaSpec::b1(),
                                             dyadic_grid(16, 1024),
                                             tol_spec(1e-6));
  CHECK(rep.passed);
  CHECK(rep.document["hypothesis"]["verdict"] == "o1");
  CHECK(rep.document["vn_sn_o1"] == true);
}

TEST_CASE("theorem4 suite on remark6") {
  auto r6 = make_generator("remark6", {{"r", 3}});
  const StudyReport rep = run_theorem4_suite(r6, SeriesKind::kCosine,
                                             BetaSpec::b5(2.0), 3,
                                             dyadic_grid(16, 128),
                                             tol_spec(1e-6), 24576, 600000);
  CHECK(rep.passed);
  const auto gaps = rep.document["gap_values"].get<std::vector<double>>();
  for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
  CHECK(rep.document["ratio_max"].get<double>() <
        3.0 * rep.document["ratio_min"].get<double>());
}

TEST_CASE("study writer: files and determinism") {
  namespace fs = std::filesystem;
  const std::string dir = "study_out_test";
  fs::remove_all(dir);
  StudySpec spec;
  spec.study_id = "remark5_cos";
  spec.params = {{"n", 50}, {"M", 200}, {"growth_grid", {60, 200}}};
  const StudyReport rep1 = run_study(spec);
  const StudyReport rep2 = run_study(spec);
  CHECK(dump_json(rep1.document) == dump_json(rep2.document));

  const std::string path = write_study(rep1, dir);
  CHECK(fs::exists(path));
  CHECK(path.find("remark5_cos-") != std::string::npos);
  const json back = read_json_file(path);
  CHECK(back["study"] == "remark5_cos");
  bool has_csv = false;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") has_csv = true;
  CHECK(has_csv);
  fs::remove_all(dir);
}

TEST_CASE("plot columns from reports") {
  json rep;
  rep["grid"] = {2, 4, 8};
  rep["ratios"] = {0.5, 0.5, 0.5};
  const std::string csv = plot_columns_csv(rep);
  CHECK(csv.find("x,y") == 0);
  CHECK(csv.find("8,0.5") != std::string::npos);
  CHECK_THROWS_AS(plot_columns_csv(json{{"foo", 1}}), ConfigError);
}

TEST_CASE("unknown study id") {
  StudySpec spec;
  spec.study_id = "nope";
  CHECK_THROWS_AS(run_study(spec), ConfigError);
}
