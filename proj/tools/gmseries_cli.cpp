// Command-line front end: classify sequences against the (beta, r) classes,
// measure L1 norms, run the named studies, and re-emit reports as plot data.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmseries/experiments.hpp"
#include "gmseries/report_io.hpp"
#include "gmseries/summation.hpp"

namespace {

using gmseries::json;

enum ExitCode {
  kOk = 0,
  kConfigError = 2,
  kInconsistent = 3,
  kInconclusive = 4,
  kNumericFailure = 5,
};

int log_level() {
  const char* env = std::getenv("GMSERIES_LOG");
  if (!env) return 1;  // info
  const std::string v(env);
  if (v == "quiet" || v == "error") return 0;
  if (v == "debug") return 2;
  return 1;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[gmseries] " << msg << "\n";
}

[[noreturn]] void fail(ExitCode code, const std::string& msg) {
  std::cerr << "error code=" << int(code) << " msg=\"" << msg << "\"\n";
  std::exit(code);
}

json parse_json_or_path(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    try {
      return json::parse(arg);
    } catch (const std::exception& e) {
      throw gmseries::ConfigError(std::string("bad inline JSON: ") + e.what());
    }
  }
  return gmseries::read_json_file(arg);
}

// start:stop:step (geometric) or a comma-separated explicit list.
std::vector<long long> parse_grid(const std::string& text) {
  std::vector<long long> grid;
  if (text.find(':') != std::string::npos) {
    long long start = 0, stop = 0, step = 0;
    if (std::sscanf(text.c_str(), "%lld:%lld:%lld", &start, &stop, &step) != 3)
      throw gmseries::ConfigError("grid must be start:stop:step or a list");
    if (start < 1 || stop < start || step < 2)
      throw gmseries::ConfigError("grid needs start>=1, stop>=start, step>=2");
    for (long long m = start; m <= stop; m *= step) grid.push_back(m);
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string::npos) next = text.size();
      grid.push_back(std::stoll(text.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  gmseries::validate_grid(grid);
  return grid;
}

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gmseries::ConfigError("cannot write " + out_path);
  out << body;
}

std::vector<std::vector<double>> membership_rows(
    const gmseries::MembershipReport& rep) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.grid.size(); ++i)
    rows.push_back({double(rep.grid[i]), rep.variations[i], rep.majorants[i],
                    rep.ratios[i]});
  return rows;
}

struct CommonOpts {
  std::string generator;
  std::string class_id;
  std::string beta;
  long long r = 0;
  std::string grid = "16:4096:2";
  double tol = 1e-6;
  long long horizon = 0;
  unsigned jobs = 0;
  std::string out;
  std::string format = "json";
};

int run_classify(const CommonOpts& opt) {
  if (opt.generator.empty())
    throw gmseries::ConfigError("classify needs --generator");
  if (opt.class_id.empty())
    throw gmseries::ConfigError("classify needs --class");
  gmseries::CoefficientSequence seq =
      gmseries::sequence_from_json(parse_json_or_path(opt.generator));
  gmseries::ClassSpec spec;
  spec.id = gmseries::class_id_from_string(opt.class_id);
  if (opt.r > 0) spec.r = opt.r;
  if (!opt.beta.empty())
    spec.beta = gmseries::BetaSpec::from_json(parse_json_or_path(opt.beta));
  const auto grid = parse_grid(opt.grid);
  const long long horizon =
      opt.horizon > 0 ? opt.horizon : std::max<long long>(4 * grid.back(),
                                                          1000000);
  const auto rep = gmseries::membership_scan(seq, spec, grid, horizon);
  if (opt.format == "csv") {
    emit(opt.out, gmseries::csv_string({"m", "variation", "majorant", "ratio"},
                                       membership_rows(rep)));
  } else {
    emit(opt.out, gmseries::dump_json(rep.to_json()));
  }
  log_info("classify " + rep.class_label + ": " + rep.verdict);
  if (rep.verdict == "inconsistent") return kInconsistent;
  if (rep.verdict == "inconclusive") return kInconclusive;
  return kOk;
}

int run_norm(const CommonOpts& opt, const std::string& functional,
             const std::string& kind_name, long long n, long long m) {
  if (opt.generator.empty()) throw gmseries::ConfigError("norm needs --generator");
  if (!(opt.tol > 0.0))
    throw gmseries::ConfigError("tolerance must be positive");
  gmseries::CoefficientSequence seq =
      gmseries::sequence_from_json(parse_json_or_path(opt.generator));
  const auto kind = gmseries::series_kind_from_string(kind_name);
  gmseries::QuadratureSpec qspec;
  qspec.abs_tol = opt.tol;
  qspec.jobs = opt.jobs;
  gmseries::NormReport rep;
  if (functional == "sn") {
    rep = gmseries::l1_norm(gmseries::TrigPoly::partial_sum(seq, kind, n),
                            qspec);
    rep.functional = "sn";
    rep.params = {{"n", n}, {"kind", kind_name}};
  } else if (functional == "vn_sn") {
    rep = gmseries::vn_sn_gap(seq, kind, n, qspec);
  } else if (functional == "cauchy") {
    if (m < n) throw gmseries::ConfigError("cauchy needs --m >= --n");
    rep = gmseries::cauchy_gap(seq, kind, n, m, qspec);
  } else if (functional == "sn_f") {
    const long long r = opt.r > 0 ? opt.r : 1;
    const long long horizon = opt.horizon > 0 ? opt.horizon : 16384;
    rep = gmseries::sn_f_gap(seq, kind, n, r, qspec, horizon);
  } else {
    throw gmseries::ConfigError("unknown functional: " + functional);
  }
  if (opt.format == "csv") {
    emit(opt.out,
         gmseries::csv_string({"value", "error_estimate", "panels"},
                              {{rep.value, rep.error_estimate,
                                double(rep.panels_used)}}));
  } else {
    emit(opt.out, gmseries::dump_json(rep.to_json()));
  }
  return kOk;
}

int run_study_cmd(const std::string& study_id, const CommonOpts& opt,
                  const std::vector<std::string>& params) {
  gmseries::StudySpec spec;
  spec.study_id = study_id;
  spec.jobs = opt.jobs;
  spec.params["tol"] = opt.tol;
  if (opt.r > 0) spec.params["r"] = opt.r;
  if (opt.horizon > 0) spec.params["horizon"] = opt.horizon;
  if (!opt.grid.empty() && opt.grid != "16:4096:2")
    spec.params["grid"] = parse_grid(opt.grid);
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw gmseries::ConfigError("--param expects key=value: " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      spec.params[key] = json::parse(value);
    } catch (...) {
      spec.params[key] = value;  // plain string
    }
  }
  const gmseries::StudyReport rep = gmseries::run_study(spec);
  const std::string dir = opt.out.empty() ? "." : opt.out;
  const std::string path = gmseries::write_study(rep, dir);
  log_info("study " + study_id + (rep.passed ? " passed" : " FAILED") +
           ", report " + path);
  std::cout << path << "\n";
  if (!rep.passed) {
    for (const auto& f : rep.failures) std::cerr << "  check failed: " << f << "\n";
    return kNumericFailure;
  }
  return kOk;
}

int run_plotdata(const std::string& report_path, const CommonOpts& opt) {
  const json doc = gmseries::read_json_file(report_path);
  emit(opt.out, gmseries::plot_columns_csv(doc));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical companion for L1-convergence of trigonometric "
               "series with general monotone coefficients"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string functional = "sn";
  std::string kind_name = "cos";
  long long n = 1, m = 0;
  std::string study_id;
  std::string report_path;
  std::vector<std::string> params;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--generator", opt.generator, "generator JSON or path");
    cmd->add_option("--class", opt.class_id, "class id");
    cmd->add_option("--beta", opt.beta, "beta spec JSON or path");
    cmd->add_option("--r", opt.r, "difference step r");
    cmd->add_option("--grid", opt.grid, "start:stop:geometric-step or list");
    cmd->add_option("--tol", opt.tol, "quadrature absolute tolerance");
    cmd->add_option("--horizon", opt.horizon, "truncation horizon");
    cmd->add_option("--jobs", opt.jobs, "worker threads (0 = cores)");
    cmd->add_option("--out", opt.out, "output path (default stdout)");
    cmd->add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* classify = app.add_subcommand("classify", "membership diagnostics");
  add_common(classify);

  auto* norm = app.add_subcommand("norm", "L1 norm measurement");
  add_common(norm);
  norm->add_option("--functional", functional, "sn|vn_sn|cauchy|sn_f");
  norm->add_option("--kind", kind_name, "cos|sin");
  norm->add_option("--n", n, "partial sum index");
  norm->add_option("--m", m, "upper index for cauchy");

  auto* study = app.add_subcommand("study", "run a named study");
  add_common(study);
  study->add_option("id", study_id, "study id")->required();
  study->add_option("--param", params, "key=value study parameter override");
  study->add_option("--kind", kind_name, "cos|sin");

  auto* plotdata = app.add_subcommand("plotdata", "report to x,y CSV");
  add_common(plotdata);
  plotdata->add_option("report", report_path, "report JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error code=2 msg=\"" << e.what() << "\"\n";
    return kConfigError;
  }

  try {
    if (classify->parsed()) return run_classify(opt);
    if (norm->parsed()) return run_norm(opt, functional, kind_name, n, m);
    if (study->parsed()) {
      if (study->count("--kind")) params.push_back("kind=\"" + kind_name + "\"");
      return run_study_cmd(study_id, opt, params);
    }
    if (plotdata->parsed()) return run_plotdata(report_path, opt);
  } catch (const gmseries::ConfigError& e) {
    fail(kConfigError, e.what());
  } catch (const gmseries::SingularPointError& e) {
    fail(kNumericFailure, e.what());
  } catch (const gmseries::NoCertificateError& e) {
    fail(kNumericFailure, e.what());
  } catch (const gmseries::NumericError& e) {
    fail(kNumericFailure, e.what());
  } catch (const std::exception& e) {
    fail(kNumericFailure, e.what());
  }
  return kConfigError;
}
