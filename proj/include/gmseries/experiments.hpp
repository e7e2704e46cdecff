#pragma once

#include "gmseries/classes.hpp"
#include "gmseries/lnorm.hpp"

namespace gmseries {

/// A named, parameterized study.  Every study is deterministic given its
/// spec; params not supplied fall back to the study's documented defaults.
struct StudySpec {
  std::string study_id;  // remark5_cos | remark5_sin | remark6 |
                         // criterion_iff | theorem3_suite | theorem4_suite |
                         // embedding_suite
  json params = json::object();
  unsigned jobs = 0;
};

struct StudyReport {
  std::string study_id;
  json document;  // the full report (grids, raw numbers, verdicts, checks)
  std::vector<std::pair<std::string, json>> tables;  // name -> {header, rows}
  bool passed = true;
  std::vector<std::string> failures;
};

StudyReport run_study(const StudySpec& spec);

/// Remark-5 mechanism at kind = cos or sin: the explicit lower-bound sum
/// against the quadratured Cauchy gap, plus the growth of the bound in M
/// checked against the integral-comparison prediction.
StudyReport run_remark5(SeriesKind kind, long long n, long long M,
                        const QuadratureSpec& qspec,
                        const std::vector<long long>& growth_grid = {});

/// Remark-6 reproduction: (1) RBVS(b5, r) scan, (2) sum beta_k / k
/// summability for the b5 and b6 majorants, (3) GM(b6, 2) scan with the
/// 1/(4rn) block-variation floor checked at every grid point.
StudyReport run_remark6(long long r, const std::vector<long long>& grid,
                        const BetaSpec& beta6, const QuadratureSpec& qspec,
                        long long rbvs_horizon, long long tail_horizon);

/// Paired trend table (norm gap, |a_n| ln n) across the grid; asserts the
/// two columns agree on o(1) vs not.
StudyReport run_criterion_iff(const CoefficientSequence& seq, SeriesKind kind,
                              const std::vector<long long>& grid,
                              const QuadratureSpec& qspec, long long r,
                              long long horizon);

/// Quantitative embedding chains (Remark 1, Remark 2, RBVS within GM)
/// checked pointwise for one (seq, q, r, beta) configuration.
struct EmbeddingConfig {
  json sequence;  // generator descriptor
  long long q = 1;
  long long r = 1;          // must be a multiple of q
  BetaSpec beta;            // majorant for the composed Remark-1 inequality
  std::vector<long long> grid;
  long long horizon = 100000;
};
StudyReport run_embedding_suite(const std::vector<EmbeddingConfig>& configs);

/// Theorem-3 hypothesis values against the measured ||V_n - S_n|| trend.
StudyReport run_theorem3_suite(const CoefficientSequence& seq, SeriesKind kind,
                               const BetaSpec& beta,
                               const std::vector<long long>& grid,
                               const QuadratureSpec& qspec);

/// Theorem-4 bound against the measured ||S_n - f|| across the grid.
StudyReport run_theorem4_suite(const CoefficientSequence& seq, SeriesKind kind,
                               const BetaSpec& beta, long long r,
                               const std::vector<long long>& grid,
                               const QuadratureSpec& qspec,
                               long long sn_f_horizon, long long tail_horizon);

/// Writes {study-id}-{timestamp}.json plus one CSV per table into out_dir;
/// returns the JSON path.  Timestamps appear only in file names.
std::string write_study(const StudyReport& report, const std::string& out_dir);

/// Powers of two from lo to hi inclusive.
std::vector<long long> dyadic_grid(long long lo, long long hi);

}  // namespace gmseries
