#pragma once

#include <optional>

#include "gmseries/beta.hpp"

namespace gmseries {

/// Finite-difference variation over one dyadic block:
///   sum_{k=m}^{2m-1} |a_k - a_{k+r}|.
double block_variation(const CoefficientSequence& seq, long long m,
                       long long r);

/// sum_{k=start}^{start+count-1} |a_k - a_{k+q}| (the shifted windows of the
/// embedding chain checks).
double shifted_block_variation(const CoefficientSequence& seq, long long start,
                               long long count, long long q);

/// Truncated tail variation sum_{k=m}^{horizon} |a_k - a_{k+r}| with the
/// fitted remainder; requires horizon >= 2m.
TailSum tail_variation(const CoefficientSequence& seq, long long m,
                       long long r, long long horizon);

enum class SequenceClassId { kM, kQM, kRBVS, kGM, kGBVS, kNBVS, kMVBV };

std::string to_string(SequenceClassId id);
SequenceClassId class_id_from_string(const std::string& name);

/// A sequence-class predicate.  GM and RBVS generalize to their (beta, r)
/// forms through the beta / r fields; the defaults beta = b1, r = 1 recover
/// the classical classes.
struct ClassSpec {
  SequenceClassId id = SequenceClassId::kGM;
  long long r = 1;
  BetaSpec beta;            // majorant for GM / RBVS
  double tau = 0.0;         // QM
  long long window = 0;     // GBVS N
  double c = 2.0;           // MVBV, must be > 1

  std::string label() const;
  json to_json() const;
  static ClassSpec from_json(const json& j);
};

struct MembershipReport {
  std::string class_label;
  std::vector<long long> grid;
  std::vector<double> variations;
  std::vector<double> majorants;
  std::vector<double> ratios;       // variation / majorant, conventions below
  double sup_ratio = 0.0;
  double fitted_C = 0.0;            // = sup_ratio
  double trend_slope = 0.0;
  double trend_span_decades = 0.0;
  std::string verdict;  // consistent-with-membership | inconsistent | inconclusive
  std::vector<std::string> flags;

  json to_json() const;
};

/// Evaluates the class's variation functional against its majorant on the
/// grid.  Ratio conventions: 0/0 -> 0 (flagged), x/0 -> +inf (flagged,
/// forces an inconsistent verdict).  The trend verdict follows the fitted
/// log-log slope; negative verdicts require enough grid span.
MembershipReport membership_scan(const CoefficientSequence& seq,
                                 const ClassSpec& spec,
                                 const std::vector<long long>& m_grid,
                                 long long horizon);

/// Shared shape of the per-n diagnostic reports below.
struct RatioReport {
  std::string name;
  std::vector<long long> grid;
  std::vector<double> values;
  double sup_value = 0.0;
  double trend_slope = 0.0;
  double trend_span_decades = 0.0;
  std::string verdict;  // bounded | unbounded | o1 | not-o1 | inconclusive
  std::vector<std::string> flags;
  json params = json::object();

  json to_json() const;
};

/// Per-n ratio (sum_{i=0}^{p-1} beta_{n+iq}) / beta_n with a boundedness
/// verdict; n with beta_n = 0 are excluded from the fit and flagged.
RatioReport remark1_condition(const BetaSpec& beta,
                              const CoefficientSequence& seq, long long q,
                              long long p, const std::vector<long long>& grid);

/// Per-n ratio (sum_{k=[n/2]}^{n} beta_k) / (sum_{k=[n/g]}^{[gn]} |c_k|).
RatioReport theorem2_hypothesis(const CoefficientSequence& seq,
                                const BetaSpec& beta, double gamma,
                                const std::vector<long long>& grid);

/// Per-n ratio n|c_n| / sum_{k=[n/g]}^{[gn]} |c_k| (the quantitative core of
/// the |c_n| ln n = o(1) conclusion).
RatioReport theorem2_keystep(const CoefficientSequence& seq, long long r,
                             double gamma, const std::vector<long long>& grid);

/// Per-n value of
///   sum_{k=[n/2]}^{2n-1} (beta_k + beta_{2k} + |a_k| + |a_{k+1}|)/(2k-n+2)
/// with an o(1) trend verdict.
RatioReport theorem3_hypothesis(const CoefficientSequence& seq,
                                const BetaSpec& beta,
                                const std::vector<long long>& grid);

/// (n, |a_n| ln n) with an o(1) trend verdict; out-of-support zeros are
/// excluded from the fit and flagged.
RatioReport coefficient_criterion(const CoefficientSequence& seq,
                                  const std::vector<long long>& grid);

/// Certificate check for ORVQM with a user-supplied lambda (1-based values):
/// lambda nondecreasing, lambda_{2n} <= C lambda_n with the fitted C
/// reported, and a_n / lambda_n nonincreasing on the covered prefix.
struct OrvqmCertificate {
  bool ok = false;
  double fitted_C = 0.0;
  long long first_violation = 0;  // 0 when ok
  std::string detail;
};
OrvqmCertificate orvqm_certificate(const CoefficientSequence& seq,
                                   const std::vector<double>& lambdas);

/// Convenience bounded grid search for a QM exponent tau whose certificate
/// holds on [1, prefix]; incomplete by nature (QM is existentially
/// quantified), returns the first passing tau.
std::optional<double> qm_search_tau(const CoefficientSequence& seq,
                                    long long prefix,
                                    const std::vector<double>& taus);

void validate_grid(const std::vector<long long>& grid);

}  // namespace gmseries
