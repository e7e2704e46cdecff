#pragma once

#include <functional>
#include <memory>
#include <string>

#include "gmseries/sequences.hpp"

namespace gmseries {

enum class BetaVariant { kB1, kB2, kB3, kB4, kB5, kB6, kCustom };

std::string to_string(BetaVariant v);
BetaVariant beta_variant_from_string(const std::string& name);

/// Selects and parameterizes one of the majorant functionals:
///   b1  |a_n|
///   b2  sum_{k=n}^{n+N} |a_k|
///   b3  sum_{v=0}^{N} |a_{[c^v n]}|
///   b4  |a_n| + sum_{k=n+1}^{[cn]} |a_k|/k
///   b5  sum_{k=[n/c]}^{[cn]} |a_k|/k, with [n/c] clamped to >= 1
///   b6  (1/ln n) max_{[n/c] <= m <= horizon} ((ln m / m) sum_{k=m}^{2m} |a_k|)
/// All brackets are floors.  b6's max over an unbounded m-range is truncated
/// at `horizon`; evaluation records the argmax and refuses a max attained at
/// the truncation end, which is the only finite certificate of attainment.
struct BetaSpec {
  BetaVariant variant = BetaVariant::kB1;
  long long window = 0;        // N for b2/b3
  double c = 2.0;              // for b3..b6, must be > 1
  long long horizon = 100000;  // b6 truncation
  bool strict_integer_c = false;
  std::function<double(const CoefficientSequence&, long long)> custom;

  static BetaSpec b1() { return {}; }
  static BetaSpec b2(long long N);
  static BetaSpec b3(long long N, double c, bool strict_integer = false);
  static BetaSpec b4(double c);
  static BetaSpec b5(double c);
  static BetaSpec b6(double c, long long horizon);

  json to_json() const;
  static BetaSpec from_json(const json& j);

 private:
  friend double beta_value(const BetaSpec&, const CoefficientSequence&,
                           long long);
  friend struct Beta6Eval;
  struct Beta6Cache;
  mutable std::shared_ptr<Beta6Cache> b6_cache_;
};

/// beta(spec, seq, n).  Nonnegative; throws on out-of-domain n (b6 needs
/// n >= 2) and on a b6 max attained at the truncation horizon.
double beta_value(const BetaSpec& spec, const CoefficientSequence& seq,
                  long long n);

/// b6 with the attained argmax exposed.
struct Beta6Result {
  double value = 0.0;
  long long argmax = 0;
};
Beta6Result beta6_with_argmax(const BetaSpec& spec,
                              const CoefficientSequence& seq, long long n);

/// Truncated sum plus a power-law tail fitted to the last decade of
/// summands.  Shared by beta_series_tail and the class variation tails.
struct TailSum {
  double value = 0.0;          // truncated sum
  double tail_estimate = 0.0;  // fitted remainder past the horizon
  bool summable = false;
  double fit_slope = 0.0;      // fitted exponent p of the summands
  bool fit_valid = false;
  std::vector<std::string> flags;

  double total() const { return value + tail_estimate; }
};

/// sum_{k=from}^{horizon} beta_k / k with tail fit and summability verdict.
/// Requires three decades of data: horizon >= 1000 * from.
TailSum beta_series_tail(const BetaSpec& spec, const CoefficientSequence& seq,
                         long long from, long long horizon);

/// Generic tail machinery over explicit summands s(k); used internally and
/// by the class diagnostics (fit window is the last decade of [from, horizon]).
TailSum tail_sum_with_fit(const std::function<double(long long)>& summand,
                          long long from, long long horizon);

}  // namespace gmseries
