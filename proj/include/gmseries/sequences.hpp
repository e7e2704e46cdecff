#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmseries/common.hpp"

namespace gmseries {

using json = nlohmann::ordered_json;

/// Which trigonometric series a coefficient sequence feeds.
enum class SeriesKind { kCosine, kSine, kComplexExponential };

std::string to_string(SeriesKind kind);
SeriesKind series_kind_from_string(const std::string& name);

namespace detail {

/// Pure generator behind a sequence.  value(n) must be deterministic and
/// is only called for n >= 1; the handle applies the support conventions.
struct Generator {
  virtual ~Generator() = default;
  virtual double value(long long n) const = 0;
  virtual json descriptor() const = 0;
  // Constant term a_0 of the cosine form; zero for every named generator,
  // nonzero only for explicit lists declared with start index 0.
  virtual double constant_term() const { return 0.0; }
};

}  // namespace detail

/// Handle to a lazily evaluated, memoized coefficient sequence.
///
/// Values are cached per index with idempotent fill, so a sequence can be
/// shared across worker threads.  All built-in generators are real valued;
/// coeff() exposes the complex-typed contract with imaginary part exactly 0.
class CoefficientSequence {
 public:
  CoefficientSequence() = default;

  /// a_n for n >= 1; indices below the generator's support return exactly 0.
  double coeff_real(long long n) const;
  std::complex<double> coeff(long long n) const {
    return {coeff_real(n), 0.0};
  }
  /// a_0 term of the cosine series (Eq. 1 carries a_0/2).
  double constant_term() const;

  /// Sum of |a_k| for k in [1, n]; cached cumulative array, O(1) amortized.
  double abs_prefix_sum(long long n) const;
  /// Sum of |a_k| for k in [lo, hi] (inclusive), via the prefix cache.
  double abs_window_sum(long long lo, long long hi) const;
  /// Sum of |a_k|/k for k in [lo, hi] (inclusive), same caching scheme.
  double abs_over_k_window(long long lo, long long hi) const;

  /// Fills the cache up to horizon in one pass; useful before parallel scans.
  void prefetch(long long horizon) const;

  /// Dense copy of a_lo..a_hi (inclusive) for hot kernels; out-of-range
  /// indices contribute 0.
  std::vector<double> copy_range(long long lo, long long hi) const;

  /// True if a_k >= a_{k+1} >= 0 for all k in [lo, hi-1].
  bool is_nonincreasing(long long lo, long long hi) const;

  json descriptor() const;
  bool valid() const { return static_cast<bool>(gen_); }

  /// Stable identity of this sequence instance (shared by copies of the
  /// handle); used to key derived caches.
  const void* identity() const { return cache_.get(); }

  friend CoefficientSequence make_generator(const std::string& name,
                                            const json& params);

 private:
  struct Cache {
    mutable std::shared_mutex mutex;
    std::vector<double> values;          // values[i] = a_{i+1}
    std::vector<double> abs_prefix;      // abs_prefix[i] = sum_{k<=i+1} |a_k|
    std::vector<double> abs_over_k_prefix;  // sum_{k<=i+1} |a_k|/k
  };

  std::shared_ptr<const detail::Generator> gen_;
  std::shared_ptr<Cache> cache_;

  void ensure(long long n) const;
};

/// Builds one of the named generators:
///   harmonic        a_n = 1/n
///   inv_log         a_n = 1/ln(n+offset), offset >= 1 (default 1)
///   power           a_n = n^-p, p > 0
///   constant        a_n = value (default 1)
///   monotone_list   finite nonincreasing nonnegative list, 0 past the end
///   explicit        finite list, optional "start" 0 or 1 (default 1)
///   remark5_cos     a_n = 1/(ln n ln ln n) on n = 3l+1, l >= 1, else 0
///   remark5_sin     a_n = 1/(ln n ln ln n) on n = 2l+1, l >= 1, else 0
///   remark6         a_n = 1/n^2 when r | n, else 0
/// Formulas involving logarithms evaluate to 0 wherever ln or ln ln is not
/// strictly positive, so remark5 supports effectively start at 4 resp. 3.
CoefficientSequence make_generator(const std::string& name,
                                   const json& params = json::object());

/// Parses the canonical JSON descriptor {"name": ..., "params": {...}}.
CoefficientSequence sequence_from_json(const json& descriptor);

/// c_k of the complex-exponential form (Eq. 0) for k in Z, derived from a
/// real cosine or sine sequence: c_k = c_{-k} = a_|k|/2, or
/// c_k = -i sgn(k) b_|k|/2.  Round-trips exactly.
std::complex<double> complex_coefficient(const CoefficientSequence& seq,
                                         SeriesKind kind, long long k);

}  // namespace gmseries
