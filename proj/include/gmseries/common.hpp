#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gmseries {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user input: unknown generator, invalid parameter, malformed grid.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Evaluation requested too close to a zero of sin(rx/2).
class SingularPointError : public Error {
 public:
  explicit SingularPointError(const std::string& msg) : Error(msg) {}
};

/// A numeric procedure could not reach its contract (tolerance, attainment).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// A bound was requested but the prerequisite decay certificate is missing.
class NoCertificateError : public Error {
 public:
  explicit NoCertificateError(const std::string& msg) : Error(msg) {}
};

/// Neumaier-compensated accumulator.  Safe for terms larger than the
/// running sum, unlike plain Kahan.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

inline double compensated_sum(const std::vector<double>& xs) {
  Accumulator acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Least-squares fit of log(y) against log(x).  Points with x <= 0 or
/// y <= 0 are skipped; the report records how many survived.
struct TrendFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points_used = 0;
  double span_decades = 0.0;  // log10(x_max / x_min) over used points
  bool valid = false;         // at least two usable points
};

inline TrendFit fit_loglog(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  TrendFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double xmin = 0, xmax = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    if (n == 0) {
      xmin = xmax = xs[i];
    } else {
      xmin = std::min(xmin, xs[i]);
      xmax = std::max(xmax, xs[i]);
    }
    ++n;
  }
  fit.points_used = n;
  if (n < 2) return fit;
  const double det = n * sxx - sx * sx;
  if (det <= 0.0) return fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.span_decades = std::log10(xmax / xmin);
  fit.valid = true;
  return fit;
}

// Verdict thresholds shared by the diagnostic reports.  A trend verdict is
// only asserted when the grid spans at least kMinTrendSpanDecades; the
// canonical 16..4096 power-of-two grid spans log10(256) = 2.408 decades.
inline constexpr double kMinTrendSpanDecades = 2.39;
inline constexpr double kGrowthSlopeThreshold = 0.2;   // ratios growing
inline constexpr double kDecaySlopeThreshold = -0.05;  // values -> 0

/// Static-partition parallel map: fills out[i] = fn(i) for i in [0, n).
/// Deterministic for any job count; results land by index.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (jobs == 0) jobs = hw;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  std::exception_ptr first_error;
  std::mutex err_mutex;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += jobs) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gmseries
