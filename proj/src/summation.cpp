#include "gmseries/summation.hpp"

#include <cmath>
#include <numbers>

namespace gmseries {

namespace detail {

namespace {
// 2*pi split so that kTwoPiHi + kTwoPiLo matches 2*pi to ~1e-32.
constexpr double kTwoPiHi = 6.283185307179586476925286766559005768e0;
constexpr double kTwoPiLo = 2.4492935982947063545442435282471426e-16;
constexpr double kInvTwoPi = 0.15915494309189533576888376337251436;
}  // namespace

double reduce_mod_two_pi(long long j, double u) {
  const double dj = static_cast<double>(j);  // exact for |j| < 2^53
  const double hi = dj * u;
  const double lo = std::fma(dj, u, -hi);  // exact product tail
  const double q = std::nearbyint(hi * kInvTwoPi);
  if (q == 0.0) return hi + lo;
  const double p1 = q * kTwoPiHi;
  const double e1 = std::fma(q, kTwoPiHi, -p1);  // exact tail of q*2piHi
  double r = hi - p1;  // |hi - p1| <= pi + eps, Sterbenz-exact region
  r -= e1;
  r += lo;
  r -= q * kTwoPiLo;
  return r;
}

void sincos_reduced(long long j, double u, double& s, double& c) {
  const double r = reduce_mod_two_pi(j, u);
  s = std::sin(r);
  c = std::cos(r);
}

}  // namespace detail

double singular_distance(double x, long long r) {
  const double period = 2.0 * std::numbers::pi / static_cast<double>(r);
  const double q = std::nearbyint(x / period);
  return std::abs(x - q * period);
}

double default_exclusion_radius(long long r) {
  return 1e-6 * (2.0 * std::numbers::pi / static_cast<double>(r));
}

namespace {

void validate(const BlockSumRequest& req) {
  if (!req.seq.valid()) throw ConfigError("block sum needs a sequence");
  if (req.n < 1 || req.m < req.n) throw ConfigError("need 1 <= n <= m");
  if (req.r < 1) throw ConfigError("need step r >= 1");
  if (!std::isfinite(req.x)) throw ConfigError("x must be finite");
  if (req.kind == SeriesKind::kComplexExponential)
    throw ConfigError("block sums take the cosine or sine kind");
}

}  // namespace

BlockSumResult direct_block_sum(const BlockSumRequest& req) {
  validate(req);
  const double u = req.x / 2.0;
  const auto coeffs = req.seq.copy_range(req.n, req.m);
  Accumulator acc;
  const bool cosine = req.kind == SeriesKind::kCosine;
  for (long long k = req.n; k <= req.m; ++k) {
    const double a = coeffs[static_cast<std::size_t>(k - req.n)];
    if (a == 0.0) continue;
    double s, c;
    detail::sincos_reduced(2 * k, u, s, c);
    acc.add(a * (cosine ? c : s));
  }
  BlockSumResult res;
  res.value = acc.value();
  res.method = "direct";
  return res;
}

BlockSumResult abel_block_sum(const BlockSumRequest& req) {
  validate(req);
  const double eps = default_exclusion_radius(req.r);
  if (singular_distance(req.x, req.r) < eps)
    throw SingularPointError(
        "x lies within the exclusion radius of the singular set 2*pi*Z/r");

  const double u = req.x / 2.0;
  double sin_r_half, cos_r_half;
  detail::sincos_reduced(req.r, u, sin_r_half, cos_r_half);
  const double divisor = 2.0 * sin_r_half;

  const bool cosine = req.kind == SeriesKind::kCosine;
  const auto coeffs = req.seq.copy_range(req.n, req.m + req.r);
  const auto at = [&](long long k) {
    return coeffs[static_cast<std::size_t>(k - req.n)];
  };

  // Phase trig: the identity uses sin for the cosine series and cos for the
  // sine series; all arguments are (2k +- r)(x/2).
  const auto phase = [&](long long two_k_pm_r) {
    double s, c;
    detail::sincos_reduced(two_k_pm_r, u, s, c);
    return cosine ? s : c;
  };

  Accumulator diff;
  for (long long k = req.n; k <= req.m; ++k) {
    const double d = at(k) - at(k + req.r);
    if (d == 0.0) continue;
    diff.add(d * phase(2 * k + req.r));
  }
  Accumulator trailing;
  for (long long k = req.m + 1; k <= req.m + req.r; ++k)
    trailing.add(at(k) * phase(2 * k - req.r));
  Accumulator leading;
  for (long long k = req.n; k <= req.n + req.r - 1; ++k)
    leading.add(at(k) * phase(2 * k - req.r));

  BlockSumResult res;
  res.difference_part = diff.value();
  res.trailing_sum = trailing.value();
  res.leading_sum = leading.value();
  const double sign = cosine ? 1.0 : -1.0;
  res.value = sign *
              (res.difference_part + res.trailing_sum - res.leading_sum) /
              divisor;
  res.method = "abel";
  return res;
}

double partial_sum(const CoefficientSequence& seq, SeriesKind kind,
                   long long n, double x) {
  if (n < 0) throw ConfigError("partial sum needs n >= 0");
  if (kind == SeriesKind::kComplexExponential)
    throw ConfigError("use partial_sum_complex for the exponential form");
  const double head =
      kind == SeriesKind::kCosine ? seq.constant_term() / 2.0 : 0.0;
  if (n == 0) return head;
  BlockSumRequest req;
  req.seq = seq;
  req.n = 1;
  req.m = n;
  req.x = x;
  req.kind = kind;
  return head + direct_block_sum(req).value;
}

std::complex<double> partial_sum_complex(const CoefficientSequence& seq,
                                         SeriesKind kind, long long n,
                                         double x) {
  if (n < 0) throw ConfigError("partial sum needs n >= 0");
  std::complex<double> acc = complex_coefficient(seq, kind, 0);
  const double u = x / 2.0;
  for (long long k = 1; k <= n; ++k) {
    double s, c;
    detail::sincos_reduced(2 * k, u, s, c);
    const std::complex<double> e(c, s);   // e^{ikx}
    const std::complex<double> em(c, -s); // e^{-ikx}
    acc += complex_coefficient(seq, kind, k) * e +
           complex_coefficient(seq, kind, -k) * em;
  }
  return acc;
}

double vallee_poussin(const CoefficientSequence& seq, SeriesKind kind,
                      long long n, double x) {
  if (n < 0) throw ConfigError("vallee_poussin needs n >= 0");
  if (kind == SeriesKind::kComplexExponential)
    throw ConfigError("vallee_poussin takes the cosine or sine kind");
  const bool cosine = kind == SeriesKind::kCosine;
  const double u = x / 2.0;
  Accumulator acc;
  if (cosine) acc.add(seq.constant_term() / 2.0);
  const auto coeffs = seq.copy_range(1, n);
  for (long long k = 1; k <= n; ++k) {
    const double a = coeffs[static_cast<std::size_t>(k - 1)];
    if (a == 0.0) continue;
    const double w = 1.0 - double(k) / double(n + 1);
    double s, c;
    detail::sincos_reduced(2 * k, u, s, c);
    acc.add(a * w * (cosine ? c : s));
  }
  return acc.value();
}

TailBound series_tail_bound(const CoefficientSequence& seq, long long n,
                            long long r, double x, long long horizon) {
  if (n < 0 || r < 1) throw ConfigError("series_tail_bound needs n >= 0, r >= 1");
  if (horizon < 2 * (n + r) + 16)
    throw ConfigError("series_tail_bound horizon too small");
  const double eps = default_exclusion_radius(r);
  if (singular_distance(x, r) < eps)
    throw SingularPointError("tail bound requested inside the singular set");

  seq.prefetch(horizon + r);
  const auto coeffs = seq.copy_range(n + 1, horizon + r);
  const auto at = [&](long long k) {
    return coeffs[static_cast<std::size_t>(k - (n + 1))];
  };
  TailBound out;
  out.variation_tail = tail_sum_with_fit(
      [&](long long k) { return std::abs(at(k) - at(k + r)); }, n + 1,
      horizon);
  if (!out.variation_tail.summable)
    throw NoCertificateError(
        "variation tail is not summable; no tail certificate");
  // The identity also needs a_k -> 0: the coefficients at the horizon must
  // be explained by the fitted variation remainder, otherwise some residue
  // class has a nonzero limit and the infinite-sum form does not hold.
  double horizon_coeff = 0.0;
  for (long long k = horizon + 1; k <= horizon + r; ++k)
    horizon_coeff = std::max(horizon_coeff, std::abs(at(k)));
  if (horizon_coeff > 2.0 * out.variation_tail.tail_estimate + 1e-12)
    throw NoCertificateError(
        "coefficients do not decay to zero within the fitted variation tail");
  Accumulator boundary;
  for (long long k = n + 1; k <= n + r; ++k) boundary.add(std::abs(at(k)));
  out.boundary_sum = boundary.value();

  double s, c;
  detail::sincos_reduced(r, x / 2.0, s, c);
  out.value = (out.variation_tail.total() + out.boundary_sum) /
              (2.0 * std::abs(s));
  out.flags.push_back("assumes-fitted-variation-tail");
  return out;
}

}  // namespace gmseries
