#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "gmseries/beta.hpp"
#include "gmseries/trigpoly.hpp"

namespace gmseries {

/// Controls for the L1 quadrature.  The generic engine is adaptive
/// bisection with a fixed-order (Gauss-Kronrod 15) panel rule; trig
/// polynomials take a sign-segmentation fast path that integrates exactly
/// between located zeros of the integrand.
struct QuadratureSpec {
  double abs_tol = 1e-6;
  std::vector<double> singular_points;   // excluded +- exclusion_radius
  double exclusion_radius = 0.0;
  std::vector<double> seed_breakpoints;  // extra initial panel splits
  long long max_panels = 20000;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

/// Pointwise bound |tail(x)| <= min(uniform_cap, sin_bound/(2|sin(rx/2)|)).
/// sin_bound comes from series_tail_bound's numerator; uniform_cap is the
/// absolute coefficient tail when it converges.
struct SingularEnvelope {
  double sin_bound = 0.0;
  long long r = 1;
  double uniform_cap = std::numeric_limits<double>::infinity();
};

/// (1/2pi) integral over [-pi, pi] of the envelope min-form; +inf when the
/// cap is infinite (the log divergence at the singular set is not summable).
double envelope_mass(const SingularEnvelope& env);
/// Same restricted to the zones within `half_width` of the singular set.
double envelope_zone_mass(const SingularEnvelope& env, double half_width);

struct NormReport {
  double value = 0.0;
  double error_estimate = 0.0;   // quadrature + envelope + scan audit
  double quadrature_error = 0.0; // the engine's own error estimate
  double envelope_mass = 0.0;    // integrated beyond-horizon envelope
  long long panels_used = 0;
  std::vector<std::string> flags;
  std::string functional;
  json params = json::object();

  json to_json() const;
};

/// (1/2pi) integral_{-pi}^{pi} |f| by adaptive bisection with a GK15 panel
/// rule.  Panels are seeded at singular points, their excluded-zone edges
/// and any seed_breakpoints.  Throws NumericError when the tolerance is not
/// reached within max_panels, and NoCertificateError when excluded zones
/// exist without an envelope to bound their mass.
NormReport l1_norm(const std::function<double(double)>& integrand,
                   const QuadratureSpec& spec,
                   const std::optional<SingularEnvelope>& envelope = {});

/// Same functional for a trig polynomial; sign-segmentation path.  The
/// integrand is entire, so no exclusions apply; `envelope`, when given,
/// models series mass beyond the polynomial and is added to the error.
NormReport l1_norm(const TrigPoly& poly, const QuadratureSpec& spec,
                   const std::optional<SingularEnvelope>& envelope = {});

/// || S_m - S_{n-1} || = || sum_{k=n}^{m} a_k trig(kx) ||.
NormReport cauchy_gap(const CoefficientSequence& seq, SeriesKind kind,
                      long long n, long long m, const QuadratureSpec& spec);

/// || V_n - S_n ||, integrand -sum_{k<=n} (k/(n+1)) a_k trig(kx).
NormReport vn_sn_gap(const CoefficientSequence& seq, SeriesKind kind,
                     long long n, const QuadratureSpec& spec);

/// || S_n - f || with f evaluated as S_horizon plus a certified envelope
/// beyond; the envelope's integrated mass lands in error_estimate, never in
/// the value.  Requires a summable variation tail at step r.
NormReport sn_f_gap(const CoefficientSequence& seq, SeriesKind kind,
                    long long n, long long r, const QuadratureSpec& spec,
                    long long horizon);

/// beta_{n+1} ln(n+1) + sum_{k>n} beta_k / k (truncated plus fitted tail).
struct Theorem4Bound {
  double value = 0.0;
  double beta_term = 0.0;
  TailSum tail;
};
Theorem4Bound theorem4_bound(const CoefficientSequence& seq,
                             const BetaSpec& beta, long long n,
                             long long horizon);

}  // namespace gmseries
