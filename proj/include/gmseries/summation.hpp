#pragma once

#include <complex>

#include "gmseries/beta.hpp"
#include "gmseries/sequences.hpp"

namespace gmseries {

namespace detail {

/// sin and cos of j*u with j*u reduced modulo 2*pi in double-double
/// arithmetic.  The product j*u is formed exactly (FMA two-product), the
/// nearest multiple of 2*pi is subtracted with a two-term representation of
/// 2*pi, and the reduced argument carries an absolute error of a few ulps
/// regardless of |j*u| up to ~1e15.  This keeps frequency-k trig values
/// accurate enough that the Lemma-1 identity holds to 1e-10 at m = 1e4.
void sincos_reduced(long long j, double u, double& s, double& c);

/// The reduced argument itself (for diagnostics and tests).
double reduce_mod_two_pi(long long j, double u);

}  // namespace detail

/// Distance from x to the nearest point of {2*pi*l / r : l integer}.
double singular_distance(double x, long long r);

/// Exclusion radius around the singular set, 1e-6 * (2*pi/r).
double default_exclusion_radius(long long r);

/// One block sum of a cosine or sine series.
struct BlockSumRequest {
  CoefficientSequence seq;
  long long n = 1;   // start index, >= 1
  long long m = 1;   // end index, >= n
  long long r = 1;   // difference step, >= 1
  double x = 0.0;    // evaluation point (radians)
  SeriesKind kind = SeriesKind::kCosine;  // cos or sin
};

struct BlockSumResult {
  double value = 0.0;
  // The three bracketed sums of the r-step Abel identity; zero for the
  // direct method.
  double difference_part = 0.0;  // sum (a_k - a_{k+r}) trig((k + r/2) x)
  double trailing_sum = 0.0;     // sum_{k=m+1}^{m+r} a_k trig((k - r/2) x)
  double leading_sum = 0.0;      // sum_{k=n}^{n+r-1} a_k trig((k - r/2) x)
  std::string method;            // "direct" or "abel"
};

/// sum_{k=n}^{m} a_k trig(kx), ascending k, compensated.
BlockSumResult direct_block_sum(const BlockSumRequest& req);

/// Same block through the r-step summation-by-parts identity:
///   cos:  ( 1/(2 sin(rx/2))) { diff + trailing - leading }   (sin phases)
///   sin:  (-1/(2 sin(rx/2))) { diff + trailing - leading }   (cos phases)
/// Throws SingularPointError when dist(x, 2*pi*Z/r) < default radius.
BlockSumResult abel_block_sum(const BlockSumRequest& req);

/// Partial sum S_n at x.  The cosine series carries the constant a_0/2;
/// n = 0 yields a_0/2 (cosine) or 0 (sine).
double partial_sum(const CoefficientSequence& seq, SeriesKind kind,
                   long long n, double x);

/// S_n of the complex-exponential form, summed in (k, -k) pairs.
std::complex<double> partial_sum_complex(const CoefficientSequence& seq,
                                         SeriesKind kind, long long n,
                                         double x);

/// de la Vallee Poussin mean V_n = (1/(n+1)) sum_{j=0}^{n} S_j, computed in
/// O(n) through the triangular weights a_k (1 - k/(n+1)).
double vallee_poussin(const CoefficientSequence& seq, SeriesKind kind,
                      long long n, double x);

/// Certified bound on |sum_{k>n} a_k trig(kx)|:
///   (1/(2|sin(rx/2)|)) ( sum_{k>n} |a_k - a_{k+r}| + sum_{k=n+1}^{n+r} |a_k| )
/// with the variation tail truncated at `horizon` plus its fitted remainder.
/// The result assumes the fitted tail overestimates the true remainder.
struct TailBound {
  double value = 0.0;
  TailSum variation_tail;
  double boundary_sum = 0.0;
  std::vector<std::string> flags;
};
TailBound series_tail_bound(const CoefficientSequence& seq, long long n,
                            long long r, double x, long long horizon);

}  // namespace gmseries
