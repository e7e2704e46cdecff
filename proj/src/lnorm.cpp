#include "gmseries/lnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "gmseries/summation.hpp"

namespace gmseries {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Envelope mass.  With t = r|x - s|/2 the envelope is min(U, B/(2 sin t));
//   I(tau) = integral_0^tau min(U, B/(2 sin t)) dt
// has the closed form U t0 + (B/2)(ln tan(tau/2) - ln tan(t0/2)), where
// t0 = asin(min(1, B/(2U))) is where the branches cross.

double envelope_integral(double U, double B, double tau) {
  if (B <= 0.0) return 0.0;
  if (!(tau > 0.0)) return 0.0;
  if (!std::isfinite(U)) return std::numeric_limits<double>::infinity();
  if (U <= 0.0) return 0.0;
  const double ratio = B / (2.0 * U);
  if (ratio >= std::sin(tau)) return U * tau;  // capped on the whole range
  const double t0 = std::asin(std::min(1.0, ratio));
  return U * t0 + 0.5 * B *
                      (std::log(std::tan(tau / 2.0)) -
                       std::log(std::tan(t0 / 2.0)));
}

}  // namespace

double envelope_mass(const SingularEnvelope& env) {
  // |sin(rx/2)| tiles [-pi, pi] with r periods; by symmetry the full mass is
  // (1/pi) integral_0^pi min-form dt = (2/pi) I(pi/2).
  return (2.0 / kPi) *
         envelope_integral(env.uniform_cap, env.sin_bound, kPi / 2.0);
}

double envelope_zone_mass(const SingularEnvelope& env, double half_width) {
  // Mass of one zone [s - half_width, s + half_width] around a singular
  // point, normalized by 1/(2 pi).
  const double tau = std::min(env.r * half_width / 2.0, kPi / 2.0);
  return (2.0 / (kPi * env.r)) *
         envelope_integral(env.uniform_cap, env.sin_bound, tau);
}

json NormReport::to_json() const {
  json j;
  j["functional"] = functional;
  j["params"] = params;
  j["value"] = value;
  j["error_estimate"] = error_estimate;
  j["quadrature_error"] = quadrature_error;
  j["envelope_mass"] = envelope_mass;
  j["panels"] = panels_used;
  j["flags"] = flags;
  return j;
}

// ---------------------------------------------------------------------------
// Generic adaptive engine: GK15 panels, always bisect the worst error.

namespace {

// QUADPACK dqk15 abscissae and weights.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct PanelResult {
  double integral = 0.0;  // of |f|
  double err = 0.0;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = std::abs(f(center));
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double fv[15];
  fv[7] = fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = std::abs(f(center - dx));
    const double f2 = std::abs(f(center + dx));
    fv[i] = f1;
    fv[14 - i] = f2;
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  const double resabs = resk * std::abs(h);
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int i = 0; i < 7; ++i)
    resasc +=
        kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
  resasc *= std::abs(h);
  PanelResult out;
  out.integral = resk * h;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
  out.err = err;
  return out;
}

struct Panel {
  double a, b;
  PanelResult res;
};

}  // namespace

NormReport l1_norm(const std::function<double(double)>& integrand,
                   const QuadratureSpec& spec,
                   const std::optional<SingularEnvelope>& envelope) {
  if (!(spec.abs_tol > 0.0)) throw ConfigError("abs tolerance must be > 0");
  NormReport report;
  report.functional = "l1_norm";

  // Initial breakpoints: domain ends, singular-zone edges, caller seeds.
  std::vector<double> cuts{-kPi, kPi};
  std::vector<std::pair<double, double>> excluded;
  const double eps = spec.exclusion_radius;
  for (double s : spec.singular_points) {
    if (s < -kPi - 1e-12 || s > kPi + 1e-12) continue;
    if (eps > 0.0) {
      const double lo = std::max(s - eps, -kPi);
      const double hi = std::min(s + eps, kPi);
      excluded.emplace_back(lo, hi);
      cuts.push_back(lo);
      cuts.push_back(hi);
    } else {
      cuts.push_back(s);
    }
  }
  for (double b : spec.seed_breakpoints)
    if (b > -kPi && b < kPi) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(
      std::unique(cuts.begin(), cuts.end(),
                  [](double a, double b) { return std::abs(a - b) < 1e-14; }),
      cuts.end());

  if (!excluded.empty() && !envelope)
    throw NoCertificateError(
        "excluded singular zones need an envelope to bound their mass");

  const auto in_excluded = [&](double lo, double hi) {
    for (const auto& z : excluded)
      if (lo >= z.first - 1e-15 && hi <= z.second + 1e-15) return true;
    return false;
  };

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    if (in_excluded(cuts[i], cuts[i + 1])) continue;
    panels.push_back({cuts[i], cuts[i + 1],
                      gk15(integrand, cuts[i], cuts[i + 1])});
  }

  using QueueItem = std::pair<double, std::size_t>;  // (err, panel index)
  std::priority_queue<QueueItem> queue;
  double total_err = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    total_err += panels[i].res.err;
    queue.emplace(panels[i].res.err, i);
  }

  // All panel bookkeeping is in raw integral units; the report divides by 2pi.
  const double raw_tol = spec.abs_tol * 2.0 * kPi;
  while (total_err > 0.9 * raw_tol &&
         static_cast<long long>(panels.size()) < spec.max_panels &&
         !queue.empty()) {
    const auto [err, idx] = queue.top();
    queue.pop();
    if (err != panels[idx].res.err) continue;  // stale queue entry
    const Panel worst = panels[idx];
    if (worst.b - worst.a < 1e-15) continue;   // cannot split further
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left{worst.a, mid, gk15(integrand, worst.a, mid)};
    Panel right{mid, worst.b, gk15(integrand, mid, worst.b)};
    total_err += left.res.err + right.res.err - worst.res.err;
    panels[idx] = left;
    queue.emplace(left.res.err, idx);
    panels.push_back(right);
    queue.emplace(right.res.err, panels.size() - 1);
  }

  if (total_err > raw_tol)
    throw NumericError(
        "quadrature tolerance unreachable within the panel budget");

  std::sort(panels.begin(), panels.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  Accumulator total;
  for (const auto& p : panels) total.add(p.res.integral);

  double zone_mass = 0.0;
  if (!excluded.empty() && envelope)
    zone_mass = envelope_zone_mass(*envelope, eps) *
                static_cast<double>(excluded.size());

  report.value = total.value() / (2.0 * kPi);
  report.quadrature_error = total_err / (2.0 * kPi);
  report.envelope_mass = zone_mass;  // already 1/(2 pi)-normalized
  report.error_estimate = report.quadrature_error + report.envelope_mass;
  report.panels_used = static_cast<long long>(panels.size());
  if (!excluded.empty()) report.flags.push_back("excluded-zones");
  return report;
}

// ---------------------------------------------------------------------------
// Sign-segmentation engine for trig polynomials.  Zeros of the integrand are
// bracketed on a Nyquist-dense scan and polished; between consecutive zeros
// the integral of |p| is |P(b) - P(a)| exactly.  Any partition gives a lower
// bound of the true integral, so the midpoint audit pass measures how much
// mass the first pass missed.

namespace {

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double fa, double fb, double tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 90; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p <
          std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

struct SegmentationResult {
  double integral = 0.0;     // refined zero set
  double audit_delta = 0.0;  // mass the first pass would have missed
  long long segments = 0;
};

SegmentationResult segment_abs_integral(const TrigPoly& poly, double lo,
                                        double hi, unsigned jobs,
                                        long long densify) {
  const long long deg = std::max<long long>(poly.degree(), 1);
  const double span = hi - lo;
  // ~20 samples per period of the top harmonic at the fine resolution; zero
  // pairs from interleaved root families sit ~pi/(4 deg) apart, so the
  // half-resolution audit pass must still resolve them.  `densify`
  // escalates when the audit misses the requested tolerance.
  long long cells = static_cast<long long>(
      std::ceil(5.0 * double(deg) * span / (2.0 * kPi))) * densify;
  cells = std::clamp<long long>(cells, 64, 1LL << 20);
  const long long n_samples = 4 * cells;  // step = span / n_samples
  const double h = span / double(n_samples);

  std::vector<double> xs(n_samples + 1), gs(n_samples + 1);
  for (long long j = 0; j <= n_samples; ++j) xs[j] = lo + h * double(j);
  xs[n_samples] = hi;
  parallel_for(static_cast<std::size_t>(n_samples) + 1, jobs,
               [&](std::size_t j) { gs[j] = poly.eval(xs[j]); });

  // Fine pass: every adjacent sample pair; exact sample zeros become nodes.
  struct Bracket {
    double a, b, fa, fb;
  };
  std::vector<Bracket> brackets;
  std::vector<double> exact_zeros;
  for (long long j = 0; j < n_samples; ++j) {
    if (gs[j] == 0.0 && j > 0) exact_zeros.push_back(xs[j]);
    if (gs[j] != 0.0 && gs[j + 1] != 0.0 && (gs[j] > 0) != (gs[j + 1] > 0))
      brackets.push_back({xs[j], xs[j + 1], gs[j], gs[j + 1]});
  }

  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), jobs, [&](std::size_t i) {
    const auto& br = brackets[i];
    roots[i] = brent_root([&](double x) { return poly.eval(x); }, br.a, br.b,
                          br.fa, br.fb, 1e-13);
  });

  std::vector<double> nodes_fine{lo};
  {
    std::size_t ri = 0, ei = 0;
    while (ri < roots.size() || ei < exact_zeros.size()) {
      if (ei >= exact_zeros.size() ||
          (ri < roots.size() && roots[ri] <= exact_zeros[ei]))
        nodes_fine.push_back(roots[ri++]);
      else
        nodes_fine.push_back(exact_zeros[ei++]);
    }
  }
  nodes_fine.push_back(hi);

  // Coarse pass: stride-2 sample pairs, reusing the fine zeros that fall
  // inside each coarse crossing interval (no extra polishing).
  std::vector<double> nodes_coarse{lo};
  {
    std::size_t nf = 1;  // skip the lo node
    for (long long j = 0; j + 2 <= n_samples; j += 2) {
      const double fa = gs[j], fb = gs[j + 2];
      const bool crossing =
          (fa == 0.0 && j > 0) ||
          (fa != 0.0 && fb != 0.0 && (fa > 0) != (fb > 0));
      if (!crossing) continue;
      while (nf + 1 < nodes_fine.size() && nodes_fine[nf] < xs[j]) ++nf;
      if (nf + 1 < nodes_fine.size() && nodes_fine[nf] <= xs[j + 2])
        nodes_coarse.push_back(nodes_fine[nf++]);
    }
  }
  nodes_coarse.push_back(hi);

  const auto sum_segments = [&](const std::vector<double>& nodes) {
    std::vector<double> prim(nodes.size());
    parallel_for(nodes.size(), jobs,
                 [&](std::size_t i) { prim[i] = poly.primitive(nodes[i]); });
    Accumulator acc;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
      acc.add(std::abs(prim[i + 1] - prim[i]));
    return acc.value();
  };

  SegmentationResult out;
  out.integral = sum_segments(nodes_fine);
  out.audit_delta = std::abs(out.integral - sum_segments(nodes_coarse));
  out.segments = static_cast<long long>(nodes_fine.size()) - 1;
  return out;
}

}  // namespace

NormReport l1_norm(const TrigPoly& poly, const QuadratureSpec& spec,
                   const std::optional<SingularEnvelope>& envelope) {
  if (!(spec.abs_tol > 0.0)) throw ConfigError("abs tolerance must be > 0");
  NormReport report;
  report.functional = "l1_norm";
  report.flags.push_back("trig-segmentation");

  // Pure cosine polynomials are even, and |pure sine| is even, so both
  // integrate over [0, pi] twice; mixed polynomials take the full domain.
  const bool halved = !poly.has_sin_terms() ||
                      (!poly.has_cos_terms() && poly.constant() == 0.0);
  const double lo = halved ? 0.0 : -kPi;
  const double fold = halved ? 2.0 : 1.0;

  // Lobe capture converges quadratically in the scan step, so the audit
  // delta overstates the fine pass's residual by about the Richardson
  // factor 3; escalate the density when the estimate still misses.
  for (long long densify : {1LL, 3LL, 9LL}) {
    SegmentationResult seg =
        segment_abs_integral(poly, lo, kPi, spec.jobs, densify);
    const double integral = fold * seg.integral;
    const double audit = fold * seg.audit_delta / 3.0;
    const long long segments =
        static_cast<long long>(fold) * seg.segments;
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() *
                            (1.0 + poly.abs_coeff_sum()) *
                            std::sqrt(double(segments + 1));
    report.value = integral / (2.0 * kPi);
    report.quadrature_error = (audit + rounding) / (2.0 * kPi);
    report.panels_used = segments;
    if (report.quadrature_error <= spec.abs_tol) break;
  }
  if (envelope) report.envelope_mass = gmseries::envelope_mass(*envelope);
  report.error_estimate = report.quadrature_error + report.envelope_mass;
  if (report.quadrature_error > spec.abs_tol)
    throw NumericError("segmentation audit exceeded the requested tolerance");
  return report;
}

NormReport cauchy_gap(const CoefficientSequence& seq, SeriesKind kind,
                      long long n, long long m, const QuadratureSpec& spec) {
  if (n < 1 || m < n) throw ConfigError("cauchy_gap needs 1 <= n <= m");
  NormReport report = l1_norm(TrigPoly::block(seq, kind, n, m), spec);
  report.functional = "cauchy_gap";
  report.params = {{"n", n}, {"m", m}, {"kind", to_string(kind)}};
  return report;
}

NormReport vn_sn_gap(const CoefficientSequence& seq, SeriesKind kind,
                     long long n, const QuadratureSpec& spec) {
  if (n < 0) throw ConfigError("vn_sn_gap needs n >= 0");
  NormReport report = l1_norm(TrigPoly::vn_minus_sn(seq, kind, n), spec);
  report.functional = "vn_sn_gap";
  report.params = {{"n", n}, {"kind", to_string(kind)}};
  return report;
}

NormReport sn_f_gap(const CoefficientSequence& seq, SeriesKind kind,
                    long long n, long long r, const QuadratureSpec& spec,
                    long long horizon) {
  if (n < 0 || r < 1) throw ConfigError("sn_f_gap needs n >= 0, r >= 1");
  if (horizon <= n + 1) throw ConfigError("sn_f_gap horizon must exceed n + 1");
  if (horizon > (1LL << 18))
    throw ConfigError("sn_f_gap horizon is limited to 2^18");

  // Certified envelope for the series mass beyond the horizon: the tail is
  // pointwise below min(sum |a_k|, (TV + boundary)/(2|sin(rx/2)|)).  The
  // probe reaches 8x the horizon so the power fit sees ~0.9 decades.
  const long long tail_probe = std::min(8 * horizon, 1LL << 21);
  const auto tail_coeffs = seq.copy_range(horizon + 1, tail_probe + r);
  const auto tc = [&](long long k) {
    return tail_coeffs[static_cast<std::size_t>(k - (horizon + 1))];
  };
  TailSum var_tail = tail_sum_with_fit(
      [&](long long k) { return std::abs(tc(k) - tc(k + r)); }, horizon + 1,
      tail_probe);
  if (!var_tail.summable)
    throw NoCertificateError(
        "variation tail beyond the horizon is not summable");
  double probe_coeff = 0.0;
  for (long long k = tail_probe + 1; k <= tail_probe + r; ++k)
    probe_coeff = std::max(probe_coeff, std::abs(tc(k)));
  if (probe_coeff > 2.0 * var_tail.tail_estimate + 1e-12)
    throw NoCertificateError(
        "coefficients do not decay to zero within the fitted variation tail");
  Accumulator boundary;
  for (long long k = horizon + 1; k <= horizon + r; ++k)
    boundary.add(std::abs(tc(k)));
  TailSum abs_tail = tail_sum_with_fit(
      [&](long long k) { return std::abs(tc(k)); }, horizon + 1, tail_probe);

  SingularEnvelope env;
  env.sin_bound = var_tail.total() + boundary.value();
  env.r = r;
  env.uniform_cap = abs_tail.summable
                        ? abs_tail.total()
                        : std::numeric_limits<double>::infinity();

  NormReport report =
      l1_norm(TrigPoly::block(seq, kind, n + 1, horizon), spec, env);
  report.functional = "sn_f_gap";
  report.params = {{"n", n},
                   {"r", r},
                   {"horizon", horizon},
                   {"kind", to_string(kind)}};
  report.flags.push_back("f-approximated-by-S_horizon");
  report.flags.push_back("assumes-fitted-variation-tail");
  if (!std::isfinite(report.envelope_mass)) {
    report.flags.push_back("tail-envelope-unbounded-at-singular-set");
    report.error_estimate = report.quadrature_error;
  } else if (report.envelope_mass > spec.abs_tol) {
    report.flags.push_back("tail-envelope-dominates");
  }
  return report;
}

Theorem4Bound theorem4_bound(const CoefficientSequence& seq,
                             const BetaSpec& beta, long long n,
                             long long horizon) {
  if (n < 1) throw ConfigError("theorem4_bound needs n >= 1");
  Theorem4Bound out;
  out.beta_term = beta_value(beta, seq, n + 1) * std::log(double(n + 1));
  out.tail = beta_series_tail(beta, seq, n + 1, horizon);
  if (!out.tail.summable)
    throw NoCertificateError("beta tail sum is not summable");
  out.value = out.beta_term + out.tail.total();
  return out;
}

}  // namespace gmseries
