#include "gmseries/classes.hpp"

#include <cmath>

namespace gmseries {

void validate_grid(const std::vector<long long>& grid) {
  if (grid.empty()) throw ConfigError("grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw ConfigError("grid entries must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw ConfigError("grid must be sorted strictly ascending");
  }
}

double block_variation(const CoefficientSequence& seq, long long m,
                       long long r) {
  if (m < 1 || r < 1) throw ConfigError("block_variation needs m, r >= 1");
  const auto a = seq.copy_range(m, 2 * m - 1 + r);
  Accumulator acc;
  for (long long k = m; k <= 2 * m - 1; ++k)
    acc.add(std::abs(a[static_cast<std::size_t>(k - m)] -
                     a[static_cast<std::size_t>(k - m + r)]));
  return acc.value();
}

double shifted_block_variation(const CoefficientSequence& seq, long long start,
                               long long count, long long q) {
  if (start < 1 || count < 1 || q < 1)
    throw ConfigError("shifted_block_variation needs start, count, q >= 1");
  const auto a = seq.copy_range(start, start + count - 1 + q);
  Accumulator acc;
  for (long long k = start; k <= start + count - 1; ++k)
    acc.add(std::abs(a[static_cast<std::size_t>(k - start)] -
                     a[static_cast<std::size_t>(k - start + q)]));
  return acc.value();
}

TailSum tail_variation(const CoefficientSequence& seq, long long m, long long r,
                       long long horizon) {
  if (m < 1 || r < 1) throw ConfigError("tail_variation needs m, r >= 1");
  if (horizon < 2 * m)
    throw ConfigError("tail_variation needs horizon >= 2m");
  const auto a = seq.copy_range(m, horizon + r);
  return tail_sum_with_fit(
      [&](long long k) {
        return std::abs(a[static_cast<std::size_t>(k - m)] -
                        a[static_cast<std::size_t>(k - m + r)]);
      },
      m, horizon);
}

std::string to_string(SequenceClassId id) {
  switch (id) {
    case SequenceClassId::kM: return "M";
    case SequenceClassId::kQM: return "QM";
    case SequenceClassId::kRBVS: return "RBVS";
    case SequenceClassId::kGM: return "GM";
    case SequenceClassId::kGBVS: return "GBVS";
    case SequenceClassId::kNBVS: return "NBVS";
    case SequenceClassId::kMVBV: return "MVBV";
  }
  return "?";
}

SequenceClassId class_id_from_string(const std::string& name) {
  if (name == "M") return SequenceClassId::kM;
  if (name == "QM") return SequenceClassId::kQM;
  if (name == "RBVS") return SequenceClassId::kRBVS;
  if (name == "GM") return SequenceClassId::kGM;
  if (name == "GBVS") return SequenceClassId::kGBVS;
  if (name == "NBVS") return SequenceClassId::kNBVS;
  if (name == "MVBV") return SequenceClassId::kMVBV;
  throw ConfigError("unknown class id: " + name);
}

std::string ClassSpec::label() const {
  switch (id) {
    case SequenceClassId::kGM:
    case SequenceClassId::kRBVS:
      return to_string(id) + "(" + to_string(beta.variant) + "," +
             std::to_string(r) + ")";
    case SequenceClassId::kQM:
      return "QM(tau=" + std::to_string(tau) + ")";
    case SequenceClassId::kGBVS:
      return "GBVS(N=" + std::to_string(window) + ")";
    case SequenceClassId::kMVBV:
      return "MVBV(c=" + std::to_string(c) + ")";
    default:
      return to_string(id);
  }
}

json ClassSpec::to_json() const {
  json j;
  j["class"] = to_string(id);
  if (id == SequenceClassId::kGM || id == SequenceClassId::kRBVS) {
    j["r"] = r;
    j["beta"] = beta.to_json();
  }
  if (id == SequenceClassId::kQM) j["tau"] = tau;
  if (id == SequenceClassId::kGBVS) j["N"] = window;
  if (id == SequenceClassId::kMVBV) j["c"] = c;
  return j;
}

ClassSpec ClassSpec::from_json(const json& j) {
  ClassSpec spec;
  spec.id = class_id_from_string(j.value("class", std::string("GM")));
  spec.r = j.value("r", 1LL);
  if (spec.r < 1) throw ConfigError("class step r must be >= 1");
  if (j.contains("beta")) spec.beta = BetaSpec::from_json(j["beta"]);
  spec.tau = j.value("tau", 0.0);
  if (spec.id == SequenceClassId::kQM && !(spec.tau > 0.0))
    throw ConfigError("QM needs tau > 0");
  spec.window = j.value("N", 0LL);
  spec.c = j.value("c", 2.0);
  if (spec.id == SequenceClassId::kMVBV && !(spec.c > 1.0))
    throw ConfigError("MVBV needs c > 1");
  return spec;
}

namespace {

struct RatioPoint {
  double variation = 0.0;
  double majorant = 0.0;
};

RatioPoint scan_point(const CoefficientSequence& seq, const ClassSpec& spec,
                      long long m, long long horizon) {
  RatioPoint pt;
  switch (spec.id) {
    case SequenceClassId::kM: {
      // Total increase plus negativity over the block; both are 0 exactly
      // for a nonincreasing nonnegative sequence.
      const auto a = seq.copy_range(m, 2 * m);
      Accumulator acc;
      for (long long k = m; k <= 2 * m - 1; ++k) {
        const double cur = a[static_cast<std::size_t>(k - m)];
        const double nxt = a[static_cast<std::size_t>(k - m + 1)];
        acc.add(std::max(0.0, nxt - cur));
        acc.add(std::max(0.0, -cur));
      }
      pt.variation = acc.value();
      pt.majorant = std::abs(seq.coeff_real(m));
      break;
    }
    case SequenceClassId::kQM: {
      if (!(spec.tau > 0.0)) throw ConfigError("QM needs tau > 0");
      const auto a = seq.copy_range(m, 2 * m);
      Accumulator acc;
      for (long long k = m; k <= 2 * m - 1; ++k) {
        const double cur = a[static_cast<std::size_t>(k - m)] *
                           std::pow(double(k), -spec.tau);
        const double nxt = a[static_cast<std::size_t>(k - m + 1)] *
                           std::pow(double(k + 1), -spec.tau);
        acc.add(std::max(0.0, nxt - cur));
      }
      pt.variation = acc.value();
      pt.majorant =
          std::abs(seq.coeff_real(m)) * std::pow(double(m), -spec.tau);
      break;
    }
    case SequenceClassId::kRBVS:
      pt.variation = tail_variation(seq, m, spec.r, horizon).total();
      pt.majorant = beta_value(spec.beta, seq, m);
      break;
    case SequenceClassId::kGM:
      pt.variation = block_variation(seq, m, spec.r);
      pt.majorant = beta_value(spec.beta, seq, m);
      break;
    case SequenceClassId::kGBVS: {
      pt.variation = block_variation(seq, m, 1);
      double mx = 0.0;
      for (long long k = m; k <= m + spec.window; ++k)
        mx = std::max(mx, std::abs(seq.coeff_real(k)));
      pt.majorant = mx;
      break;
    }
    case SequenceClassId::kNBVS:
      pt.variation = block_variation(seq, m, 1);
      pt.majorant =
          std::abs(seq.coeff_real(m)) + std::abs(seq.coeff_real(2 * m));
      break;
    case SequenceClassId::kMVBV: {
      if (!(spec.c > 1.0)) throw ConfigError("MVBV needs c > 1");
      pt.variation = block_variation(seq, m, 1);
      const long long lo =
          std::max<long long>(1, static_cast<long long>(std::floor(m / spec.c)));
      const long long hi = static_cast<long long>(std::floor(m * spec.c));
      pt.majorant = seq.abs_over_k_window(lo, hi);
      break;
    }
  }
  return pt;
}

// Trend verdict shared by membership and the o(1)/bounded reports.
struct TrendVerdict {
  double slope = 0.0;
  double span = 0.0;
  bool fit_valid = false;
};

TrendVerdict fit_trend(const std::vector<long long>& grid,
                       const std::vector<double>& values) {
  std::vector<double> xs(grid.begin(), grid.end());
  const TrendFit fit = fit_loglog(xs, values);
  return {fit.slope, fit.span_decades, fit.valid};
}

}  // namespace

json MembershipReport::to_json() const {
  json j;
  j["class"] = class_label;
  j["grid"] = grid;
  j["variations"] = variations;
  j["majorants"] = majorants;
  j["ratios"] = ratios;
  j["sup_ratio"] = sup_ratio;
  j["fitted_C"] = fitted_C;
  j["trend_slope"] = trend_slope;
  j["trend_span_decades"] = trend_span_decades;
  j["verdict"] = verdict;
  j["flags"] = flags;
  return j;
}

MembershipReport membership_scan(const CoefficientSequence& seq,
                                 const ClassSpec& spec,
                                 const std::vector<long long>& m_grid,
                                 long long horizon) {
  validate_grid(m_grid);
  MembershipReport rep;
  rep.class_label = spec.label();
  rep.grid = m_grid;
  rep.variations.resize(m_grid.size());
  rep.majorants.resize(m_grid.size());
  rep.ratios.resize(m_grid.size());

  const long long needed =
      spec.id == SequenceClassId::kRBVS ? horizon : 2 * m_grid.back() + spec.r;
  seq.prefetch(std::min(needed, 1LL << 21));

  std::vector<RatioPoint> pts(m_grid.size());
  parallel_for(m_grid.size(), 0, [&](std::size_t i) {
    pts[i] = scan_point(seq, spec, m_grid[i], horizon);
  });

  bool has_inf = false;
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    rep.variations[i] = pts[i].variation;
    rep.majorants[i] = pts[i].majorant;
    if (pts[i].majorant > 0.0) {
      rep.ratios[i] = pts[i].variation / pts[i].majorant;
    } else if (pts[i].variation == 0.0) {
      rep.ratios[i] = 0.0;  // membership holds trivially at this m
      rep.flags.push_back("zero-over-zero@m=" + std::to_string(m_grid[i]));
    } else {
      rep.ratios[i] = std::numeric_limits<double>::infinity();
      rep.flags.push_back("zero-majorant@m=" + std::to_string(m_grid[i]));
      has_inf = true;
    }
    if (std::isfinite(rep.ratios[i]))
      rep.sup_ratio = std::max(rep.sup_ratio, rep.ratios[i]);
  }
  rep.fitted_C = rep.sup_ratio;

  std::vector<double> finite_ratios = rep.ratios;
  for (auto& v : finite_ratios)
    if (!std::isfinite(v)) v = 0.0;
  const TrendVerdict trend = fit_trend(m_grid, finite_ratios);
  rep.trend_slope = trend.slope;
  rep.trend_span_decades = trend.span;

  if (has_inf) {
    rep.verdict = "inconsistent";
  } else if (rep.sup_ratio == 0.0) {
    rep.verdict = "consistent-with-membership";  // variation identically 0
  } else if (!trend.fit_valid || trend.span < 1.0) {
    rep.verdict = "inconclusive";
  } else if (trend.slope > kGrowthSlopeThreshold) {
    rep.verdict =
        trend.span >= kMinTrendSpanDecades ? "inconsistent" : "inconclusive";
  } else {
    rep.verdict = "consistent-with-membership";
  }
  return rep;
}

json RatioReport::to_json() const {
  json j;
  j["name"] = name;
  j["params"] = params;
  j["grid"] = grid;
  j["values"] = values;
  j["sup_value"] = sup_value;
  j["trend_slope"] = trend_slope;
  j["trend_span_decades"] = trend_span_decades;
  j["verdict"] = verdict;
  j["flags"] = flags;
  return j;
}

namespace {

// Boundedness verdict for ratio reports: growth claims need span.
void finish_bounded_report(RatioReport& rep) {
  std::vector<double> finite = rep.values;
  for (auto& v : finite)
    if (!std::isfinite(v)) v = 0.0;
  const TrendVerdict trend = fit_trend(rep.grid, finite);
  rep.trend_slope = trend.slope;
  rep.trend_span_decades = trend.span;
  for (double v : finite) rep.sup_value = std::max(rep.sup_value, v);
  if (!trend.fit_valid || trend.span < 1.0) {
    rep.verdict = "inconclusive";
  } else if (trend.slope > kGrowthSlopeThreshold) {
    rep.verdict = trend.span >= kMinTrendSpanDecades ? "unbounded"
                                                     : "inconclusive";
  } else {
    rep.verdict = "bounded";
  }
}

// o(1) verdict: decay claims need a clearly negative slope.
void finish_o1_report(RatioReport& rep) {
  bool any_nonzero = false;
  for (double v : rep.values)
    if (v != 0.0) any_nonzero = true;
  if (!any_nonzero) {
    rep.verdict = "o1";
    rep.flags.push_back("identically-zero");
    return;
  }
  const TrendVerdict trend = fit_trend(rep.grid, rep.values);
  rep.trend_slope = trend.slope;
  rep.trend_span_decades = trend.span;
  for (double v : rep.values)
    if (std::isfinite(v)) rep.sup_value = std::max(rep.sup_value, v);
  if (!trend.fit_valid || trend.span < 1.0) {
    rep.verdict = "inconclusive";
  } else if (trend.slope <= kDecaySlopeThreshold) {
    rep.verdict = "o1";
  } else {
    rep.verdict = "not-o1";
  }
}

}  // namespace

RatioReport remark1_condition(const BetaSpec& beta,
                              const CoefficientSequence& seq, long long q,
                              long long p, const std::vector<long long>& grid) {
  if (p < 1 || q < 1) throw ConfigError("remark1_condition needs p, q >= 1");
  validate_grid(grid);
  RatioReport rep;
  rep.name = "remark1_condition";
  rep.params = {{"p", p}, {"q", q}, {"beta", beta.to_json()}};
  rep.grid = grid;
  rep.values.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long long n = grid[i];
    const double denom = beta_value(beta, seq, n);
    Accumulator acc;
    for (long long j = 0; j < p; ++j)
      acc.add(beta_value(beta, seq, n + j * q));
    if (denom > 0.0) {
      rep.values[i] = acc.value() / denom;
    } else {
      rep.values[i] = std::numeric_limits<double>::quiet_NaN();
      rep.flags.push_back("zero-beta@n=" + std::to_string(n));
    }
  }
  finish_bounded_report(rep);
  return rep;
}

RatioReport theorem2_hypothesis(const CoefficientSequence& seq,
                                const BetaSpec& beta, double gamma,
                                const std::vector<long long>& grid) {
  if (!(gamma > 1.0)) throw ConfigError("theorem2_hypothesis needs gamma > 1");
  validate_grid(grid);
  RatioReport rep;
  rep.name = "theorem2_hypothesis";
  rep.params = {{"gamma", gamma}, {"beta", beta.to_json()}};
  rep.grid = grid;
  rep.values.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long long n = grid[i];
    Accumulator num;
    for (long long k = std::max<long long>(1, n / 2); k <= n; ++k)
      num.add(beta_value(beta, seq, k));
    const long long lo = std::max<long long>(
        1, static_cast<long long>(std::floor(double(n) / gamma)));
    const long long hi = static_cast<long long>(std::floor(gamma * double(n)));
    const double den = seq.abs_window_sum(lo, hi);
    if (den > 0.0) {
      rep.values[i] = num.value() / den;
    } else if (num.value() == 0.0) {
      rep.values[i] = 0.0;
      rep.flags.push_back("zero-over-zero@n=" + std::to_string(n));
    } else {
      rep.values[i] = std::numeric_limits<double>::infinity();
      rep.flags.push_back("zero-denominator@n=" + std::to_string(n));
    }
  }
  finish_bounded_report(rep);
  return rep;
}

RatioReport theorem2_keystep(const CoefficientSequence& seq, long long r,
                             double gamma,
                             const std::vector<long long>& grid) {
  if (!(gamma > 1.0)) throw ConfigError("theorem2_keystep needs gamma > 1");
  if (r < 1) throw ConfigError("theorem2_keystep needs r >= 1");
  validate_grid(grid);
  RatioReport rep;
  rep.name = "theorem2_keystep";
  rep.params = {{"gamma", gamma}, {"r", r}};
  rep.grid = grid;
  rep.values.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long long n = grid[i];
    const double num = double(n) * std::abs(seq.coeff_real(n));
    const long long lo = std::max<long long>(
        1, static_cast<long long>(std::floor(double(n) / gamma)));
    const long long hi = static_cast<long long>(std::floor(gamma * double(n)));
    const double den = seq.abs_window_sum(lo, hi);
    if (den > 0.0) {
      rep.values[i] = num / den;
    } else if (num == 0.0) {
      rep.values[i] = 0.0;
      rep.flags.push_back("zero-over-zero@n=" + std::to_string(n));
    } else {
      rep.values[i] = std::numeric_limits<double>::infinity();
      rep.flags.push_back("zero-denominator@n=" + std::to_string(n));
    }
  }
  finish_bounded_report(rep);
  return rep;
}

RatioReport theorem3_hypothesis(const CoefficientSequence& seq,
                                const BetaSpec& beta,
                                const std::vector<long long>& grid) {
  validate_grid(grid);
  if (grid.front() < 2) throw ConfigError("theorem3_hypothesis needs n >= 2");
  if (beta.variant == BetaVariant::kB6 && grid.front() < 4)
    throw ConfigError("theorem3_hypothesis with b6 needs n >= 4");
  RatioReport rep;
  rep.name = "theorem3_hypothesis";
  rep.params = {{"beta", beta.to_json()}};
  rep.grid = grid;
  rep.values.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long long n = grid[i];
    Accumulator acc;
    for (long long k = std::max<long long>(1, n / 2); k <= 2 * n - 1; ++k) {
      const double numer = beta_value(beta, seq, k) +
                           beta_value(beta, seq, 2 * k) +
                           std::abs(seq.coeff_real(k)) +
                           std::abs(seq.coeff_real(k + 1));
      acc.add(numer / double(2 * k - n + 2));
    }
    rep.values[i] = acc.value();
  }
  finish_o1_report(rep);
  return rep;
}

RatioReport coefficient_criterion(const CoefficientSequence& seq,
                                  const std::vector<long long>& grid) {
  validate_grid(grid);
  if (grid.front() < 2) throw ConfigError("coefficient_criterion needs n >= 2");
  RatioReport rep;
  rep.name = "coefficient_criterion";
  rep.grid = grid;
  rep.values.assign(grid.size(), 0.0);
  bool zeros = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.values[i] =
        std::abs(seq.coeff_real(grid[i])) * std::log(double(grid[i]));
    if (rep.values[i] == 0.0) zeros = true;
  }
  if (zeros) rep.flags.push_back("zeros-excluded-from-fit");
  finish_o1_report(rep);
  return rep;
}

OrvqmCertificate orvqm_certificate(const CoefficientSequence& seq,
                                   const std::vector<double>& lambdas) {
  OrvqmCertificate cert;
  if (lambdas.size() < 2) {
    cert.detail = "need at least two lambda values";
    return cert;
  }
  const long long N = static_cast<long long>(lambdas.size());
  for (long long n = 1; n < N; ++n) {
    if (lambdas[n] < lambdas[n - 1] || lambdas[n - 1] <= 0.0) {
      cert.first_violation = n + 1;
      cert.detail = "lambda not positive nondecreasing";
      return cert;
    }
  }
  for (long long n = 1; 2 * n <= N; ++n)
    cert.fitted_C = std::max(cert.fitted_C,
                             lambdas[2 * n - 1] / lambdas[n - 1]);
  double prev = std::abs(seq.coeff_real(1)) / lambdas[0];
  for (long long n = 2; n <= N; ++n) {
    const double cur = std::abs(seq.coeff_real(n)) / lambdas[n - 1];
    if (cur > prev * (1.0 + 1e-12)) {
      cert.first_violation = n;
      cert.detail = "a_n / lambda_n not nonincreasing";
      return cert;
    }
    prev = cur;
  }
  cert.ok = true;
  return cert;
}

std::optional<double> qm_search_tau(const CoefficientSequence& seq,
                                    long long prefix,
                                    const std::vector<double>& taus) {
  if (prefix < 2) throw ConfigError("qm_search_tau needs prefix >= 2");
  for (double tau : taus) {
    if (!(tau > 0.0)) continue;
    bool ok = true;
    double prev = std::abs(seq.coeff_real(1));
    for (long long n = 2; n <= prefix && ok; ++n) {
      const double cur = std::abs(seq.coeff_real(n)) * std::pow(double(n), -tau);
      if (cur > prev * (1.0 + 1e-12)) ok = false;
      prev = cur;
    }
    if (ok) return tau;
  }
  return std::nullopt;
}

}  // namespace gmseries
