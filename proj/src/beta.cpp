#include "gmseries/beta.hpp"

#include <cmath>
#include <limits>
#include <mutex>

namespace gmseries {

std::string to_string(BetaVariant v) {
  switch (v) {
    case BetaVariant::kB1: return "b1";
    case BetaVariant::kB2: return "b2";
    case BetaVariant::kB3: return "b3";
    case BetaVariant::kB4: return "b4";
    case BetaVariant::kB5: return "b5";
    case BetaVariant::kB6: return "b6";
    case BetaVariant::kCustom: return "custom";
  }
  return "?";
}

BetaVariant beta_variant_from_string(const std::string& name) {
  if (name == "b1") return BetaVariant::kB1;
  if (name == "b2") return BetaVariant::kB2;
  if (name == "b3") return BetaVariant::kB3;
  if (name == "b4") return BetaVariant::kB4;
  if (name == "b5") return BetaVariant::kB5;
  if (name == "b6") return BetaVariant::kB6;
  if (name == "custom") return BetaVariant::kCustom;
  throw ConfigError("unknown beta variant: " + name);
}

BetaSpec BetaSpec::b2(long long N) {
  if (N < 0) throw ConfigError("b2 needs N >= 0");
  BetaSpec s;
  s.variant = BetaVariant::kB2;
  s.window = N;
  return s;
}

BetaSpec BetaSpec::b3(long long N, double c, bool strict_integer) {
  if (N < 0) throw ConfigError("b3 needs N >= 0");
  if (!(c > 1.0)) throw ConfigError("b3 needs c > 1");
  if (strict_integer && c != std::floor(c))
    throw ConfigError("b3 strict-integer mode requires integer c");
  BetaSpec s;
  s.variant = BetaVariant::kB3;
  s.window = N;
  s.c = c;
  s.strict_integer_c = strict_integer;
  return s;
}

BetaSpec BetaSpec::b4(double c) {
  if (!(c > 1.0)) throw ConfigError("b4 needs c > 1");
  BetaSpec s;
  s.variant = BetaVariant::kB4;
  s.c = c;
  return s;
}

BetaSpec BetaSpec::b5(double c) {
  if (!(c > 1.0)) throw ConfigError("b5 needs c > 1");
  BetaSpec s;
  s.variant = BetaVariant::kB5;
  s.c = c;
  return s;
}

BetaSpec BetaSpec::b6(double c, long long horizon) {
  if (!(c > 1.0)) throw ConfigError("b6 needs c > 1");
  if (horizon < 4) throw ConfigError("b6 needs a horizon >= 4");
  BetaSpec s;
  s.variant = BetaVariant::kB6;
  s.c = c;
  s.horizon = horizon;
  return s;
}

json BetaSpec::to_json() const {
  json j;
  j["variant"] = to_string(variant);
  if (variant == BetaVariant::kB2 || variant == BetaVariant::kB3)
    j["N"] = window;
  if (variant == BetaVariant::kB3 || variant == BetaVariant::kB4 ||
      variant == BetaVariant::kB5 || variant == BetaVariant::kB6)
    j["c"] = c;
  if (variant == BetaVariant::kB6) j["horizon"] = horizon;
  return j;
}

BetaSpec BetaSpec::from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant"))
    throw ConfigError("beta spec must carry a \"variant\"");
  const auto v = beta_variant_from_string(j["variant"].get<std::string>());
  switch (v) {
    case BetaVariant::kB1: return b1();
    case BetaVariant::kB2: return b2(j.value("N", 0LL));
    case BetaVariant::kB3:
      return b3(j.value("N", 0LL), j.value("c", 2.0),
                j.value("strict_integer_c", false));
    case BetaVariant::kB4: return b4(j.value("c", 2.0));
    case BetaVariant::kB5: return b5(j.value("c", 2.0));
    case BetaVariant::kB6:
      return b6(j.value("c", 2.0), j.value("horizon", 100000LL));
    case BetaVariant::kCustom:
      throw ConfigError("custom beta cannot be built from JSON");
  }
  throw ConfigError("unreachable beta variant");
}

// ---------------------------------------------------------------------------
// b6 suffix-max table: g(m) = (ln m / m) sum_{k=m}^{2m} |a_k| precomputed for
// m <= horizon, then max_{m' >= m} g(m') answered in O(1) with its argmax.

struct BetaSpec::Beta6Cache {
  std::mutex mutex;
  const void* seq_key = nullptr;
  double c = 0.0;
  long long horizon = 0;
  std::vector<double> suffix_max;      // index m in [1, horizon]
  std::vector<long long> suffix_argmax;
};

namespace {

long long floor_div_clamped(long long n, double c) {
  const long long m = static_cast<long long>(std::floor(double(n) / c));
  return std::max<long long>(m, 1);
}

}  // namespace

struct Beta6Eval {
  static Beta6Result eval(const BetaSpec& spec, const CoefficientSequence& seq,
                          long long n) {
    if (n < 2) throw ConfigError("b6 requires n >= 2 (ln n > 0)");
    if (!(spec.c > 1.0)) throw ConfigError("b6 requires c > 1");
    if (!spec.b6_cache_) spec.b6_cache_ = std::make_shared<BetaSpec::Beta6Cache>();
    auto& cache = *spec.b6_cache_;
    std::lock_guard<std::mutex> lock(cache.mutex);
    rebuild_if_needed(cache, spec, seq);
    const long long lo = floor_div_clamped(n, spec.c);
    if (lo > spec.horizon)
      throw ConfigError("b6 window start exceeds the truncation horizon");
    const double mx = cache.suffix_max[static_cast<std::size_t>(lo)];
    const long long arg = cache.suffix_argmax[static_cast<std::size_t>(lo)];
    if (arg >= spec.horizon)
      throw NumericError(
          "b6 max attained at the truncation horizon; raise the horizon");
    Beta6Result res;
    res.value = mx / std::log(double(n));
    res.argmax = arg;
    return res;
  }

  static void rebuild_if_needed(BetaSpec::Beta6Cache& cache,
                                const BetaSpec& spec,
                                const CoefficientSequence& seq) {
    const void* key = seq.identity();
    if (cache.seq_key == key && cache.c == spec.c &&
        cache.horizon == spec.horizon)
      return;
    const long long H = spec.horizon;
    seq.prefetch(2 * H);
    cache.suffix_max.assign(static_cast<std::size_t>(H) + 1, 0.0);
    cache.suffix_argmax.assign(static_cast<std::size_t>(H) + 1, H);
    double running = -1.0;
    long long running_arg = H;
    for (long long m = H; m >= 1; --m) {
      const double g =
          m >= 2 ? std::log(double(m)) / double(m) * seq.abs_window_sum(m, 2 * m)
                 : 0.0;
      if (g > running) {
        running = g;
        running_arg = m;
      }
      cache.suffix_max[static_cast<std::size_t>(m)] = running;
      cache.suffix_argmax[static_cast<std::size_t>(m)] = running_arg;
    }
    cache.seq_key = key;
    cache.c = spec.c;
    cache.horizon = spec.horizon;
  }
};

Beta6Result beta6_with_argmax(const BetaSpec& spec,
                              const CoefficientSequence& seq, long long n) {
  return Beta6Eval::eval(spec, seq, n);
}

double beta_value(const BetaSpec& spec, const CoefficientSequence& seq,
                  long long n) {
  if (n < 1) throw ConfigError("beta requires n >= 1");
  switch (spec.variant) {
    case BetaVariant::kB1:
      return std::abs(seq.coeff_real(n));
    case BetaVariant::kB2:
      return seq.abs_window_sum(n, n + spec.window);
    case BetaVariant::kB3: {
      if (!(spec.c > 1.0)) throw ConfigError("b3 requires c > 1");
      if (spec.strict_integer_c && spec.c != std::floor(spec.c))
        throw ConfigError("b3 strict-integer mode requires integer c");
      Accumulator acc;
      double scale = 1.0;
      for (long long v = 0; v <= spec.window; ++v) {
        const double idx = std::floor(scale * double(n));
        if (idx > 9.0e15) break;  // indices beyond any representable support
        acc.add(std::abs(seq.coeff_real(static_cast<long long>(idx))));
        scale *= spec.c;
      }
      return acc.value();
    }
    case BetaVariant::kB4: {
      if (!(spec.c > 1.0)) throw ConfigError("b4 requires c > 1");
      const long long hi = static_cast<long long>(std::floor(spec.c * n));
      return std::abs(seq.coeff_real(n)) + seq.abs_over_k_window(n + 1, hi);
    }
    case BetaVariant::kB5: {
      if (!(spec.c > 1.0)) throw ConfigError("b5 requires c > 1");
      const long long lo = floor_div_clamped(n, spec.c);
      const long long hi = static_cast<long long>(std::floor(spec.c * n));
      return seq.abs_over_k_window(lo, hi);
    }
    case BetaVariant::kB6:
      return Beta6Eval::eval(spec, seq, n).value;
    case BetaVariant::kCustom: {
      if (!spec.custom) throw ConfigError("custom beta has no callable");
      const double v = spec.custom(seq, n);
      if (v < 0.0) throw NumericError("custom beta produced a negative value");
      return v;
    }
  }
  throw ConfigError("unreachable beta variant");
}

// ---------------------------------------------------------------------------

TailSum tail_sum_with_fit(const std::function<double(long long)>& summand,
                          long long from, long long horizon) {
  if (horizon <= from) throw ConfigError("tail sum needs horizon > from");
  TailSum out;
  Accumulator acc;
  const long long fit_lo = std::max(from, horizon / 10);
  // Two regressions over the last decade of summands: ln s against ln k
  // (power family s ~ C k^p), and ln(k s) against ln ln k (the critical
  // log family k s ~ C (ln k)^beta, which separates 1/(k ln^2 k) from the
  // divergent 1/(k ln k)).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double tw = 0, tz = 0, tww = 0, twz = 0;
  double fit_xmin = 0, fit_xmax = 0;
  long long window_len = 0, window_nonzero = 0;
  for (long long k = from; k <= horizon; ++k) {
    const double s = summand(k);
    acc.add(s);
    if (k >= fit_lo) {
      ++window_len;
      if (s > 0.0 && std::isfinite(s)) {
        ++window_nonzero;
        const double lx = std::log(double(k));
        const double ly = std::log(s);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        const double w = std::log(lx);            // ln ln k
        const double z = std::log(double(k) * s); // ln(k s)
        tw += w;
        tz += z;
        tww += w * w;
        twz += w * z;
        if (window_nonzero == 1) {
          fit_xmin = fit_xmax = double(k);
        } else {
          fit_xmax = double(k);
        }
      }
    }
  }
  out.value = acc.value();

  if (window_nonzero == 0) {
    // The summands died out before the fit window: nothing left to bound.
    out.tail_estimate = 0.0;
    out.summable = true;
    out.flags.push_back(window_len > 0 ? "support-exhausted" : "empty-window");
    return out;
  }
  const double span = std::log10(fit_xmax / std::max(fit_xmin, 1.0));
  if (window_nonzero < 4 || span < 0.3) {
    out.tail_estimate = 0.0;
    out.flags.push_back("no-tail-fit");
    out.summable = false;
    return out;
  }
  const double n = double(window_nonzero);
  const double p = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double lnC = (sy - p * sx) / n;
  out.fit_slope = p;
  out.fit_valid = true;
  const double density = double(window_nonzero) / double(window_len);
  const double lnH = std::log(double(horizon));

  if (p < -1.25) {
    // Clearly subcritical: sum_{k>H} C k^p ~ density C H^{p+1} / (-(p+1)).
    out.tail_estimate = density * std::exp(lnC) *
                        std::pow(double(horizon), p + 1.0) / (-(p + 1.0));
    out.flags.push_back("power-tail");
  } else if (p < -1.02) {
    // Near-critical band: decide through the log family.
    const double beta = (n * twz - tw * tz) / (n * tww - tw * tw);
    const double lnD = (tz - beta * tw) / n;
    if (beta < -1.05) {
      // sum_{k>H} D (ln k)^beta / k ~ density D (ln H)^{beta+1} / (-(beta+1))
      out.tail_estimate = density * std::exp(lnD) *
                          std::pow(lnH, beta + 1.0) / (-(beta + 1.0));
      out.flags.push_back("log-family-tail");
    } else {
      out.tail_estimate = std::numeric_limits<double>::infinity();
      out.flags.push_back("log-family-critical");
    }
  } else {
    out.tail_estimate = std::numeric_limits<double>::infinity();
    out.flags.push_back("tail-not-decaying");
  }
  // Sanity backstop: a remainder estimate an order of magnitude above the
  // accumulated sum means the window carries no real evidence.
  const bool sane =
      std::isfinite(out.tail_estimate) &&
      out.tail_estimate <= 10.0 * std::max(std::abs(out.value), 1e-12);
  out.summable = sane;
  if (std::isfinite(out.tail_estimate) && !sane)
    out.flags.push_back("not-cauchy");
  return out;
}

TailSum beta_series_tail(const BetaSpec& spec, const CoefficientSequence& seq,
                         long long from, long long horizon) {
  if (from < 1) throw ConfigError("beta_series_tail needs from >= 1");
  if (horizon < 1000 * from)
    throw ConfigError(
        "beta_series_tail needs >= 3 decades of data (horizon >= 1000*from)");
  long long start = from;
  std::vector<std::string> extra;
  if (spec.variant == BetaVariant::kB6 && from < 2) {
    start = 2;
    extra.push_back("b6-start-raised-to-2");
  }
  seq.prefetch(std::min<long long>(2 * horizon, 1LL << 21));
  TailSum out = tail_sum_with_fit(
      [&](long long k) { return beta_value(spec, seq, k) / double(k); }, start,
      horizon);
  for (auto& f : extra) out.flags.push_back(f);
  return out;
}

}  // namespace gmseries
