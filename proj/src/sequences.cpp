#include "gmseries/sequences.hpp"

#include <cmath>
#include <mutex>

namespace gmseries {

std::string to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::kCosine: return "cos";
    case SeriesKind::kSine: return "sin";
    case SeriesKind::kComplexExponential: return "exp";
  }
  return "?";
}

SeriesKind series_kind_from_string(const std::string& name) {
  if (name == "cos" || name == "cosine") return SeriesKind::kCosine;
  if (name == "sin" || name == "sine") return SeriesKind::kSine;
  if (name == "exp" || name == "complex" || name == "complex-exponential")
    return SeriesKind::kComplexExponential;
  throw ConfigError("unknown series kind: " + name);
}

namespace {

using detail::Generator;

json make_descriptor(const std::string& name, json params) {
  json d;
  d["name"] = name;
  d["params"] = std::move(params);
  return d;
}

struct HarmonicGen : Generator {
  double value(long long n) const override { return 1.0 / double(n); }
  json descriptor() const override {
    return make_descriptor("harmonic", json::object());
  }
};

struct InvLogGen : Generator {
  double offset;
  explicit InvLogGen(double off) : offset(off) {}
  double value(long long n) const override {
    return 1.0 / std::log(double(n) + offset);
  }
  json descriptor() const override {
    return make_descriptor("inv_log", json{{"offset", offset}});
  }
};

struct PowerGen : Generator {
  double p;
  explicit PowerGen(double exponent) : p(exponent) {}
  double value(long long n) const override {
    return std::pow(double(n), -p);
  }
  json descriptor() const override {
    return make_descriptor("power", json{{"p", p}});
  }
};

struct ConstantGen : Generator {
  double c;
  explicit ConstantGen(double v) : c(v) {}
  double value(long long) const override { return c; }
  json descriptor() const override {
    return make_descriptor("constant", json{{"value", c}});
  }
};

struct ExplicitGen : Generator {
  std::vector<double> values;  // values[i] = a_{start+i}
  long long start;
  bool monotone_checked;
  ExplicitGen(std::vector<double> v, long long s, bool mono)
      : values(std::move(v)), start(s), monotone_checked(mono) {}
  double value(long long n) const override {
    // With start == 0, values[0] is the constant term a_0 and values[n]
    // holds a_n; with start == 1, values[n-1] holds a_n.
    const long long i = n - start;
    if (i < 0 || i >= static_cast<long long>(values.size())) return 0.0;
    return values[static_cast<std::size_t>(i)];
  }
  double constant_term() const override {
    return (start == 0 && !values.empty()) ? values[0] : 0.0;
  }
  json descriptor() const override {
    json p;
    p["values"] = values;
    if (start != 1) p["start"] = start;
    return make_descriptor(monotone_checked ? "monotone_list" : "explicit", p);
  }
};

// 1/(ln n ln ln n), zero wherever ln ln n <= 0 (n <= e).
double log_log_formula(long long n) {
  if (n < 3) return 0.0;
  const double ln_n = std::log(double(n));
  const double lnln_n = std::log(ln_n);
  if (!(lnln_n > 0.0)) return 0.0;
  return 1.0 / (ln_n * lnln_n);
}

struct Remark5Gen : Generator {
  long long step;  // 3 for the cosine sequence, 2 for the sine sequence
  explicit Remark5Gen(long long s) : step(s) {}
  double value(long long n) const override {
    if (n % step != 1 || n < step + 1) return 0.0;
    return log_log_formula(n);
  }
  json descriptor() const override {
    return make_descriptor(step == 3 ? "remark5_cos" : "remark5_sin",
                           json::object());
  }
};

struct Remark6Gen : Generator {
  long long r;
  explicit Remark6Gen(long long rr) : r(rr) {}
  double value(long long n) const override {
    if (n % r != 0) return 0.0;
    return 1.0 / (double(n) * double(n));
  }
  json descriptor() const override {
    return make_descriptor("remark6", json{{"r", r}});
  }
};

std::vector<double> values_param(const json& params) {
  if (!params.contains("values") || !params["values"].is_array())
    throw ConfigError("generator requires a \"values\" array");
  return params["values"].get<std::vector<double>>();
}

}  // namespace

CoefficientSequence make_generator(const std::string& name,
                                   const json& params) {
  CoefficientSequence seq;
  if (name == "harmonic") {
    seq.gen_ = std::make_shared<HarmonicGen>();
  } else if (name == "inv_log") {
    const double offset = params.value("offset", 1.0);
    if (!(offset >= 1.0)) throw ConfigError("inv_log offset must be >= 1");
    seq.gen_ = std::make_shared<InvLogGen>(offset);
  } else if (name == "power") {
    const double p = params.value("p", 0.0);
    if (!(p > 0.0)) throw ConfigError("power generator needs exponent p > 0");
    seq.gen_ = std::make_shared<PowerGen>(p);
  } else if (name == "constant") {
    seq.gen_ = std::make_shared<ConstantGen>(params.value("value", 1.0));
  } else if (name == "explicit" || name == "monotone_list") {
    auto values = values_param(params);
    const long long start = params.value("start", 1LL);
    if (start != 0 && start != 1)
      throw ConfigError("explicit list start index must be 0 or 1");
    const bool mono = (name == "monotone_list");
    if (mono) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0 ||
            (i + 1 < values.size() && values[i] < values[i + 1]))
          throw ConfigError("monotone_list values must be nonincreasing >= 0");
      }
    }
    seq.gen_ = std::make_shared<ExplicitGen>(std::move(values), start, mono);
  } else if (name == "remark5_cos") {
    seq.gen_ = std::make_shared<Remark5Gen>(3);
  } else if (name == "remark5_sin") {
    seq.gen_ = std::make_shared<Remark5Gen>(2);
  } else if (name == "remark6") {
    const long long r = params.value("r", 0LL);
    if (r < 1) throw ConfigError("remark6 generator needs integer r >= 1");
    seq.gen_ = std::make_shared<Remark6Gen>(r);
  } else {
    throw ConfigError("unknown generator: " + name);
  }
  seq.cache_ = std::make_shared<CoefficientSequence::Cache>();
  return seq;
}

CoefficientSequence sequence_from_json(const json& descriptor) {
  if (!descriptor.is_object() || !descriptor.contains("name"))
    throw ConfigError("sequence descriptor must be {\"name\",\"params\"}");
  return make_generator(descriptor["name"].get<std::string>(),
                        descriptor.value("params", json::object()));
}

// Indices past this bound are evaluated directly instead of memoized, so
// geometrically spaced probes (b3) cannot blow up the cache.
constexpr long long kMaxCachedIndex = 1LL << 21;

void CoefficientSequence::ensure(long long n) const {
  if (n < 1) return;
  n = std::min(n, kMaxCachedIndex);
  {
    std::shared_lock lock(cache_->mutex);
    if (static_cast<long long>(cache_->values.size()) >= n) return;
  }
  std::unique_lock lock(cache_->mutex);
  const std::size_t have = cache_->values.size();
  const std::size_t want =
      std::max<std::size_t>(static_cast<std::size_t>(n),
                            std::max<std::size_t>(64, have * 2));
  if (have >= static_cast<std::size_t>(n)) return;
  cache_->values.resize(want);
  cache_->abs_prefix.resize(want);
  cache_->abs_over_k_prefix.resize(want);
  Accumulator abs_acc, over_k_acc;
  if (have > 0) {
    // Re-derive the compensation from the stored prefixes; the tail we
    // append keeps full compensation within this growth step.
    abs_acc.sum = cache_->abs_prefix[have - 1];
    over_k_acc.sum = cache_->abs_over_k_prefix[have - 1];
  }
  for (std::size_t i = have; i < want; ++i) {
    const long long k = static_cast<long long>(i) + 1;
    const double v = gen_->value(k);
    cache_->values[i] = v;
    abs_acc.add(std::abs(v));
    cache_->abs_prefix[i] = abs_acc.value();
    over_k_acc.add(std::abs(v) / double(k));
    cache_->abs_over_k_prefix[i] = over_k_acc.value();
  }
}

double CoefficientSequence::coeff_real(long long n) const {
  if (!gen_) throw ConfigError("empty coefficient sequence");
  if (n < 1) return 0.0;
  if (n > kMaxCachedIndex) return gen_->value(n);
  ensure(n);
  std::shared_lock lock(cache_->mutex);
  return cache_->values[static_cast<std::size_t>(n - 1)];
}

double CoefficientSequence::constant_term() const {
  if (!gen_) throw ConfigError("empty coefficient sequence");
  return gen_->constant_term();
}

double CoefficientSequence::abs_prefix_sum(long long n) const {
  if (!gen_) throw ConfigError("empty coefficient sequence");
  if (n < 1) return 0.0;
  if (n > kMaxCachedIndex)
    throw ConfigError("window sums are limited to indices <= 2^21");
  ensure(n);
  std::shared_lock lock(cache_->mutex);
  return cache_->abs_prefix[static_cast<std::size_t>(n - 1)];
}

double CoefficientSequence::abs_window_sum(long long lo, long long hi) const {
  if (hi < lo) return 0.0;
  lo = std::max<long long>(lo, 1);
  return abs_prefix_sum(hi) - abs_prefix_sum(lo - 1);
}

double CoefficientSequence::abs_over_k_window(long long lo,
                                              long long hi) const {
  if (hi < lo) return 0.0;
  lo = std::max<long long>(lo, 1);
  if (hi > kMaxCachedIndex)
    throw ConfigError("window sums are limited to indices <= 2^21");
  ensure(hi);
  std::shared_lock lock(cache_->mutex);
  const double upper = cache_->abs_over_k_prefix[static_cast<std::size_t>(hi - 1)];
  const double lower =
      lo >= 2 ? cache_->abs_over_k_prefix[static_cast<std::size_t>(lo - 2)]
              : 0.0;
  return upper - lower;
}

void CoefficientSequence::prefetch(long long horizon) const { ensure(horizon); }

std::vector<double> CoefficientSequence::copy_range(long long lo,
                                                    long long hi) const {
  if (hi < lo) return {};
  const long long cached_hi = std::min(hi, kMaxCachedIndex);
  ensure(cached_hi);
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  {
    std::shared_lock lock(cache_->mutex);
    for (long long k = std::max<long long>(lo, 1); k <= cached_hi; ++k)
      out[static_cast<std::size_t>(k - lo)] =
          cache_->values[static_cast<std::size_t>(k - 1)];
  }
  for (long long k = std::max(cached_hi + 1, std::max<long long>(lo, 1));
       k <= hi; ++k)
    out[static_cast<std::size_t>(k - lo)] = gen_->value(k);
  return out;
}

bool CoefficientSequence::is_nonincreasing(long long lo, long long hi) const {
  prefetch(hi);
  double prev = coeff_real(lo);
  if (prev < 0.0) return false;
  for (long long k = lo + 1; k <= hi; ++k) {
    const double cur = coeff_real(k);
    if (cur < 0.0 || cur > prev) return false;
    prev = cur;
  }
  return true;
}

json CoefficientSequence::descriptor() const {
  if (!gen_) throw ConfigError("empty coefficient sequence");
  return gen_->descriptor();
}

std::complex<double> complex_coefficient(const CoefficientSequence& seq,
                                         SeriesKind kind, long long k) {
  const long long n = std::llabs(k);
  switch (kind) {
    case SeriesKind::kCosine: {
      if (k == 0) return {seq.constant_term() / 2.0, 0.0};
      return {seq.coeff_real(n) / 2.0, 0.0};
    }
    case SeriesKind::kSine: {
      if (k == 0) return {0.0, 0.0};
      const double half = seq.coeff_real(n) / 2.0;
      return {0.0, k > 0 ? -half : half};
    }
    case SeriesKind::kComplexExponential:
      // A bare real sequence read as c_k for k >= 0, conjugate-symmetric.
      return {seq.coeff_real(n), 0.0};
  }
  return {0.0, 0.0};
}

}  // namespace gmseries
