#include "gmseries/trigpoly.hpp"

#include <cmath>

#include "gmseries/summation.hpp"

namespace gmseries {

namespace {
// Below this |sin x| the Goertzel parasitic error ~ N eps / |sin x| is no
// longer comfortably under 1e-9 at N ~ 3e4, so evaluation falls back to
// per-term reduced sincos.
constexpr double kGoertzelSinFloor = 0.02;
}  // namespace

TrigPoly TrigPoly::block(const CoefficientSequence& seq, SeriesKind kind,
                         long long n, long long m) {
  if (n < 1 || m < n) throw ConfigError("block poly needs 1 <= n <= m");
  if (kind == SeriesKind::kComplexExponential)
    throw ConfigError("trig polynomials take the cosine or sine kind");
  TrigPoly p;
  p.cosc_.assign(static_cast<std::size_t>(m) + 1, 0.0);
  p.sinc_.assign(static_cast<std::size_t>(m) + 1, 0.0);
  const auto coeffs = seq.copy_range(n, m);
  auto& target = kind == SeriesKind::kCosine ? p.cosc_ : p.sinc_;
  for (long long k = n; k <= m; ++k)
    target[static_cast<std::size_t>(k)] =
        coeffs[static_cast<std::size_t>(k - n)];
  return p;
}

TrigPoly TrigPoly::partial_sum(const CoefficientSequence& seq, SeriesKind kind,
                               long long n) {
  if (n < 0) throw ConfigError("partial sum poly needs n >= 0");
  TrigPoly p;
  if (kind == SeriesKind::kCosine) p.const_term_ = seq.constant_term() / 2.0;
  if (n >= 1) {
    TrigPoly body = block(seq, kind, 1, n);
    body.const_term_ = p.const_term_;
    return body;
  }
  return p;
}

TrigPoly TrigPoly::vn_minus_sn(const CoefficientSequence& seq, SeriesKind kind,
                               long long n) {
  if (n < 0) throw ConfigError("vn_minus_sn needs n >= 0");
  TrigPoly p;
  if (n == 0) return p;
  p = block(seq, kind, 1, n);
  auto& target = kind == SeriesKind::kCosine ? p.cosc_ : p.sinc_;
  for (long long k = 1; k <= n; ++k)
    target[static_cast<std::size_t>(k)] *= -double(k) / double(n + 1);
  return p;
}

void TrigPoly::add_term(long long k, double cos_coef, double sin_coef) {
  if (k < 1) throw ConfigError("trig poly terms need k >= 1");
  const auto idx = static_cast<std::size_t>(k);
  if (idx >= cosc_.size()) {
    cosc_.resize(idx + 1, 0.0);
    sinc_.resize(idx + 1, 0.0);
  }
  cosc_[idx] += cos_coef;
  sinc_[idx] += sin_coef;
}

long long TrigPoly::degree() const {
  for (std::size_t k = cosc_.size(); k-- > 1;)
    if (cosc_[k] != 0.0 || sinc_[k] != 0.0) return static_cast<long long>(k);
  return 0;
}

std::size_t TrigPoly::nonzero_terms() const {
  std::size_t n = 0;
  for (std::size_t k = 1; k < cosc_.size(); ++k)
    if (cosc_[k] != 0.0 || sinc_[k] != 0.0) ++n;
  return n;
}

bool TrigPoly::has_cos_terms() const {
  for (std::size_t k = 1; k < cosc_.size(); ++k)
    if (cosc_[k] != 0.0) return true;
  return false;
}

bool TrigPoly::has_sin_terms() const {
  for (std::size_t k = 1; k < sinc_.size(); ++k)
    if (sinc_[k] != 0.0) return true;
  return false;
}

double TrigPoly::abs_coeff_sum() const {
  Accumulator acc;
  acc.add(std::abs(const_term_));
  for (std::size_t k = 1; k < cosc_.size(); ++k) {
    acc.add(std::abs(cosc_[k]));
    acc.add(std::abs(sinc_[k]));
  }
  return acc.value();
}

double TrigPoly::eval_goertzel(double x) const {
  const std::size_t N = cosc_.size();
  if (N <= 1) return const_term_;
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double two_c = 2.0 * c;
  double u1 = 0.0, u2 = 0.0;  // cosine-coefficient recurrence
  double v1 = 0.0, v2 = 0.0;  // sine-coefficient recurrence
  for (std::size_t k = N - 1; k >= 1; --k) {
    const double u0 = cosc_[k] + two_c * u1 - u2;
    u2 = u1;
    u1 = u0;
    const double v0 = sinc_[k] + two_c * v1 - v2;
    v2 = v1;
    v1 = v0;
  }
  return const_term_ + (u1 * c - u2) + v1 * s;
}

double TrigPoly::eval_terms(double x) const {
  Accumulator acc;
  acc.add(const_term_);
  const double u = x / 2.0;
  for (std::size_t k = 1; k < cosc_.size(); ++k) {
    const double cc = cosc_[k];
    const double sc = sinc_[k];
    if (cc == 0.0 && sc == 0.0) continue;
    double s, c;
    detail::sincos_reduced(2 * static_cast<long long>(k), u, s, c);
    acc.add(cc * c);
    if (sc != 0.0) acc.add(sc * s);
  }
  return acc.value();
}

double TrigPoly::eval(double x) const {
  return std::abs(std::sin(x)) < kGoertzelSinFloor ? eval_terms(x)
                                                   : eval_goertzel(x);
}

double TrigPoly::primitive_terms(double x) const {
  Accumulator acc;
  acc.add(const_term_ * x);
  const double u = x / 2.0;
  for (std::size_t k = 1; k < cosc_.size(); ++k) {
    const double cc = cosc_[k];
    const double sc = sinc_[k];
    if (cc == 0.0 && sc == 0.0) continue;
    double s, c;
    detail::sincos_reduced(2 * static_cast<long long>(k), u, s, c);
    const double dk = static_cast<double>(k);
    if (cc != 0.0) acc.add(cc * s / dk);
    if (sc != 0.0) acc.add(sc * (1.0 - c) / dk);
  }
  return acc.value();
}

double TrigPoly::primitive(double x) const {
  if (std::abs(std::sin(x)) < kGoertzelSinFloor) return primitive_terms(x);
  const std::size_t N = cosc_.size();
  if (N <= 1) return const_term_ * x;
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double two_c = 2.0 * c;
  double u1 = 0.0, u2 = 0.0;  // coefficients c_k / k on sin kx
  double v1 = 0.0, v2 = 0.0;  // coefficients s_k / k on cos kx
  Accumulator shift;  // the constant sum s_k / k making P(0) = 0
  for (std::size_t k = N - 1; k >= 1; --k) {
    const double dk = static_cast<double>(k);
    const double u0 = cosc_[k] / dk + two_c * u1 - u2;
    u2 = u1;
    u1 = u0;
    const double v0 = sinc_[k] / dk + two_c * v1 - v2;
    v2 = v1;
    v1 = v0;
    if (sinc_[k] != 0.0) shift.add(sinc_[k] / dk);
  }
  return const_term_ * x + u1 * s - (v1 * c - v2) + shift.value();
}

TrigPoly& TrigPoly::axpy(double alpha, const TrigPoly& other) {
  if (other.cosc_.size() > cosc_.size()) {
    cosc_.resize(other.cosc_.size(), 0.0);
    sinc_.resize(other.sinc_.size(), 0.0);
  }
  const_term_ += alpha * other.const_term_;
  for (std::size_t k = 1; k < other.cosc_.size(); ++k) {
    cosc_[k] += alpha * other.cosc_[k];
    sinc_[k] += alpha * other.sinc_[k];
  }
  return *this;
}

TrigPoly& TrigPoly::scale(double alpha) {
  const_term_ *= alpha;
  for (std::size_t k = 1; k < cosc_.size(); ++k) {
    cosc_[k] *= alpha;
    sinc_[k] *= alpha;
  }
  return *this;
}

}  // namespace gmseries
