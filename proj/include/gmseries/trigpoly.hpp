#pragma once

#include "gmseries/sequences.hpp"

namespace gmseries {

/// Dense trigonometric polynomial
///   p(x) = const + sum_{k=1}^{N} ( c_k cos kx + s_k sin kx )
/// with an exact antiderivative.  Evaluation uses the Goertzel recurrence
/// away from x = 0 mod pi and per-term reduced sincos near it, where the
/// recurrence loses accuracy.
class TrigPoly {
 public:
  TrigPoly() = default;

  static TrigPoly block(const CoefficientSequence& seq, SeriesKind kind,
                        long long n, long long m);  // sum_{k=n}^m a_k trig(kx)
  static TrigPoly partial_sum(const CoefficientSequence& seq, SeriesKind kind,
                              long long n);  // includes a_0/2 for cosine
  static TrigPoly vn_minus_sn(const CoefficientSequence& seq, SeriesKind kind,
                              long long n);  // -sum k/(n+1) a_k trig(kx)

  void set_constant(double v) { const_term_ = v; }
  void add_term(long long k, double cos_coef, double sin_coef);

  double constant() const { return const_term_; }
  long long degree() const;
  std::size_t nonzero_terms() const;
  bool has_cos_terms() const;
  bool has_sin_terms() const;
  /// |const| + sum (|c_k| + |s_k|): a uniform bound on |p|.
  double abs_coeff_sum() const;

  double eval(double x) const;
  /// Antiderivative P with P(0) = 0:
  ///   P(x) = const x + sum ( c_k sin kx - s_k cos kx + s_k ) / k.
  double primitive(double x) const;

  /// this += alpha * other.
  TrigPoly& axpy(double alpha, const TrigPoly& other);
  TrigPoly& scale(double alpha);

 private:
  double eval_goertzel(double x) const;
  double eval_terms(double x) const;
  double primitive_terms(double x) const;

  double const_term_ = 0.0;
  std::vector<double> cosc_;  // index k, [0] unused
  std::vector<double> sinc_;
};

}  // namespace gmseries
