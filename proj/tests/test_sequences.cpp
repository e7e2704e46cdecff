#include <doctest.h>

#include <cmath>
#include <thread>

#include "gmseries/sequences.hpp"
#include "gmseries/summation.hpp"

using namespace gmseries;

TEST_CASE("harmonic generator") {
  auto seq = make_generator("harmonic");
  CHECK(seq.coeff_real(4) == 0.25);
  CHECK(seq.coeff(4) == std::complex<double>(0.25, 0.0));
  CHECK(seq.coeff_real(1) == 1.0);
  CHECK(seq.constant_term() == 0.0);
}

TEST_CASE("remark6 support discipline") {
  auto seq = make_generator("remark6", {{"r", 3}});
  CHECK(seq.coeff_real(3) == 1.0 / 9.0);
  CHECK(seq.coeff_real(6) == 1.0 / 36.0);
  CHECK(seq.coeff_real(9) == 1.0 / 81.0);
  CHECK(seq.coeff_real(7) == 0.0);
  for (long long n = 1; n <= 600; ++n) {
    if (n % 3 == 0)
      CHECK(seq.coeff_real(n) == 1.0 / (double(n) * double(n)));
    else
      CHECK(seq.coeff_real(n) == 0.0);
  }
}

TEST_CASE("remark5 generators match the closed form on their support") {
  auto cosseq = make_generator("remark5_cos");
  auto sinseq = make_generator("remark5_sin");

  // Independent evaluation of 1/(ln n ln ln n).
  const auto formula = [](long long n) {
    return 1.0 / (std::log(double(n)) * std::log(std::log(double(n))));
  };
  CHECK(cosseq.coeff_real(4) == doctest::Approx(formula(4)).epsilon(1e-15));
  CHECK(formula(4) == doctest::Approx(2.2084258).epsilon(1e-6));
  CHECK(sinseq.coeff_real(3) == doctest::Approx(formula(3)).epsilon(1e-15));
  CHECK(formula(3) == doctest::Approx(9.6784716).epsilon(1e-6));

  // Support: cos on n = 3l+1 from 4; sin on n = 2l+1 from 3.
  CHECK(cosseq.coeff_real(1) == 0.0);
  CHECK(cosseq.coeff_real(2) == 0.0);
  CHECK(cosseq.coeff_real(3) == 0.0);
  CHECK(cosseq.coeff_real(5) == 0.0);
  CHECK(cosseq.coeff_real(7) == doctest::Approx(formula(7)));
  for (long long n = 1; n <= 400; ++n) {
    const bool in_support = (n % 3 == 1) && n >= 4;
    CHECK((cosseq.coeff_real(n) != 0.0) == in_support);
  }
  CHECK(sinseq.coeff_real(1) == 0.0);
  CHECK(sinseq.coeff_real(2) == 0.0);
  CHECK(sinseq.coeff_real(5) == doctest::Approx(formula(5)));
  for (long long n = 1; n <= 400; ++n) {
    const bool in_support = (n % 2 == 1) && n >= 3;
    CHECK((sinseq.coeff_real(n) != 0.0) == in_support);
  }
}

TEST_CASE("explicit list and out-of-support convention") {
  auto seq = make_generator("explicit", {{"values", {5.0}}});
  CHECK(seq.coeff_real(1) == 5.0);
  CHECK(seq.coeff_real(2) == 0.0);
  CHECK(seq.coeff_real(100) == 0.0);

  auto with_a0 = make_generator("explicit",
                                {{"values", {2.0, 0.0}}, {"start", 0}});
  CHECK(with_a0.constant_term() == 2.0);
  CHECK(with_a0.coeff_real(1) == 0.0);
}

TEST_CASE("monotone_list validates and inv_log offset") {
  CHECK_THROWS_AS(make_generator("monotone_list", {{"values", {1.0, 2.0}}}),
                  ConfigError);
  auto mono = make_generator("monotone_list", {{"values", {3.0, 2.0, 2.0}}});
  CHECK(mono.coeff_real(2) == 2.0);

  auto inv = make_generator("inv_log");
  CHECK(inv.coeff_real(3) == doctest::Approx(1.0 / std::log(4.0)));
  auto inv2 = make_generator("inv_log", {{"offset", 2.0}});
  CHECK(inv2.coeff_real(3) == doctest::Approx(1.0 / std::log(5.0)));

  CHECK_THROWS_AS(make_generator("power", {{"p", -1.0}}), ConfigError);
  CHECK_THROWS_AS(make_generator("nonsense"), ConfigError);
}

TEST_CASE("monotone generators are nonincreasing on a long prefix") {
  for (const char* name : {"harmonic", "inv_log"}) {
    auto seq = make_generator(name);
    CHECK(seq.is_nonincreasing(1, 20000));
  }
  auto pw = make_generator("power", {{"p", 0.5}});
  CHECK(pw.is_nonincreasing(1, 20000));
}

TEST_CASE("cache transparency and concurrent reads") {
  auto warm = make_generator("remark5_cos");
  warm.prefetch(5000);
  auto cold = make_generator("remark5_cos");
  for (long long n : {1LL, 4LL, 7LL, 1000LL, 4999LL}) {
    // bit-identical with and without prior cache fill
    CHECK(warm.coeff_real(n) == cold.coeff_real(n));
  }

  auto shared = make_generator("harmonic");
  std::vector<std::thread> workers;
  std::vector<double> sums(8, 0.0);
  for (int t = 0; t < 8; ++t)
    workers.emplace_back([&shared, &sums, t]() {
      double s = 0;
      for (long long n = 1; n <= 5000; ++n) s += shared.coeff_real(n);
      sums[t] = s;
    });
  for (auto& w : workers) w.join();
  for (int t = 1; t < 8; ++t) CHECK(sums[t] == sums[0]);
}

TEST_CASE("abs prefix windows") {
  auto seq = make_generator("harmonic");
  CHECK(seq.abs_window_sum(2, 4) ==
        doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 4).epsilon(1e-15));
  CHECK(seq.abs_over_k_window(2, 3) ==
        doctest::Approx(0.25 + 1.0 / 9).epsilon(1e-15));
  CHECK(seq.abs_window_sum(5, 4) == 0.0);
}

TEST_CASE("descriptor serialization round trip") {
  auto seq = make_generator("remark6", {{"r", 4}});
  const json d = seq.descriptor();
  CHECK(d["name"] == "remark6");
  CHECK(d["params"]["r"] == 4);
  auto back = sequence_from_json(d);
  for (long long n = 1; n <= 64; ++n)
    CHECK(back.coeff_real(n) == seq.coeff_real(n));
}

TEST_CASE("complex coefficient mapping round-trips the real series") {
  auto seq = make_generator("harmonic");
  // cosine: c_k = c_{-k} = a_k / 2
  CHECK(complex_coefficient(seq, SeriesKind::kCosine, 5) ==
        std::complex<double>(0.1, 0.0));
  CHECK(complex_coefficient(seq, SeriesKind::kCosine, -5) ==
        std::complex<double>(0.1, 0.0));
  // sine: c_k = -i b_k / 2, c_{-k} = i b_k / 2
  CHECK(complex_coefficient(seq, SeriesKind::kSine, 5) ==
        std::complex<double>(0.0, -0.1));
  CHECK(complex_coefficient(seq, SeriesKind::kSine, -5) ==
        std::complex<double>(0.0, 0.1));

  // The mapped exponential partial sum reproduces the real partial sums.
  for (double x : {0.3, 1.0, 2.7}) {
    const auto via_complex =
        partial_sum_complex(seq, SeriesKind::kCosine, 40, x);
    CHECK(via_complex.real() ==
          doctest::Approx(partial_sum(seq, SeriesKind::kCosine, 40, x))
              .epsilon(1e-13));
    CHECK(via_complex.imag() == doctest::Approx(0.0).epsilon(1e-13));
    const auto sin_complex = partial_sum_complex(seq, SeriesKind::kSine, 40, x);
    CHECK(sin_complex.real() ==
          doctest::Approx(partial_sum(seq, SeriesKind::kSine, 40, x))
              .epsilon(1e-13));
  }
}
