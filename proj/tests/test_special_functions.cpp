#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wflow/special_functions.hpp"

namespace {

// Independent oracle: I_n(x) = (1/pi) int_0^pi exp(x cos t) cos(n t) dt.
// The even extension of the integrand is smooth and 2pi-periodic, so the
// trapezoid rule converges spectrally.
double bessel_oracle(int n, double x) {
  const int m = 4000;
  const double h = wflow::kPi / m;
  double acc = 0.5 * (std::exp(x) + std::exp(-x) * std::cos(n * wflow::kPi));
  for (int i = 1; i < m; ++i) {
    const double t = i * h;
    acc += std::exp(x * std::cos(t)) * std::cos(n * t);
  }
  return acc * h / wflow::kPi;
}

// Independent oracle: Maclaurin series of erf, adequate for |x| <= 3.
double erf_oracle(double x) {
  double term = x, sum = x;
  for (int n = 1; n <= 60; ++n) {
    term *= -x * x / n;
    sum += term / (2 * n + 1);
  }
  return 2.0 / std::sqrt(wflow::kPi) * sum;
}

}  // namespace

TEST_CASE("bessel_i matches the integral representation") {
  for (double x : {0.05, 0.5, 1.0, 2.5, 7.0, 20.0, 49.5}) {
    for (int n : {0, 1}) {
      const double ref = bessel_oracle(n, x);
      CHECK(std::abs(wflow::bessel_i(n, x) - ref) <= 1e-13 * std::abs(ref));
    }
  }
}

TEST_CASE("bessel_i reference values") {
  CHECK(wflow::bessel_i(0, 1.0) == Catch::Approx(1.2660658777520084).epsilon(1e-13));
  CHECK(wflow::bessel_i(1, 2.5) == Catch::Approx(2.5167162452886984).epsilon(1e-13));
  CHECK(wflow::bessel_i(0, 0.0) == 1.0);
  CHECK(wflow::bessel_i(1, 0.0) == 0.0);
}

TEST_CASE("bessel_i parity is exact") {
  for (double x : {0.3, 1.7, 12.0}) {
    CHECK(wflow::bessel_i(0, -x) == wflow::bessel_i(0, x));
    CHECK(wflow::bessel_i(1, -x) == -wflow::bessel_i(1, x));
  }
}

TEST_CASE("bessel_i rejects bad arguments") {
  CHECK_THROWS_AS(wflow::bessel_i(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(wflow::bessel_i(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(wflow::bessel_i(0, 50.5), std::domain_error);
  CHECK_THROWS_AS(wflow::bessel_i(0, -51.0), std::domain_error);
}

TEST_CASE("erf matches the Maclaurin series") {
  for (double x : {0.1, 0.5, 1.0, 1.8, 2.9}) {
    const double ref = erf_oracle(x);
    CHECK(std::abs(wflow::erf(x) - ref) <= 1e-12 * std::abs(ref));
  }
  CHECK(wflow::erf(1.0) == Catch::Approx(0.8427007929497149).epsilon(1e-12));
  CHECK(wflow::erf(0.5) == Catch::Approx(0.5204998778130465).epsilon(1e-12));
}

TEST_CASE("erf is exactly odd") {
  for (double x : {0.0, 0.25, 1.5, 4.0, 8.0}) CHECK(wflow::erf(-x) == -wflow::erf(x));
}

TEST_CASE("hermite reference values") {
  CHECK(wflow::hermite(0, 3.7) == 1.0);
  CHECK(wflow::hermite(1, 1.0) == 2.0);
  CHECK(wflow::hermite(3, 1.0) == -4.0);  // 8z^3 - 12z
  CHECK(wflow::hermite(5, 1.0) == -8.0);  // 32z^5 - 160z^3 + 120z
  CHECK(wflow::hermite(4, 0.5) == Catch::Approx(16 * 0.0625 - 48 * 0.25 + 12).epsilon(1e-14));
}

TEST_CASE("hermite rejects out-of-range orders") {
  CHECK_THROWS_AS(wflow::hermite(-1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(wflow::hermite(65, 0.0), std::invalid_argument);
  CHECK_NOTHROW(wflow::hermite(64, 0.3));
}

TEST_CASE("odd-Hermite generating identity") {
  // sum_eta h_{2eta+1}(u) s^{2eta+1}/(2eta+1)! = sinh(2 s u) exp(-s^2)
  for (double s : {-1.0, -0.4, 0.2, 0.7, 1.0}) {
    for (double u : {-4.0, -1.3, 0.0, 0.9, 2.5, 4.0}) {
      double sum = 0.0, fact = 1.0, spow = s;
      for (int eta = 0; eta <= 25; ++eta) {
        const int n = 2 * eta + 1;
        if (eta > 0) {
          fact *= (n - 1) * n;
          spow *= s * s;
        }
        sum += wflow::hermite(n, u) * spow / fact;
      }
      const double closed = std::sinh(2.0 * s * u) * std::exp(-s * s);
      CHECK(std::abs(sum - closed) <= 1e-10);
    }
  }
}
