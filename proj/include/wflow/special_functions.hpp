#pragma once

// Special-function kernels: modified Bessel I0/I1, error function and
// physicists' Hermite polynomials. All pure and thread-safe.

#include <cmath>
#include <stdexcept>
#include <string>

namespace wflow {

inline constexpr int kHermiteMaxOrder = 64;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourPiSq = 4.0 * kPi * kPi;

namespace detail {

// Ascending series I0(x) = sum_m (x/2)^{2m} / (m!)^2.  All terms positive,
// no cancellation; converges fast for |x| <= 50.
inline double bessel_i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * m);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// I1(x) = (x/2) sum_m (x/2)^{2m} / (m! (m+1)!).
inline double bessel_i1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * (m + 1));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 0.5 * x * sum;
}

}  // namespace detail

/// Modified Bessel function I_n for n in {0, 1}, |x| <= 50.
/// I0 is even and I1 odd by construction.
inline double bessel_i(int n, double x) {
  if (n != 0 && n != 1)
    throw std::invalid_argument("bessel_i: order must be 0 or 1, got " + std::to_string(n));
  if (!(std::abs(x) <= 50.0))
    throw std::domain_error("bessel_i: |x| > 50 outside validated range");
  if (n == 0) return detail::bessel_i0_series(std::abs(x));
  double v = detail::bessel_i1_series(std::abs(x));
  return x < 0 ? -v : v;
}

/// Error function, odd-symmetric exactly: erf(-x) == -erf(x).
inline double erf(double x) {
  double v = std::erf(std::abs(x));
  return std::signbit(x) ? -v : v;
}

/// Physicists' Hermite polynomial h_n(z): h_0 = 1, h_1 = 2z,
/// h_{n+1} = 2z h_n - 2n h_{n-1}.  n <= 64.
inline double hermite(int n, double z) {
  if (n < 0 || n > kHermiteMaxOrder)
    throw std::invalid_argument("hermite: order out of range [0,64], got " + std::to_string(n));
  if (n == 0) return 1.0;
  double hm = 1.0, h = 2.0 * z;
  for (int m = 1; m < n; ++m) {
    double next = 2.0 * z * h - 2.0 * m * hm;
    hm = h;
    h = next;
  }
  return h;
}

}  // namespace wflow
