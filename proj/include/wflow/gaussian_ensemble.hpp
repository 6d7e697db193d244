#pragma once

// Isotropic Gaussian Wigner ensembles: Hermite-series current divergences,
// their sinh/exp closed forms, Erf-integrated currents and the quantum
// velocity field for the Harper model.

#include <cfloat>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "wflow/models.hpp"
#include "wflow/special_functions.hpp"
#include "wflow/wigner_series.hpp"

namespace wflow {

struct GaussianEnsemble {
  double gamma = 1.0;
  SeparableModel model;
};

inline GaussianEnsemble make_gaussian_ensemble(double gamma, SeparableModel model) {
  if (!(gamma > 0 && gamma <= 4.0))
    throw std::invalid_argument("make_gaussian_ensemble: gamma must be in (0, 4]");
  return GaussianEnsemble{gamma, std::move(model)};
}

/// Gaussian density (gamma^2/pi) exp(-gamma^2 (x^2 + k^2)).
inline double g_gamma(const GaussianEnsemble& e, double x, double k) {
  const double g2 = e.gamma * e.gamma;
  return g2 / kPi * std::exp(-g2 * (x * x + k * k));
}

namespace detail {

// Hermite-reduction constants for models whose odd derivatives factor as
// d^{2eta+1} V = lambda^{2eta+1} upsilon(x), d^{2eta+1} K = mu^{2eta+1} kappa(k).
// Harper: mu = lambda = i, kappa = i sin(k), upsilon = i nu^2 sin(x).
struct HermiteReduction {
  std::complex<double> mu, lambda;
  std::function<std::complex<double>(double)> kappa, upsilon;
};

inline HermiteReduction hermite_reduction(const SeparableModel& m) {
  if (!m.is_harper())
    throw std::invalid_argument("gaussian ensemble: no Hermite reduction for model " + m.name);
  const std::complex<double> i(0.0, 1.0);
  const double nu2 = m.nu2();
  HermiteReduction r;
  r.mu = i;
  r.lambda = i;
  r.kappa = [i](double k) { return i * std::sin(k); };
  r.upsilon = [i, nu2](double x) { return i * nu2 * std::sin(x); };
  return r;
}

}  // namespace detail

/// Current divergences (d_x J_x, d_k J_k) as truncated Hermite series,
/// kept in the generic complex-parameter form internally; the result must
/// be real for admissible models.
inline std::pair<double, double> div_series(const GaussianEnsemble& e, double x, double k,
                                            const TruncationPolicy& policy = {}) {
  if (policy.eta_max > 31)
    throw std::invalid_argument("div_series: eta_max > 31 exceeds the Hermite ceiling");
  const auto red = detail::hermite_reduction(e.model);
  const double g = g_gamma(e, x, k);
  const std::complex<double> i(0.0, 1.0);

  auto series = [&](std::complex<double> rate, double z) {
    std::complex<double> sum = 0.0;
    int small_streak = 0;
    const std::complex<double> base = i * e.gamma * rate * 0.5;
    for (int eta = 0; eta <= policy.eta_max; ++eta) {
      const int n = 2 * eta + 1;
      std::complex<double> t = std::pow(base, n) / detail::factorial(n) * hermite(n, e.gamma * z);
      sum += t;
      if (std::abs(t) < policy.tol * std::abs(sum)) {
        if (++small_streak >= 2) break;
      } else {
        small_streak = 0;
      }
    }
    return sum;
  };

  std::complex<double> dxjx = 2.0 * i * red.kappa(k) * g * series(red.mu, x);
  std::complex<double> dkjk = -2.0 * i * red.upsilon(x) * g * series(red.lambda, k);
  const double scale = std::max({std::abs(dxjx), std::abs(dkjk), 1.0});
  if (std::abs(dxjx.imag()) > 1e-13 * scale || std::abs(dkjk.imag()) > 1e-13 * scale)
    throw std::runtime_error("div_series: non-real result for admissible model");
  return {dxjx.real(), dkjk.real()};
}

/// Harper closed forms:
///   d_x J_x = +2 sin(k) sinh(gamma^2 x) exp(-gamma^2/4) G,
///   d_k J_k = -2 nu^2 sin(x) sinh(gamma^2 k) exp(-gamma^2/4) G.
inline std::pair<double, double> div_closed(const GaussianEnsemble& e, double x, double k) {
  if (!e.model.is_harper()) throw std::invalid_argument("div_closed: Harper only");
  const double g2 = e.gamma * e.gamma;
  const double common = 2.0 * std::exp(-g2 / 4.0) * g_gamma(e, x, k);
  return {std::sin(k) * std::sinh(g2 * x) * common,
          -e.model.nu2() * std::sin(x) * std::sinh(g2 * k) * common};
}

/// Erf-integrated Wigner currents:
///   J_x = +(gamma/2 sqrt(pi)) sin(k) exp(-gamma^2 k^2) [Erf(gamma(x-1/2)) - Erf(gamma(x+1/2))],
///   J_k mirror with -nu^2 and x <-> k.
inline std::pair<double, double> currents_erf(const GaussianEnsemble& e, double x, double k) {
  if (!e.model.is_harper()) throw std::invalid_argument("currents_erf: Harper only");
  const double g = e.gamma, g2 = g * g;
  const double pre = g / (2.0 * std::sqrt(kPi));
  const double bx = erf(g * (x - 0.5)) - erf(g * (x + 0.5));
  const double bk = erf(g * (k - 0.5)) - erf(g * (k + 0.5));
  return {pre * std::sin(k) * std::exp(-g2 * k * k) * bx,
          -pre * e.model.nu2() * std::sin(x) * std::exp(-g2 * x * x) * bk};
}

/// Quantum velocity w = J / G in closed form (the -k^2 <-> +x^2 replacement
/// rule), avoiding explicit division in the Gaussian tails.
inline std::pair<double, double> velocity_field(const GaussianEnsemble& e, double x, double k) {
  if (!e.model.is_harper()) throw std::invalid_argument("velocity_field: Harper only");
  if (g_gamma(e, x, k) < DBL_MIN)
    throw std::domain_error("velocity_field: velocity undefined in the Gaussian tail");
  const double g = e.gamma, g2 = g * g;
  const double pre = std::sqrt(kPi) / (2.0 * g);
  const double bx = erf(g * (x - 0.5)) - erf(g * (x + 0.5));
  const double bk = erf(g * (k - 0.5)) - erf(g * (k + 0.5));
  return {pre * std::sin(k) * std::exp(g2 * x * x) * bx,
          -pre * e.model.nu2() * std::sin(x) * std::exp(g2 * k * k) * bk};
}

/// Liouvillianity quantifier div(w) = d_x w_x + d_k w_k, differentiated
/// analytically from the Erf/Gaussian closed form.
inline double gaussian_div_w(const GaussianEnsemble& e, double x, double k) {
  if (!e.model.is_harper()) throw std::invalid_argument("gaussian_div_w: Harper only");
  if (g_gamma(e, x, k) < DBL_MIN)
    throw std::domain_error("gaussian_div_w: velocity undefined in the Gaussian tail");
  const double g = e.gamma, g2 = g * g;
  const double pre = std::sqrt(kPi) / (2.0 * g);
  const double bx = erf(g * (x - 0.5)) - erf(g * (x + 0.5));
  const double bk = erf(g * (k - 0.5)) - erf(g * (k + 0.5));
  const double dbx = 2.0 * g / std::sqrt(kPi) *
                     (std::exp(-g2 * (x - 0.5) * (x - 0.5)) - std::exp(-g2 * (x + 0.5) * (x + 0.5)));
  const double dbk = 2.0 * g / std::sqrt(kPi) *
                     (std::exp(-g2 * (k - 0.5) * (k - 0.5)) - std::exp(-g2 * (k + 0.5) * (k + 0.5)));
  const double dwx = pre * std::sin(k) * std::exp(g2 * x * x) * (2.0 * g2 * x * bx + dbx);
  const double dwk =
      -pre * e.model.nu2() * std::sin(x) * std::exp(g2 * k * k) * (2.0 * g2 * k * bk + dbk);
  return dwx + dwk;
}

}  // namespace wflow
