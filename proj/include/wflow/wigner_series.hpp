#pragma once

// Generalized truncated-series engine for Wigner currents, the time
// derivative of the Wigner function and the Liouvillianity quantifier
// div(w), for any separable model and any Wigner function supplied through
// analytic partial-derivative callbacks.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "wflow/grid.hpp"
#include "wflow/models.hpp"
#include "wflow/special_functions.hpp"
#include "wflow/taylor_jet.hpp"

namespace wflow {

struct WignerFunctionSpec {
  std::function<double(double, double)> w;
  std::function<double(int, double, double)> dx_n;  // n-th x-partial
  std::function<double(int, double, double)> dk_n;  // n-th k-partial
  int max_order = 0;
  double w_max = 1.0;  // scale for the div(w) zero guard
};

struct TruncationPolicy {
  int eta_max = 25;
  double tol = 1e-12;
};

namespace detail {

inline double factorial(int n) {
  static const auto table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table[n];
}

// (i/2)^{2 eta} = (-1)^eta / 4^eta
inline double series_coeff(int eta) {
  double c = (eta % 2 == 0) ? 1.0 : -1.0;
  return c / (std::pow(4.0, eta) * factorial(2 * eta + 1));
}

template <typename Term>
double truncated_sum(const TruncationPolicy& policy, Term term) {
  double sum = 0.0;
  int small_streak = 0;
  for (int eta = 0; eta <= policy.eta_max; ++eta) {
    double t = term(eta);
    sum += t;
    if (std::abs(t) < policy.tol * std::abs(sum)) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
  }
  return sum;
}

}  // namespace detail

/// J_x = sum_eta (i/2)^{2eta} [d^{2eta+1}K] d_x^{2eta} W / (2eta+1)!.
/// The eta = 0 term alone is the classical current dK/dk * W.
inline double current_x(const SeparableModel& model, const WignerFunctionSpec& wspec,
                        const TruncationPolicy& policy, double x, double k) {
  if (wspec.max_order < 2 * policy.eta_max)
    throw std::invalid_argument("current_x: wspec.max_order < 2*eta_max");
  return detail::truncated_sum(policy, [&](int eta) {
    return detail::series_coeff(eta) * model.k_deriv(2 * eta + 1, k) * wspec.dx_n(2 * eta, x, k);
  });
}

/// Mirror of current_x with K <-> V, x <-> k and an overall minus sign.
inline double current_k(const SeparableModel& model, const WignerFunctionSpec& wspec,
                        const TruncationPolicy& policy, double x, double k) {
  if (wspec.max_order < 2 * policy.eta_max)
    throw std::invalid_argument("current_k: wspec.max_order < 2*eta_max");
  return -detail::truncated_sum(policy, [&](int eta) {
    return detail::series_coeff(eta) * model.v_deriv(2 * eta + 1, x) * wspec.dk_n(2 * eta, x, k);
  });
}

/// dW/dt = sum_eta (-1)^eta/(4^eta (2eta+1)!) {[d^{2eta+1}V] d_k^{2eta+1}W
///         - [d^{2eta+1}K] d_x^{2eta+1}W}; equals -div(J) at matched truncation.
inline double dW_dt(const SeparableModel& model, const WignerFunctionSpec& wspec,
                    const TruncationPolicy& policy, double x, double k) {
  if (wspec.max_order < 2 * policy.eta_max + 1)
    throw std::invalid_argument("dW_dt: wspec.max_order < 2*eta_max+1");
  return detail::truncated_sum(policy, [&](int eta) {
    return detail::series_coeff(eta) *
           (model.v_deriv(2 * eta + 1, x) * wspec.dk_n(2 * eta + 1, x, k) -
            model.k_deriv(2 * eta + 1, k) * wspec.dx_n(2 * eta + 1, x, k));
  });
}

/// div(w) = sum_{eta>=1} (-1)^eta/(4^eta (2eta+1)!) {[d^{2eta+1}K] d_x[(1/W) d_x^{2eta}W]
///          - [d^{2eta+1}V] d_k[(1/W) d_k^{2eta}W]}.  The classical part is
/// divergence-free, so the sum starts at eta = 1.
inline double div_w(const SeparableModel& model, const WignerFunctionSpec& wspec,
                    const TruncationPolicy& policy, double x, double k) {
  if (wspec.max_order < 2 * policy.eta_max + 1)
    throw std::invalid_argument("div_w: wspec.max_order < 2*eta_max+1");
  const double w = wspec.w(x, k);
  const double w_floor = 1e-12 * wspec.w_max;
  if (std::abs(w) <= w_floor)
    throw std::domain_error("div_w: velocity undefined near Wigner zero");
  const double inv_w2 = 1.0 / (w * w);
  const double wx1 = wspec.dx_n(1, x, k), wk1 = wspec.dk_n(1, x, k);
  double sum = 0.0;
  int small_streak = 0;
  for (int eta = 1; eta <= policy.eta_max; ++eta) {
    // d_x[(1/W) d_x^{2eta} W] = (W d_x^{2eta+1}W - d_x W d_x^{2eta}W)/W^2
    const double ax =
        (w * wspec.dx_n(2 * eta + 1, x, k) - wx1 * wspec.dx_n(2 * eta, x, k)) * inv_w2;
    const double ak =
        (w * wspec.dk_n(2 * eta + 1, x, k) - wk1 * wspec.dk_n(2 * eta, x, k)) * inv_w2;
    const double t = detail::series_coeff(eta) *
                     (model.k_deriv(2 * eta + 1, k) * ax - model.v_deriv(2 * eta + 1, x) * ak);
    sum += t;
    if (std::abs(t) < policy.tol * std::abs(sum)) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
  }
  return sum;
}

/// Isotropic Gaussian Wigner function (gamma^2/pi) exp(-gamma^2 (x^2+k^2))
/// with Hermite-form analytic partials.
inline WignerFunctionSpec make_gaussian_wspec(double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("make_gaussian_wspec: gamma must be positive");
  constexpr double pi = 3.14159265358979323846;
  auto g = [gamma, pi](double x, double k) {
    return gamma * gamma / pi * std::exp(-gamma * gamma * (x * x + k * k));
  };
  // d_z^n G = (-gamma)^n h_n(gamma z) G
  auto dz = [gamma, g](int n, double z, double other_x, double other_k) {
    double s = (n % 2 == 0) ? 1.0 : -1.0;
    return s * std::pow(gamma, n) * hermite(n, gamma * z) * g(other_x, other_k);
  };
  WignerFunctionSpec spec;
  spec.w = g;
  spec.dx_n = [dz](int n, double x, double k) { return dz(n, x, x, k); };
  spec.dk_n = [dz](int n, double x, double k) { return dz(n, k, x, k); };
  spec.max_order = kHermiteMaxOrder;
  spec.w_max = gamma * gamma / pi;
  return spec;
}

namespace detail {

// Jet of exp(-beta V(x)) * (1 + chi(x, k0)) along x (or the k analog),
// built from the model's analytic derivative callbacks.
inline Jet td_directional_jet(const SeparableModel& model, double beta, bool along_x,
                              double x, double k, bool with_chi, std::size_t len) {
  const auto& own = along_x ? model.v_deriv : model.k_deriv;    // varies
  const auto& other = along_x ? model.k_deriv : model.v_deriv;  // frozen
  const double t_own = along_x ? x : k;
  const double t_other = along_x ? k : x;

  auto jet_of_deriv = [&](int shift) {
    std::vector<double> d(len);
    for (std::size_t m = 0; m < len; ++m) d[m] = own(static_cast<int>(m) + shift, t_own);
    return Jet::from_derivatives(d);
  };
  Jet u0 = jet_of_deriv(0);   // V(x)
  Jet w = exp(-beta * u0);    // exp(-beta V)
  // frozen-coordinate Boltzmann factor
  w = std::exp(-beta * other(0, t_other)) * w;
  if (!with_chi) return w;

  Jet u1 = jet_of_deriv(1);  // V'
  Jet u2 = jet_of_deriv(2);  // V''
  const double o1 = other(1, t_other), o2 = other(2, t_other);
  // chi = -(b^2/8) V'' K'' + (b^3/24) [V'' K'^2 + K'' V'^2], with the varying
  // coordinate carried by the jet and the other frozen
  Jet chi = (-beta * beta / 8.0 * o2) * u2 +
            (beta * beta * beta / 24.0) * ((o1 * o1) * u2 + o2 * (u1 * u1));
  return w * (1.0 + chi);
}

}  // namespace detail

/// O(hbar^2)-corrected thermodynamic Wigner function (unnormalized numerator
/// exp(-beta H)(1 + chi), scaled by `norm`), with partial derivatives of any
/// order computed by Taylor-jet composition.  Set with_chi = false for the
/// classical Boltzmann function W0.
inline WignerFunctionSpec make_td_wspec(const SeparableModel& model, double beta, double norm,
                                        bool with_chi = true, int max_order = kHermiteMaxOrder) {
  WignerFunctionSpec spec;
  spec.max_order = max_order;
  const std::size_t len = static_cast<std::size_t>(max_order) + 1;
  spec.w = [model, beta, norm, with_chi](double x, double k) {
    double v = std::exp(-beta * model.hamiltonian(x, k));
    if (with_chi) {
      const double v1 = model.v_deriv(1, x), v2 = model.v_deriv(2, x);
      const double k1 = model.k_deriv(1, k), k2 = model.k_deriv(2, k);
      const double b = beta;
      v *= 1.0 + (-b * b / 8.0 * v2 * k2 + b * b * b / 24.0 * (v2 * k1 * k1 + k2 * v1 * v1));
    }
    return norm * v;
  };
  spec.dx_n = [model, beta, norm, with_chi, len](int n, double x, double k) {
    Jet j = detail::td_directional_jet(model, beta, true, x, k,
                                       with_chi, std::min<std::size_t>(len, n + 1));
    return norm * j.derivative(n);
  };
  spec.dk_n = [model, beta, norm, with_chi, len](int n, double x, double k) {
    Jet j = detail::td_directional_jet(model, beta, false, x, k,
                                       with_chi, std::min<std::size_t>(len, n + 1));
    return norm * j.derivative(n);
  };
  // scale for the div_w zero guard: coarse sample of the natural domain
  const auto& d = model.natural_domain;
  double wmax = 0.0;
  for (int i = 0; i <= 32; ++i)
    for (int j = 0; j <= 32; ++j)
      wmax = std::max(wmax, std::abs(spec.w(d.x_lo + (d.x_hi - d.x_lo) * i / 32.0,
                                            d.k_lo + (d.k_hi - d.k_lo) * j / 32.0)));
  spec.w_max = wmax;
  return spec;
}

/// Series currents evaluated on a whole grid.
inline VectorField current_field(const SeparableModel& model, const WignerFunctionSpec& wspec,
                                 const TruncationPolicy& policy, const PhaseGrid& grid) {
  return evaluate_vector_field(grid, [&](double x, double k) {
    return std::array<double, 2>{current_x(model, wspec, policy, x, k),
                                 current_k(model, wspec, policy, x, k)};
  });
}

/// Series dW/dt evaluated on a whole grid.
inline ScalarField dW_dt_field(const SeparableModel& model, const WignerFunctionSpec& wspec,
                               const TruncationPolicy& policy, const PhaseGrid& grid) {
  return evaluate_field(grid,
                        [&](double x, double k) { return dW_dt(model, wspec, policy, x, k); });
}

}  // namespace wflow
