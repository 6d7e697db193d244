#pragma once

// Classical phase portrait machinery for the Harper Hamiltonian:
// energy-level classification and RK4 orbit tracing.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wflow/models.hpp"

namespace wflow {

enum class OrbitBranch { ClosedPositive, ClosedNegative, Open, Empty };

inline std::string to_string(OrbitBranch b) {
  switch (b) {
    case OrbitBranch::ClosedPositive: return "closed_positive";
    case OrbitBranch::ClosedNegative: return "closed_negative";
    case OrbitBranch::Open: return "open";
    default: return "empty";
  }
}

struct ClassicalOrbit {
  double energy = 0;
  OrbitBranch branch = OrbitBranch::Empty;
  std::vector<std::array<double, 2>> polyline;
};

/// Harper level-set classification: open iff 0 < |eps| < nu2-1,
/// closed iff max(nu2-1, 0) < |eps| < nu2+1, empty otherwise
/// (boundary values are degenerate separatrices and classify as empty).
inline OrbitBranch classify_harper(double eps, double nu2) {
  const double a = std::abs(eps);
  if (a > 0.0 && a < nu2 - 1.0) return OrbitBranch::Open;
  if (a > std::max(nu2 - 1.0, 0.0) && a < nu2 + 1.0)
    return eps > 0 ? OrbitBranch::ClosedPositive : OrbitBranch::ClosedNegative;
  return OrbitBranch::Empty;
}

namespace detail {

// 1-D bisection for f(t) = 0 on [lo, hi]; requires a sign change.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0) throw std::runtime_error("bisect: no sign change");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0 || hi - lo < 1e-15) return mid;
    if (flo * fm < 0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::array<double, 2> rk4_step(const SeparableModel& m, std::array<double, 2> p, double h) {
  auto vel = [&m](std::array<double, 2> q) {
    return std::array<double, 2>{m.k_deriv(1, q[1]), -m.v_deriv(1, q[0])};
  };
  auto k1 = vel(p);
  auto k2 = vel({p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1]});
  auto k3 = vel({p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1]});
  auto k4 = vel({p[0] + h * k3[0], p[1] + h * k3[1]});
  return {p[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
          p[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

}  // namespace detail

/// Classify a Harper energy level and trace the orbit through a seed point
/// found by bisection.  Closed orbits make one full turn; open orbits cross
/// one periodic cell in k.
inline ClassicalOrbit classify_and_trace(const SeparableModel& model, double eps) {
  if (!model.is_harper())
    throw std::invalid_argument("classify_and_trace: only the Harper model is supported");
  const double nu2 = model.nu2();
  constexpr double pi = 3.14159265358979323846;

  ClassicalOrbit orbit;
  orbit.energy = eps;
  orbit.branch = classify_harper(eps, nu2);
  if (orbit.branch == OrbitBranch::Empty) return orbit;

  std::array<double, 2> seed{};
  if (orbit.branch == OrbitBranch::Open) {
    // H(x, 0) = 1 + nu2 cos(x) = eps always has a root for |eps| < nu2 - 1
    double x0 = detail::bisect(
        [&](double x) { return 1.0 + nu2 * std::cos(x) - eps; }, 0.0, pi);
    seed = {x0, 0.0};
  } else if (orbit.branch == OrbitBranch::ClosedPositive) {
    // seed on the k-axis: H(0, k) = cos(k) + nu2
    double k0 = detail::bisect(
        [&](double k) { return std::cos(k) + nu2 - eps; }, 0.0, pi);
    seed = {0.0, k0};
  } else {
    // negative-energy orbits are the pi-shifted images; seed on x = pi
    double k0 = detail::bisect(
        [&](double k) { return std::cos(k) - nu2 - eps; }, 0.0, pi);
    seed = {pi, k0};
  }

  // fixed RK4 step from the small-oscillation period 2*pi/nu
  const double t_est = 2.0 * pi / std::sqrt(nu2);
  const double h = t_est / 2000.0;
  const long max_steps = 400000;

  orbit.polyline.push_back(seed);
  std::array<double, 2> p = seed;

  if (orbit.branch == OrbitBranch::Open) {
    double k_accum = 0.0, k_prev = p[1];
    for (long s = 0; s < max_steps && std::abs(k_accum) < 2.0 * pi; ++s) {
      p = detail::rk4_step(model, p, h);
      k_accum += p[1] - k_prev;
      k_prev = p[1];
      orbit.polyline.push_back(p);
    }
  } else {
    // return-to-seed detection: capture radius follows the local step length,
    // armed only once the trajectory has left the seed neighborhood
    bool armed = false;
    for (long s = 0; s < max_steps; ++s) {
      std::array<double, 2> q = detail::rk4_step(model, p, h);
      const double step_len = std::hypot(q[0] - p[0], q[1] - p[1]);
      p = q;
      orbit.polyline.push_back(p);
      const double dist = std::hypot(p[0] - seed[0], p[1] - seed[1]);
      if (!armed && dist > 20.0 * std::max(step_len, 1e-12)) armed = true;
      if (armed && dist < 1.5 * step_len) break;
    }
    orbit.polyline.push_back(seed);  // close exactly
  }
  return orbit;
}

}  // namespace wflow
