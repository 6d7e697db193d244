#pragma once

// Separable Hamiltonians H(x,k) = K(k) + V(x) with analytic derivatives of
// every order, plus the built-in model catalog.

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace wflow {

struct DomainHint {
  double x_lo, x_hi, k_lo, k_hi;
  bool periodic;
};

struct SeparableModel {
  std::string name;
  // m-th derivative of K at k / of V at x, m >= 0
  std::function<double(int, double)> k_deriv;
  std::function<double(int, double)> v_deriv;
  DomainHint natural_domain;
  std::map<std::string, double> parameters;

  double hamiltonian(double x, double k) const { return k_deriv(0, k) + v_deriv(0, x); }
  bool is_harper() const { return name == "harper"; }
  double nu2() const {
    auto it = parameters.find("nu2");
    return it == parameters.end() ? 1.0 : it->second;
  }
};

/// Harper Hamiltonian cos(k) + nu^2 cos(x) on [-pi,pi]^2 periodic.
inline SeparableModel harper_model(double nu2) {
  if (!(nu2 > 0)) throw std::invalid_argument("harper_model: nu2 must be positive");
  auto cos_cycle = [](int m, double z) {
    switch (m & 3) {
      case 0: return std::cos(z);
      case 1: return -std::sin(z);
      case 2: return -std::cos(z);
      default: return std::sin(z);
    }
  };
  SeparableModel m;
  m.name = "harper";
  m.k_deriv = [cos_cycle](int n, double k) { return cos_cycle(n, k); };
  m.v_deriv = [cos_cycle, nu2](int n, double x) { return nu2 * cos_cycle(n, x); };
  constexpr double pi = 3.14159265358979323846;
  m.natural_domain = {-pi, pi, -pi, pi, true};
  m.parameters["nu2"] = nu2;
  return m;
}

/// K = k^2/2, V = x^2/2; derivatives of order >= 3 vanish identically.
inline SeparableModel harmonic_model() {
  auto quad = [](int n, double z) {
    if (n == 0) return 0.5 * z * z;
    if (n == 1) return z;
    if (n == 2) return 1.0;
    return 0.0;
  };
  SeparableModel m;
  m.name = "harmonic";
  m.k_deriv = quad;
  m.v_deriv = quad;
  m.natural_domain = {-6.0, 6.0, -6.0, 6.0, false};
  return m;
}

/// Lotka-Volterra Hamiltonian x + k + e^{-x} + e^{-k}.
inline SeparableModel lotka_volterra_model() {
  auto lv = [](int n, double z) {
    double e = std::exp(-z);
    double d = (n % 2 == 0) ? e : -e;
    if (n == 0) return d + z;
    if (n == 1) return d + 1.0;
    return d;
  };
  SeparableModel m;
  m.name = "lotka_volterra";
  m.k_deriv = lv;
  m.v_deriv = lv;
  m.natural_domain = {-1.0, 5.0, -1.0, 5.0, false};
  return m;
}

/// Hamiltonian vector field (dK/dk, -dV/dx); divergence-free by separability.
inline std::function<std::pair<double, double>(double, double)> classical_velocity(
    const SeparableModel& m) {
  return [m](double x, double k) {
    return std::pair<double, double>{m.k_deriv(1, k), -m.v_deriv(1, x)};
  };
}

}  // namespace wflow
