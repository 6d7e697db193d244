#pragma once

// Truncated Taylor-series ("jet") arithmetic.  Used to obtain exact
// high-order partial derivatives of composite expressions such as
// exp(-beta V(x)) * polynomial, where finite differences would be hopeless.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wflow {

class Jet {
 public:
  explicit Jet(std::size_t len) : c_(len, 0.0) {
    if (len == 0) throw std::invalid_argument("Jet: zero length");
  }
  static Jet constant(double v, std::size_t len) {
    Jet j(len);
    j.c_[0] = v;
    return j;
  }
  static Jet variable(double v, std::size_t len) {
    Jet j(len);
    j.c_[0] = v;
    if (len > 1) j.c_[1] = 1.0;
    return j;
  }
  /// Jet of a function given its derivatives d[m] = f^(m)(x0).
  static Jet from_derivatives(const std::vector<double>& d) {
    Jet j(d.size());
    double f = 1.0;
    for (std::size_t m = 0; m < d.size(); ++m) {
      if (m > 1) f *= static_cast<double>(m);
      j.c_[m] = d[m] / f;
    }
    return j;
  }

  std::size_t size() const { return c_.size(); }
  double coeff(std::size_t n) const { return c_[n]; }
  double& coeff(std::size_t n) { return c_[n]; }

  /// n-th derivative of the represented function at the expansion point.
  double derivative(std::size_t n) const {
    if (n >= c_.size()) throw std::out_of_range("Jet::derivative: order beyond truncation");
    double f = 1.0;
    for (std::size_t m = 2; m <= n; ++m) f *= static_cast<double>(m);
    return c_[n] * f;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; i + j < a.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
  }
  friend Jet operator*(double s, const Jet& a) {
    Jet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.c_[i] = s * a.c_[i];
    return r;
  }
  friend Jet operator+(double s, const Jet& a) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }

  /// exp of a jet via (exp u)' = exp(u) u'.
  friend Jet exp(const Jet& u) {
    Jet r(u.size());
    r.c_[0] = std::exp(u.c_[0]);
    for (std::size_t n = 1; n < u.size(); ++n) {
      double acc = 0.0;
      for (std::size_t j = 1; j <= n; ++j) acc += static_cast<double>(j) * u.c_[j] * r.c_[n - j];
      r.c_[n] = acc / static_cast<double>(n);
    }
    return r;
  }

  /// sin and cos of a jet, computed jointly.
  friend std::pair<Jet, Jet> sin_cos(const Jet& u) {
    Jet s(u.size()), c(u.size());
    s.c_[0] = std::sin(u.c_[0]);
    c.c_[0] = std::cos(u.c_[0]);
    for (std::size_t n = 1; n < u.size(); ++n) {
      double as = 0.0, ac = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        as += static_cast<double>(j) * u.c_[j] * c.c_[n - j];
        ac -= static_cast<double>(j) * u.c_[j] * s.c_[n - j];
      }
      s.c_[n] = as / static_cast<double>(n);
      c.c_[n] = ac / static_cast<double>(n);
    }
    return {s, c};
  }

 private:
  std::vector<double> c_;
};

}  // namespace wflow
