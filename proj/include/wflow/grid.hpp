#pragma once

// Phase-space grids, scalar/vector fields and the finite-difference /
// quadrature calculus on them.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wflow/parallel.hpp"

namespace wflow {

enum class Axis { X, K };

/// Uniform rectangular grid over an (x, k) window.  Node coordinates are
/// x_i = x_min + i h_x with h_x = (x_max - x_min)/(n_x - 1).  On a periodic
/// axis the last node duplicates the first one period away.
struct PhaseGrid {
  double x_min = 0, x_max = 0, k_min = 0, k_max = 0;
  int n_x = 0, n_k = 0;
  bool periodic_x = false, periodic_k = false;

  double h_x() const { return (x_max - x_min) / (n_x - 1); }
  double h_k() const { return (k_max - k_min) / (n_k - 1); }
  double x(int i) const { return x_min + i * h_x(); }
  double k(int j) const { return k_min + j * h_k(); }
  std::size_t size() const { return static_cast<std::size_t>(n_x) * n_k; }
  // row-major, x outer
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_k + j; }
};

inline PhaseGrid make_grid(double x_min, double x_max, double k_min, double k_max,
                           int n_x, int n_k, bool periodic_x = false, bool periodic_k = false) {
  if (!(x_min < x_max)) throw std::invalid_argument("make_grid: x_min >= x_max");
  if (!(k_min < k_max)) throw std::invalid_argument("make_grid: k_min >= k_max");
  if (n_x < 8) throw std::invalid_argument("make_grid: n_x < 8");
  if (n_k < 8) throw std::invalid_argument("make_grid: n_k < 8");
  return PhaseGrid{x_min, x_max, k_min, k_max, n_x, n_k, periodic_x, periodic_k};
}

struct ScalarField {
  PhaseGrid grid;
  std::vector<double> values;

  double at(int i, int j) const { return values[grid.index(i, j)]; }
  double& at(int i, int j) { return values[grid.index(i, j)]; }
};

struct VectorField {
  PhaseGrid grid;
  std::vector<double> x_values, k_values;
};

inline ScalarField evaluate_field(const PhaseGrid& g,
                                  const std::function<double(double, double)>& f) {
  ScalarField out{g, std::vector<double>(g.size())};
  parallel_for(g.size(), [&](std::size_t idx) {
    int i = static_cast<int>(idx) / g.n_k;
    int j = static_cast<int>(idx) % g.n_k;
    out.values[idx] = f(g.x(i), g.k(j));
  });
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (!std::isfinite(out.values[idx])) {
      int i = static_cast<int>(idx) / g.n_k, j = static_cast<int>(idx) % g.n_k;
      throw std::runtime_error("evaluate_field: non-finite value at (x=" +
                               std::to_string(g.x(i)) + ", k=" + std::to_string(g.k(j)) + ")");
    }
  }
  return out;
}

inline VectorField evaluate_vector_field(
    const PhaseGrid& g, const std::function<std::array<double, 2>(double, double)>& f) {
  VectorField out{g, std::vector<double>(g.size()), std::vector<double>(g.size())};
  parallel_for(g.size(), [&](std::size_t idx) {
    int i = static_cast<int>(idx) / g.n_k;
    int j = static_cast<int>(idx) % g.n_k;
    auto v = f(g.x(i), g.k(j));
    out.x_values[idx] = v[0];
    out.k_values[idx] = v[1];
  });
  return out;
}

namespace detail {

// Fornberg weights for the m-th derivative at x0 on the given nodes.
inline std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
  const int n = static_cast<int>(xs.size());
  std::vector<std::vector<double>> w(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  w[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int s = mn; s >= 1; --s)
          w[i][s] = c1 * (s * w[i - 1][s - 1] - c5 * w[i - 1][s]) / c2;
        w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
      }
      for (int s = mn; s >= 1; --s)
        w[j][s] = (c4 * w[j][s] - s * w[j][s - 1]) / c3;
      w[j][0] = c4 * w[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = w[i][m];
  return out;
}

// 1-D derivative along one axis of a field line accessor.
// n: points on the axis, h: spacing, periodic: wrap (last node == first).
struct LineStencils {
  // per-node stencil: start index and weights (open axis); periodic axes use
  // the central row with modular indexing.
  std::vector<int> start;
  std::vector<std::vector<double>> weights;
};

inline LineStencils make_stencils(int n, double h, int order, bool periodic) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("partial_derivative: order must be 1 or 2");
  if (n < 2 * order + 5)
    throw std::invalid_argument("partial_derivative: grid too coarse (n < 2*order+5)");
  LineStencils st;
  st.start.resize(n);
  st.weights.resize(n);
  auto window_nodes = [&](int start, int size) {
    std::vector<double> xs(size);
    for (int s = 0; s < size; ++s) xs[s] = (start + s) * h;
    return xs;
  };
  if (periodic) {
    // 4th-order central stencil everywhere, indices wrapped mod (n-1).
    auto wc = fd_weights(2 * h, window_nodes(0, 5), order);
    for (int i = 0; i < n; ++i) {
      st.start[i] = i - 2;
      st.weights[i] = wc;
    }
    return st;
  }
  const int size = (order == 1) ? 5 : 6;  // one-sided 2nd-derivative needs 6 points
  for (int i = 0; i < n; ++i) {
    if (order == 2 && i >= 2 && i <= n - 3) {
      st.start[i] = i - 2;
      st.weights[i] = fd_weights(2 * h, window_nodes(0, 5), order);
      continue;
    }
    int start = std::min(std::max(i - 2, 0), n - size);
    st.start[i] = start;
    st.weights[i] = fd_weights((i - start) * h, window_nodes(0, size), order);
  }
  return st;
}

}  // namespace detail

/// Finite-difference partial derivative, 4th-order accurate.  Periodic axes
/// wrap; open axes use one-sided stencils near the boundary.
inline ScalarField partial_derivative(const ScalarField& f, Axis axis, int order) {
  const PhaseGrid& g = f.grid;
  const bool along_x = (axis == Axis::X);
  const int n = along_x ? g.n_x : g.n_k;
  const double h = along_x ? g.h_x() : g.h_k();
  const bool periodic = along_x ? g.periodic_x : g.periodic_k;
  const auto st = detail::make_stencils(n, h, order, periodic);

  ScalarField out{g, std::vector<double>(g.size())};
  const int n_other = along_x ? g.n_k : g.n_x;
  const int period = n - 1;
  parallel_for(static_cast<std::size_t>(n_other), [&](std::size_t oidx) {
    int o = static_cast<int>(oidx);
    for (int i = 0; i < n; ++i) {
      const auto& w = st.weights[i];
      double acc = 0.0;
      for (std::size_t s = 0; s < w.size(); ++s) {
        int idx = st.start[i] + static_cast<int>(s);
        if (periodic) idx = ((idx % period) + period) % period;
        acc += w[s] * (along_x ? f.at(idx, o) : f.at(o, idx));
      }
      if (along_x)
        out.at(i, o) = acc;
      else
        out.at(o, i) = acc;
    }
  });
  return out;
}

/// d_x J_x + d_k J_k.
inline ScalarField divergence(const VectorField& v) {
  ScalarField jx{v.grid, v.x_values}, jk{v.grid, v.k_values};
  ScalarField dx = partial_derivative(jx, Axis::X, 1);
  ScalarField dk = partial_derivative(jk, Axis::K, 1);
  for (std::size_t i = 0; i < dx.values.size(); ++i) dx.values[i] += dk.values[i];
  return dx;
}

/// Bilinear interpolation of a scalar field at (x, k); clamps to the window.
inline double bilinear(const ScalarField& f, double x, double k) {
  const PhaseGrid& g = f.grid;
  double tx = (x - g.x_min) / g.h_x();
  double tk = (k - g.k_min) / g.h_k();
  int i = static_cast<int>(std::floor(tx));
  int j = static_cast<int>(std::floor(tk));
  i = std::min(std::max(i, 0), g.n_x - 2);
  j = std::min(std::max(j, 0), g.n_k - 2);
  double ax = tx - i, ak = tk - j;
  ax = std::min(std::max(ax, 0.0), 1.0);
  ak = std::min(std::max(ak, 0.0), 1.0);
  return (1 - ax) * (1 - ak) * f.at(i, j) + ax * (1 - ak) * f.at(i + 1, j) +
         (1 - ax) * ak * f.at(i, j + 1) + ax * ak * f.at(i + 1, j + 1);
}

struct Window {
  double x_lo, x_hi, k_lo, k_hi;
};

/// 2-D trapezoidal integral over a rectangular sub-window.  Node-aligned
/// windows sample grid values exactly; otherwise values are interpolated
/// bilinearly on a sub-grid at least as fine as the field's.
inline double volume_integral(const ScalarField& f, const Window& w) {
  const PhaseGrid& g = f.grid;
  const double eps = 1e-9 * std::max(g.x_max - g.x_min, g.k_max - g.k_min);
  if (w.x_lo < g.x_min - eps || w.x_hi > g.x_max + eps || w.k_lo < g.k_min - eps ||
      w.k_hi > g.k_max + eps || !(w.x_lo < w.x_hi) || !(w.k_lo < w.k_hi))
    throw std::invalid_argument("volume_integral: window outside grid");

  int m_x = std::max(8, static_cast<int>(std::lround((w.x_hi - w.x_lo) / g.h_x()))) + 1;
  int m_k = std::max(8, static_cast<int>(std::lround((w.k_hi - w.k_lo) / g.h_k()))) + 1;
  const double sx = (w.x_hi - w.x_lo) / (m_x - 1);
  const double sk = (w.k_hi - w.k_lo) / (m_k - 1);
  double acc = 0.0;
  for (int i = 0; i < m_x; ++i) {
    const double wx = (i == 0 || i == m_x - 1) ? 0.5 : 1.0;
    const double xi = w.x_lo + i * sx;
    double row = 0.0;
    for (int j = 0; j < m_k; ++j) {
      const double wk = (j == 0 || j == m_k - 1) ? 0.5 : 1.0;
      row += wk * bilinear(f, xi, w.k_lo + j * sk);
    }
    acc += wx * row;
  }
  return acc * sx * sk;
}

/// Integral over the full grid window.
inline double volume_integral(const ScalarField& f) {
  return volume_integral(f, Window{f.grid.x_min, f.grid.x_max, f.grid.k_min, f.grid.k_max});
}

/// Outward-normal flux of a vector field through a closed polyline,
/// counter-clockwise traversal.  32 bilinear samples per edge.
inline double loop_flux(const VectorField& v, const std::vector<std::array<double, 2>>& poly) {
  if (poly.size() < 4) throw std::invalid_argument("loop_flux: polyline too short");
  const auto& a = poly.front();
  const auto& b = poly.back();
  if (std::hypot(a[0] - b[0], a[1] - b[1]) > 1e-12)
    throw std::invalid_argument("loop_flux: polyline not closed");
  const PhaseGrid& g = v.grid;
  for (const auto& p : poly)
    if (p[0] < g.x_min - 1e-12 || p[0] > g.x_max + 1e-12 || p[1] < g.k_min - 1e-12 ||
        p[1] > g.k_max + 1e-12)
      throw std::invalid_argument("loop_flux: vertex outside grid");

  ScalarField jx{g, v.x_values}, jk{g, v.k_values};
  constexpr int kSamples = 32;
  double flux = 0.0;
  for (std::size_t e = 0; e + 1 < poly.size(); ++e) {
    const double dx = poly[e + 1][0] - poly[e][0];
    const double dk = poly[e + 1][1] - poly[e][1];
    const double len = std::hypot(dx, dk);
    if (len == 0.0) continue;
    // outward normal for CCW traversal
    const double nx = dk / len, nk = -dx / len;
    double acc = 0.0;
    for (int s = 0; s <= kSamples; ++s) {
      const double t = static_cast<double>(s) / kSamples;
      const double px = poly[e][0] + t * dx, pk = poly[e][1] + t * dk;
      const double jn = bilinear(jx, px, pk) * nx + bilinear(jk, px, pk) * nk;
      acc += (s == 0 || s == kSamples) ? 0.5 * jn : jn;
    }
    flux += acc * len / kSamples;
  }
  return flux;
}

}  // namespace wflow
