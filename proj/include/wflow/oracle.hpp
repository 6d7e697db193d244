#pragma once

// Independent brute-force verification suite.  Each closed form in the
// library is checked against a slower computation that never shares the
// code path it verifies.

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wflow/gaussian_ensemble.hpp"
#include "wflow/grid.hpp"
#include "wflow/models.hpp"
#include "wflow/special_functions.hpp"
#include "wflow/td_ensemble.hpp"
#include "wflow/wigner_series.hpp"

namespace wflow {

struct CheckReport {
  std::string name;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::string> details;  // worst offenders

  void finish() { passed = max_abs_error <= tolerance; }
};

namespace detail {

inline void track_worst(CheckReport& r, double err, const std::string& where, double got,
                        double want) {
  if (err > r.max_abs_error) {
    r.max_abs_error = err;
    std::ostringstream os;
    os.precision(15);
    os << where << ": got " << got << ", reference " << want;
    if (r.details.empty())
      r.details.push_back(os.str());
    else
      r.details.back() = os.str();
  }
}

inline std::vector<std::array<double, 2>> rectangle_polyline(double x_lo, double x_hi,
                                                             double k_lo, double k_hi,
                                                             double h_target) {
  std::vector<std::array<double, 2>> poly;
  auto add_edge = [&](double ax, double ak, double bx, double bk) {
    const double len = std::hypot(bx - ax, bk - ak);
    const int seg = std::max(1, static_cast<int>(std::ceil(len / h_target)));
    for (int s = 0; s < seg; ++s) {
      const double t = static_cast<double>(s) / seg;
      poly.push_back({ax + t * (bx - ax), ak + t * (bk - ak)});
    }
  };
  add_edge(x_lo, k_lo, x_hi, k_lo);  // counter-clockwise
  add_edge(x_hi, k_lo, x_hi, k_hi);
  add_edge(x_hi, k_hi, x_lo, k_hi);
  add_edge(x_lo, k_hi, x_lo, k_lo);
  poly.push_back({x_lo, k_lo});
  return poly;
}

}  // namespace detail

/// Quadrature Z0 (periodic trapezoid over exp(-beta H)) vs the Bessel
/// closed form, relative error < 1e-8.
inline CheckReport check_quadrature_vs_bessel(
    const std::vector<double>& betas = {0.1, 0.5, 1.0, 2.0, 5.0},
    const std::vector<double>& nu2s = {1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0), 2.0}) {
  CheckReport r;
  r.name = "quadrature_vs_bessel";
  r.tolerance = 1e-8;
  for (double nu2 : nu2s) {
    SeparableModel m = harper_model(nu2);
    for (double beta : betas) {
      const double quad = z_quadrature(m, beta);
      const double closed = kFourPiSq * bessel_i(0, beta) * bessel_i(0, nu2 * beta);
      const double err = std::abs(quad - closed) / closed;
      std::ostringstream os;
      os << "beta=" << beta << " nu2=" << nu2;
      detail::track_worst(r, err, os.str(), quad, closed);
    }
  }
  r.finish();
  return r;
}

/// Hermite-series current divergences vs the sinh closed forms,
/// max abs error < 1e-10 on a 101x101 grid.
inline CheckReport check_series_vs_closed(
    const std::vector<double>& gammas = {1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0)},
    int eta_max = 25) {
  CheckReport r;
  r.name = "series_vs_closed";
  r.tolerance = 1e-10;
  PhaseGrid g = make_grid(-kPi, kPi, -kPi, kPi, 101, 101, true, true);
  TruncationPolicy policy{eta_max, 0.0};  // run the full truncation, no early exit
  for (double gamma : gammas) {
    GaussianEnsemble e = make_gaussian_ensemble(gamma, harper_model(1.0));
    for (int i = 0; i < g.n_x; ++i) {
      for (int j = 0; j < g.n_k; ++j) {
        auto s = div_series(e, g.x(i), g.k(j), policy);
        auto c = div_closed(e, g.x(i), g.k(j));
        const double err = std::max(std::abs(s.first - c.first), std::abs(s.second - c.second));
        std::ostringstream os;
        os << "gamma=" << gamma << " x=" << g.x(i) << " k=" << g.k(j);
        detail::track_worst(r, err, os.str(), s.first, c.first);
      }
    }
  }
  r.finish();
  return r;
}

/// Continuity identity |dW/dt + div(J)| < 1e-6 max|J| at matched truncation,
/// with div(J) taken by finite differences on the grid interior.
inline CheckReport check_continuity(const SeparableModel& model, const WignerFunctionSpec& wspec,
                                    const std::string& label, const PhaseGrid& grid,
                                    const TruncationPolicy& policy = {}) {
  CheckReport r;
  r.name = "continuity_" + label;
  VectorField j = current_field(model, wspec, policy, grid);
  ScalarField div_j = divergence(j);
  ScalarField dwdt = dW_dt_field(model, wspec, policy, grid);
  double max_j = 0.0;
  for (std::size_t i = 0; i < j.x_values.size(); ++i)
    max_j = std::max({max_j, std::abs(j.x_values[i]), std::abs(j.k_values[i])});
  r.tolerance = 1e-6 * max_j;
  const int skip_x = grid.periodic_x ? 0 : 4;
  const int skip_k = grid.periodic_k ? 0 : 4;
  for (int i = skip_x; i < grid.n_x - skip_x; ++i) {
    for (int jj = skip_k; jj < grid.n_k - skip_k; ++jj) {
      const double res = dwdt.at(i, jj) + div_j.at(i, jj);
      std::ostringstream os;
      os << "x=" << grid.x(i) << " k=" << grid.k(jj);
      detail::track_worst(r, std::abs(res), os.str(), dwdt.at(i, jj), -div_j.at(i, jj));
    }
  }
  r.finish();
  return r;
}

/// Green's theorem: loop flux vs volume integral of the divergence on
/// rectangles, within 10 h^2 relative tolerance.
inline CheckReport check_greens_theorem(const VectorField& field, const std::string& label,
                                        const std::vector<std::array<double, 4>>& rects) {
  CheckReport r;
  r.name = "greens_theorem_" + label;
  const double h = std::max(field.grid.h_x(), field.grid.h_k());
  ScalarField div = divergence(field);
  double worst_rel = 0.0;
  for (const auto& rect : rects) {
    const auto poly = detail::rectangle_polyline(rect[0], rect[1], rect[2], rect[3], h);
    const double flux = loop_flux(field, poly);
    const double vol = volume_integral(div, Window{rect[0], rect[1], rect[2], rect[3]});
    const double rel = std::abs(flux - vol) / std::max(1.0, std::abs(vol));
    std::ostringstream os;
    os << "rect [" << rect[0] << "," << rect[1] << "]x[" << rect[2] << "," << rect[3] << "]";
    detail::track_worst(r, rel, os.str(), flux, vol);
    worst_rel = std::max(worst_rel, rel);
  }
  r.tolerance = 10.0 * h * h;
  r.finish();
  return r;
}

/// Quadratic Hamiltonians have exactly Liouvillian flow: |div w| < 1e-12
/// everywhere for the harmonic model, Gaussian and TD ensembles alike.
inline CheckReport check_harmonic_liouvillian() {
  CheckReport r;
  r.name = "harmonic_liouvillian";
  r.tolerance = 1e-12;
  SeparableModel m = harmonic_model();
  PhaseGrid g = make_grid(-3.0, 3.0, -3.0, 3.0, 41, 41);
  TruncationPolicy policy;
  WignerFunctionSpec gauss = make_gaussian_wspec(1.0);
  WignerFunctionSpec td = make_td_wspec(m, 1.0, 1.0);
  for (int i = 0; i < g.n_x; ++i) {
    for (int j = 0; j < g.n_k; ++j) {
      const double a = div_w(m, gauss, policy, g.x(i), g.k(j));
      const double b = div_w(m, td, policy, g.x(i), g.k(j));
      std::ostringstream os;
      os << "x=" << g.x(i) << " k=" << g.k(j);
      detail::track_worst(r, std::max(std::abs(a), std::abs(b)), os.str(), a, 0.0);
    }
  }
  r.finish();
  return r;
}

/// Generic Liouvillianity quantifier vs the Harper closed form at a point
/// lattice, pointwise agreement < 1e-12.
inline CheckReport check_td_divw_consistency() {
  CheckReport r;
  r.name = "td_divw_consistency";
  r.tolerance = 1e-12;
  const std::vector<double> pts = {-2.4, -1.2, 0.0, 1.2, 2.4};
  const std::vector<double> betas = {0.1, 1.0, 3.0, 5.0};
  const std::vector<double> nu2s = {1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0), 2.0};
  for (double nu2 : nu2s) {
    SeparableModel m = harper_model(nu2);
    for (double beta : betas) {
      TdEnsemble e{m, beta, make_grid(-kPi, kPi, -kPi, kPi, 8, 8, true, true), 1.0, 1.0};
      auto probe = [&](double x, double k) {
        const double closed = td_div_w(e, x, k);
        const double generic = td_div_w_generic(m, beta, x, k);
        std::ostringstream os;
        os << "beta=" << beta << " nu2=" << nu2 << " x=" << x << " k=" << k;
        detail::track_worst(r, std::abs(closed - generic), os.str(), closed, generic);
      };
      for (double x : pts)
        for (double k : pts) probe(x, k);
      probe(kPi / 4.0, kPi / 2.0);
    }
  }
  r.finish();
  return r;
}

/// Full verification suite at default resolutions.
inline std::vector<CheckReport> run_all_checks() {
  std::vector<CheckReport> out;
  out.push_back(check_quadrature_vs_bessel());
  out.push_back(check_series_vs_closed());

  SeparableModel harper = harper_model(1.0);
  SeparableModel harm = harmonic_model();
  PhaseGrid harper_grid = make_grid(-kPi, kPi, -kPi, kPi, 201, 201, true, true);
  // Gaussian-ensemble fields are not 2 pi periodic, so their finite
  // differences run on open grids
  PhaseGrid open_grid = make_grid(-kPi, kPi, -kPi, kPi, 401, 401);
  PhaseGrid harm_grid = make_grid(-5.0, 5.0, -5.0, 5.0, 401, 401);
  TruncationPolicy policy;

  out.push_back(check_continuity(harm, make_gaussian_wspec(1.0), "harmonic_gaussian", harm_grid,
                                 policy));
  out.push_back(
      check_continuity(harper, make_gaussian_wspec(1.0), "harper_gaussian", open_grid, policy));
  out.push_back(
      check_continuity(harper, make_td_wspec(harper, 1.0, 1.0), "harper_td", harper_grid, policy));

  // Green's theorem for classical, TD-corrected and Gaussian currents.
  // The rectangles are nested but off-center: centered loops would make
  // every flux vanish by parity and the check trivial.  nu^2 = 2 keeps the
  // classical current divergence nonzero pointwise.
  const std::vector<std::array<double, 4>> rects = {{-0.15, 1.05, -0.9, 0.3},
                                                    {-0.75, 1.65, -1.5, 0.9},
                                                    {-1.35, 2.25, -2.1, 1.5}};
  {
    SeparableModel harper2 = harper_model(2.0);
    TdEnsemble ens = make_td_ensemble(harper2, 1.0, 201);
    VectorField classical = evaluate_vector_field(harper_grid, [&](double x, double k) {
      const double w = w0(ens, x, k);
      return std::array<double, 2>{-std::sin(k) * w, 2.0 * std::sin(x) * w};
    });
    out.push_back(check_greens_theorem(classical, "classical", rects));
    VectorField corrected = evaluate_vector_field(harper_grid, [&](double x, double k) {
      auto j = corrected_currents(ens, x, k);
      return std::array<double, 2>{j.first, j.second};
    });
    out.push_back(check_greens_theorem(corrected, "td_corrected", rects));
    GaussianEnsemble ge = make_gaussian_ensemble(1.0, harper2);
    VectorField gaussian = evaluate_vector_field(open_grid, [&](double x, double k) {
      auto j = currents_erf(ge, x, k);
      return std::array<double, 2>{j.first, j.second};
    });
    out.push_back(check_greens_theorem(gaussian, "gaussian", rects));
  }

  out.push_back(check_harmonic_liouvillian());
  out.push_back(check_td_divw_consistency());
  return out;
}

}  // namespace wflow
