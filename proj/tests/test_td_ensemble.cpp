#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wflow/td_ensemble.hpp"

using namespace wflow;

TEST_CASE("classical partition function: quadrature vs Bessel closed form") {
  for (double nu2 : {1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0), 2.0}) {
    SeparableModel m = harper_model(nu2);
    for (double beta : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double closed = z_classical(m, beta);
      const double quad = z_quadrature(m, beta);
      CHECK(std::abs(quad - closed) <= 1e-8 * closed);
    }
  }
}

TEST_CASE("corrected partition function: quadrature vs derived closed form") {
  for (double nu2 : {0.5, 1.0, std::sqrt(2.0)}) {
    SeparableModel m = harper_model(nu2);
    for (double beta : {0.2, 1.0, 2.0}) {
      CHECK(z_corrected(m, beta) ==
            Catch::Approx(z_corrected_closed_harper(beta, nu2)).epsilon(1e-8));
    }
  }
  CHECK(z_corrected_closed_harper(1.0, std::sqrt(2.0)) ==
        Catch::Approx(77.094134454995815).epsilon(1e-12));
}

TEST_CASE("corrected partition function flags the breakdown regime") {
  // beyond beta ~ 6 (nu2 = 1) the O(hbar^2) correction drives Z negative
  CHECK_THROWS_WITH(z_corrected(harper_model(1.0), 8.0),
                    "z_corrected: correction regime exceeded");
  CHECK_THROWS_AS(z_corrected(harper_model(1.0), -1.0), std::invalid_argument);
}

TEST_CASE("w0 and w_st2 are normalized") {
  SeparableModel m = harper_model(1.0);
  TdEnsemble e = make_td_ensemble(m, 1.0);
  ScalarField f0 = evaluate_field(e.grid, [&](double x, double k) { return w0(e, x, k); });
  ScalarField fq = evaluate_field(e.grid, [&](double x, double k) { return w_st2(e, x, k); });
  CHECK(volume_integral(f0) == Catch::Approx(1.0).epsilon(1e-8));
  CHECK(volume_integral(fq) == Catch::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("correction factor at the origin") {
  // chi(0,0) = -beta^2/8 * nu2 at beta = nu2 = 1, so the bracket is 7/8
  SeparableModel m = harper_model(1.0);
  CHECK(1.0 + chi(m, 1.0, 0.0, 0.0) == Catch::Approx(7.0 / 8.0).margin(1e-15));
  TdEnsemble e = make_td_ensemble(m, 1.0);
  CHECK(w_st2(e, 0.0, 0.0) ==
        Catch::Approx(std::exp(-2.0) * (7.0 / 8.0) / e.z_st).epsilon(1e-13));
}

TEST_CASE("corrected currents: reference values and classical limit") {
  SeparableModel m = harper_model(std::sqrt(2.0));
  TdEnsemble e = make_td_ensemble(m, 0.9, 101);
  auto j = corrected_currents(e, 0.7, -1.1);
  // unnormalized reference from an independent symbolic evaluation
  CHECK(j.first * e.z0 == Catch::Approx(0.21965261197454995).epsilon(1e-12));
  CHECK(j.second * e.z0 == Catch::Approx(0.21888071869351966).epsilon(1e-12));
  // small beta: corrections die off linearly and J -> classical velocity * W0
  TdEnsemble cold = make_td_ensemble(m, 1e-3, 101);
  auto jc = corrected_currents(cold, 0.7, -1.1);
  const double w = w0(cold, 0.7, -1.1);
  CHECK(jc.first == Catch::Approx(-std::sin(-1.1) * w).epsilon(2e-4));
  CHECK(jc.second == Catch::Approx(std::sqrt(2.0) * std::sin(0.7) * w).epsilon(2e-4));
}

TEST_CASE("expanded harper currents agree with the specialization to O(beta^2)") {
  SeparableModel m = harper_model(1.0);
  for (double beta : {0.05, 0.1, 0.2}) {
    TdEnsemble e = make_td_ensemble(m, beta, 101);
    double worst = 0.0, scale = 0.0;
    for (double x : {0.5, -1.3, 2.1}) {
      for (double k : {0.9, -0.4, 2.8}) {
        auto a = corrected_currents(e, x, k);
        auto b = corrected_currents_harper_expanded(e, x, k);
        worst = std::max({worst, std::abs(a.first - b.first), std::abs(a.second - b.second)});
        scale = std::max({scale, std::abs(a.first), std::abs(a.second)});
      }
    }
    // the two forms differ only in the beta^3 bracket
    CHECK(worst <= 0.5 * beta * beta * beta * scale);
  }
}

TEST_CASE("liouvillianity quantifier: closed form, generic form, hand value") {
  SeparableModel m = harper_model(1.0);
  TdEnsemble e = make_td_ensemble(m, 1.0, 101);
  CHECK(td_div_w(e, kPi / 4, kPi / 2) == Catch::Approx(1.0 / 24.0).margin(1e-15));
  for (double x : {-2.4, -1.2, 0.0, 1.2, 2.4}) {
    for (double k : {-2.4, -1.2, 0.0, 1.2, 2.4}) {
      CHECK(td_div_w(e, x, k) == Catch::Approx(td_div_w_generic(m, 1.0, x, k)).margin(1e-12));
    }
  }
}

TEST_CASE("thermo curve invariants over the standard beta set") {
  SeparableModel m = harper_model(1.0);
  ThermoCurve c = thermo_curve(m, {0.1, 0.5, 1.0, 3.0, 5.0}, 201);
  REQUIRE(c.betas.size() == 5);
  // energy at beta = 1: -d/dbeta ln Z0 = -2 I1(1)/I0(1)
  CHECK(c.energy_cl[2] == Catch::Approx(-2.0 * bessel_i(1, 1.0) / bessel_i(0, 1.0)).epsilon(1e-6));
  for (std::size_t i = 0; i < c.betas.size(); ++i) {
    CHECK(c.z_classical[i] > 0);
    CHECK(c.z_corrected[i] > 0);
    CHECK(c.heat_cl[i] > 0);
    // the quantum correction suppresses the (negative) energy in magnitude
    CHECK(std::abs(c.energy_q[i]) <= std::abs(c.energy_cl[i]) + 1e-9);
  }
  // the corrected purity needs Z_St(2 beta): past the validity regime it
  // degrades to NaN rather than failing the curve
  CHECK(std::isfinite(c.purity_q[2]));  // beta = 1
  CHECK(std::isnan(c.purity_q[4]));     // beta = 5 needs Z_St(10) < 0
}

TEST_CASE("corrected purity stays below one for moderate beta") {
  for (double nu2 : {1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0), 2.0}) {
    SeparableModel m = harper_model(nu2);
    ThermoCurve c = thermo_curve(m, {0.1, 0.25, 0.5, 0.75, 1.0}, 201);
    for (std::size_t i = 0; i < c.betas.size(); ++i) {
      CHECK(c.purity_q[i] <= 1.0 + 1e-6);
      CHECK(c.purity_cl[i] < 1.0);
    }
  }
}

TEST_CASE("classical purity approaches the uniform-state value as beta -> 0") {
  SeparableModel m = harper_model(1.0);
  const double p = z_classical(m, 2e-6) / std::pow(z_classical(m, 1e-6), 2);
  CHECK(std::abs(p - 1.0 / kFourPiSq) < 1e-10);
}

TEST_CASE("thermo curve validates its beta range") {
  SeparableModel m = harper_model(1.0);
  CHECK_THROWS_AS(thermo_curve(m, {}), std::invalid_argument);
  CHECK_THROWS_AS(thermo_curve(m, {-0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(thermo_curve(m, {1.0, 0.5}), std::invalid_argument);
}
