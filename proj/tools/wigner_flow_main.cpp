// wigner-flow: phase-space flow maps, thermodynamic curves and the
// verification suite for separable Hamiltonians.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wflow/wflow.hpp"

using namespace wflow;

namespace {

PhaseGrid harper_grid(int n) { return make_grid(-kPi, kPi, -kPi, kPi, n, n, true, true); }

// insert a suffix before the file extension: out.csv + "_nu2-2" -> out_nu2-2.csv
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string trim_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

int cmd_classical(const std::string& model_name, double nu2, const std::vector<double>& energies,
                  const std::string& out) {
  if (model_name != "harper") {
    std::cerr << "classical: only --model harper is supported\n";
    return 2;
  }
  SeparableModel m = harper_model(nu2);
  std::vector<ClassicalOrbit> orbits;
  for (double eps : energies) orbits.push_back(classify_and_trace(m, eps));
  FieldParams p;
  p.model = "harper";
  p.nu2 = nu2;
  write_json_file(out, orbits_to_json(orbits, p));
  for (const auto& o : orbits)
    std::printf("energy %g: %s (%zu points)\n", o.energy, to_string(o.branch).c_str(),
                o.polyline.size());
  return 0;
}

int cmd_td_field(double beta, double nu2, int n, const std::string& out) {
  SeparableModel m = harper_model(nu2);
  TdEnsemble e = make_td_ensemble(m, beta);
  PhaseGrid g = harper_grid(n);
  FieldParams p;
  p.model = "harper";
  p.beta = beta;
  p.nu2 = nu2;

  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  files.push_back(field_to_json(
      "w0", evaluate_field(g, [&](double x, double k) { return w0(e, x, k); }), p));
  files.push_back(field_to_json(
      "w_st2", evaluate_field(g, [&](double x, double k) { return w_st2(e, x, k); }), p));
  VectorField j = evaluate_vector_field(g, [&](double x, double k) {
    auto v = corrected_currents(e, x, k);
    return std::array<double, 2>{v.first, v.second};
  });
  files.push_back(field_to_json("currents", j, p));
  files.push_back(field_to_json("div_J", divergence(j), p));
  files.push_back(field_to_json(
      "div_w", evaluate_field(g, [&](double x, double k) { return td_div_w(e, x, k); }), p));
  write_json_file(out, files);
  std::printf("wrote %zu fields to %s\n", files.size(), out.c_str());
  return 0;
}

int cmd_td_thermo(double beta_min, double beta_max, int steps, std::vector<double> nu2s,
                  const std::string& out) {
  if (!(beta_min > 0 && beta_min < beta_max)) {
    std::cerr << "td-thermo: need 0 < beta-min < beta-max\n";
    return 2;
  }
  if (nu2s.empty()) nu2s = {1.0};
  std::vector<double> betas(steps);
  for (int i = 0; i < steps; ++i)
    betas[i] = beta_min + (beta_max - beta_min) * i / std::max(1, steps - 1);
  for (double nu2 : nu2s) {
    ThermoCurve c = thermo_curve(harper_model(nu2), betas);
    const std::string path =
        nu2s.size() == 1 ? out : with_suffix(out, "_nu2-" + trim_number(nu2));
    write_thermo_csv(path, c);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

int cmd_gaussian_field(double gamma, double nu2, int n, const std::string& out) {
  GaussianEnsemble e = make_gaussian_ensemble(gamma, harper_model(nu2));
  PhaseGrid g = harper_grid(n);
  FieldParams p;
  p.model = "harper";
  p.gamma = gamma;
  p.nu2 = nu2;

  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  files.push_back(field_to_json(
      "g_gamma", evaluate_field(g, [&](double x, double k) { return g_gamma(e, x, k); }), p));
  VectorField j = evaluate_vector_field(g, [&](double x, double k) {
    auto v = currents_erf(e, x, k);
    return std::array<double, 2>{v.first, v.second};
  });
  files.push_back(field_to_json("currents", j, p));
  files.push_back(field_to_json("div_J", evaluate_field(g, [&](double x, double k) {
                                  auto c = div_closed(e, x, k);
                                  return c.first + c.second;
                                }), p));
  VectorField w = evaluate_vector_field(g, [&](double x, double k) {
    auto v = velocity_field(e, x, k);
    return std::array<double, 2>{v.first, v.second};
  });
  files.push_back(field_to_json("w", w, p));
  files.push_back(field_to_json(
      "div_w", evaluate_field(g, [&](double x, double k) { return gaussian_div_w(e, x, k); }),
      p));
  write_json_file(out, files);
  std::printf("wrote %zu fields to %s\n", files.size(), out.c_str());
  return 0;
}

int cmd_verify(const std::string& json_out) {
  auto checks = run_all_checks();
  bool all = true;
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    std::printf("[%s] %-28s max err %.3g (tol %.3g)\n", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.max_abs_error, c.tolerance);
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["max_abs_error"] = c.max_abs_error;
    e["tolerance"] = c.tolerance;
    e["passed"] = c.passed;
    e["details"] = c.details;
    report.push_back(std::move(e));
  }
  if (!json_out.empty()) {
    nlohmann::ordered_json j;
    j["schema"] = "wigner-flow/verify/v1";
    j["passed"] = all;
    j["checks"] = std::move(report);
    write_json_file(json_out, j);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner phase-space flow toolkit for separable Hamiltonians"};
  app.require_subcommand(1);

  // classical
  std::string cl_model = "harper", cl_out = "orbits.json";
  double cl_nu2 = 1.0;
  std::vector<double> cl_energies;
  auto* classical = app.add_subcommand("classical", "Classify and trace classical orbits");
  classical->add_option("--model", cl_model, "Hamiltonian model")->capture_default_str();
  classical->add_option("--nu2", cl_nu2, "Harper nu^2 parameter")->capture_default_str();
  classical->add_option("--energies", cl_energies, "Energy levels to trace")->required();
  classical->add_option("--out", cl_out, "Output orbit JSON file")->capture_default_str();

  // td-field
  double tf_beta = 1.0, tf_nu2 = 1.0;
  int tf_grid = 201;
  std::string tf_out = "td_fields.json";
  auto* td_field = app.add_subcommand("td-field", "Thermodynamic ensemble flow maps");
  td_field->add_option("--beta", tf_beta, "Inverse temperature")->check(CLI::PositiveNumber);
  td_field->add_option("--nu2", tf_nu2, "Harper nu^2 parameter")->capture_default_str();
  td_field->add_option("--grid", tf_grid, "Grid points per axis")->capture_default_str();
  td_field->add_option("--out", tf_out, "Output JSON file")->capture_default_str();

  // td-thermo
  double tt_min = 0.1, tt_max = 5.0;
  int tt_steps = 50;
  std::vector<double> tt_nu2s;
  std::string tt_out = "thermo.csv";
  auto* td_thermo = app.add_subcommand("td-thermo", "Thermodynamic observable curves");
  td_thermo->add_option("--beta-min", tt_min, "Lowest beta")->capture_default_str();
  td_thermo->add_option("--beta-max", tt_max, "Highest beta")->capture_default_str();
  td_thermo->add_option("--steps", tt_steps, "Number of beta samples")->capture_default_str();
  td_thermo->add_option("--nu2", tt_nu2s, "Harper nu^2 values (one file each)");
  td_thermo->add_option("--out", tt_out, "Output CSV file")->capture_default_str();

  // gaussian-field
  double gf_gamma = 1.0, gf_nu2 = 1.0;
  int gf_grid = 201;
  std::string gf_out = "gaussian_fields.json";
  auto* gaussian = app.add_subcommand("gaussian-field", "Gaussian ensemble flow maps");
  gaussian->add_option("--gamma", gf_gamma, "Gaussian width parameter")->capture_default_str();
  gaussian->add_option("--nu2", gf_nu2, "Harper nu^2 parameter")->capture_default_str();
  gaussian->add_option("--grid", gf_grid, "Grid points per axis")->capture_default_str();
  gaussian->add_option("--out", gf_out, "Output JSON file")->capture_default_str();

  // verify
  std::string vf_json;
  auto* verify = app.add_subcommand("verify", "Run the oracle verification suite");
  verify->add_option("--json", vf_json, "Write a machine-readable report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classical->parsed()) return cmd_classical(cl_model, cl_nu2, cl_energies, cl_out);
    if (td_field->parsed()) return cmd_td_field(tf_beta, tf_nu2, tf_grid, tf_out);
    if (td_thermo->parsed()) return cmd_td_thermo(tt_min, tt_max, tt_steps, tt_nu2s, tt_out);
    if (gaussian->parsed()) return cmd_gaussian_field(gf_gamma, gf_nu2, gf_grid, gf_out);
    if (verify->parsed()) return cmd_verify(vf_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
