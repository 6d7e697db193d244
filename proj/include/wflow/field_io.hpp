#pragma once

// File formats: JSON field files (schema wigner-flow/field/v1), the thermo
// CSV table and orbit polylines.  Doubles are written with the shortest
// round-trip representation, so outputs are byte-identical across runs.

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wflow/grid.hpp"
#include "wflow/orbits.hpp"
#include "wflow/td_ensemble.hpp"

namespace wflow {

struct FieldParams {
  std::string model;
  std::optional<double> beta, gamma, nu2;
};

inline nlohmann::ordered_json grid_to_json(const PhaseGrid& g) {
  nlohmann::ordered_json j;
  j["x_min"] = g.x_min;
  j["x_max"] = g.x_max;
  j["k_min"] = g.k_min;
  j["k_max"] = g.k_max;
  j["n_x"] = g.n_x;
  j["n_k"] = g.n_k;
  j["periodic"] = {g.periodic_x, g.periodic_k};
  return j;
}

inline PhaseGrid grid_from_json(const nlohmann::json& j) {
  return make_grid(j.at("x_min"), j.at("x_max"), j.at("k_min"), j.at("k_max"),
                   j.at("n_x"), j.at("n_k"), j.at("periodic").at(0), j.at("periodic").at(1));
}

inline nlohmann::ordered_json params_to_json(const FieldParams& p) {
  nlohmann::ordered_json j;
  j["model"] = p.model;
  if (p.beta) j["beta"] = *p.beta;
  if (p.gamma) j["gamma"] = *p.gamma;
  if (p.nu2) j["nu2"] = *p.nu2;
  return j;
}

/// Scalar field file, schema wigner-flow/field/v1.
inline nlohmann::ordered_json field_to_json(const std::string& field_name, const ScalarField& f,
                                            const FieldParams& params) {
  nlohmann::ordered_json j;
  j["schema"] = "wigner-flow/field/v1";
  j["field_name"] = field_name;
  j["grid"] = grid_to_json(f.grid);
  j["params"] = params_to_json(params);
  j["values"] = f.values;
  return j;
}

/// Vector field file: components live under vector_values, same schema id.
inline nlohmann::ordered_json field_to_json(const std::string& field_name, const VectorField& v,
                                            const FieldParams& params) {
  nlohmann::ordered_json j;
  j["schema"] = "wigner-flow/field/v1";
  j["field_name"] = field_name;
  j["grid"] = grid_to_json(v.grid);
  j["params"] = params_to_json(params);
  j["vector_values"]["x"] = v.x_values;
  j["vector_values"]["k"] = v.k_values;
  return j;
}

inline void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

inline ScalarField read_scalar_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json j;
  in >> j;
  if (j.at("schema") != "wigner-flow/field/v1")
    throw std::runtime_error("unsupported schema in " + path);
  ScalarField f{grid_from_json(j.at("grid")), j.at("values").get<std::vector<double>>()};
  if (f.values.size() != f.grid.size())
    throw std::runtime_error("value count does not match grid in " + path);
  return f;
}

inline VectorField read_vector_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json j;
  in >> j;
  if (j.at("schema") != "wigner-flow/field/v1")
    throw std::runtime_error("unsupported schema in " + path);
  const auto& vv = j.at("vector_values");
  VectorField v{grid_from_json(j.at("grid")), vv.at("x").get<std::vector<double>>(),
                vv.at("k").get<std::vector<double>>()};
  if (v.x_values.size() != v.grid.size() || v.k_values.size() != v.grid.size())
    throw std::runtime_error("value count does not match grid in " + path);
  return v;
}

namespace detail {

// shortest round-trip decimal form of a double
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  nlohmann::json j = v;
  return j.dump();
}

}  // namespace detail

/// Thermo CSV with the fixed nine-column header.
inline void write_thermo_csv(const std::string& path, const ThermoCurve& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "beta,z_cl,z_q,purity_cl,purity_q,energy_cl,energy_q,heat_cl,heat_q\n";
  for (std::size_t i = 0; i < c.betas.size(); ++i) {
    out << detail::format_double(c.betas[i]) << ',' << detail::format_double(c.z_classical[i])
        << ',' << detail::format_double(c.z_corrected[i]) << ','
        << detail::format_double(c.purity_cl[i]) << ',' << detail::format_double(c.purity_q[i])
        << ',' << detail::format_double(c.energy_cl[i]) << ','
        << detail::format_double(c.energy_q[i]) << ',' << detail::format_double(c.heat_cl[i])
        << ',' << detail::format_double(c.heat_q[i]) << "\n";
  }
}

/// Orbit list file: energy, branch and traced polyline per entry.
inline nlohmann::ordered_json orbits_to_json(const std::vector<ClassicalOrbit>& orbits,
                                             const FieldParams& params) {
  nlohmann::ordered_json j;
  j["schema"] = "wigner-flow/orbits/v1";
  j["params"] = params_to_json(params);
  j["orbits"] = nlohmann::ordered_json::array();
  for (const auto& o : orbits) {
    nlohmann::ordered_json e;
    e["energy"] = o.energy;
    e["branch"] = to_string(o.branch);
    auto& poly = e["polyline"] = nlohmann::ordered_json::array();
    for (const auto& p : o.polyline) poly.push_back({p[0], p[1]});
    j["orbits"].push_back(std::move(e));
  }
  return j;
}

}  // namespace wflow
