#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wflow/field_io.hpp"
#include "wflow/oracle.hpp"

using namespace wflow;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("oracle: quadrature vs bessel") {
  CheckReport r = check_quadrature_vs_bessel();
  INFO((r.details.empty() ? std::string() : r.details.back()));
  CHECK(r.passed);
  CHECK(r.max_abs_error < r.tolerance);
}

TEST_CASE("oracle: harmonic liouvillian") {
  CheckReport r = check_harmonic_liouvillian();
  INFO((r.details.empty() ? std::string() : r.details.back()));
  CHECK(r.passed);
}

TEST_CASE("oracle: td div(w) consistency") {
  CheckReport r = check_td_divw_consistency();
  INFO((r.details.empty() ? std::string() : r.details.back()));
  CHECK(r.passed);
}

TEST_CASE("oracle: a failing tolerance is reported as such") {
  CheckReport r = check_quadrature_vs_bessel({5.0}, {2.0});
  r.tolerance = 0.0;
  r.finish();
  CHECK_FALSE(r.passed);
}

TEST_CASE("scalar field files round-trip") {
  PhaseGrid g = make_grid(-kPi, kPi, -kPi, kPi, 9, 9, true, true);
  ScalarField f = evaluate_field(g, [](double x, double k) { return std::sin(x) + 0.25 * k; });
  FieldParams p;
  p.model = "harper";
  p.beta = 1.0;
  p.nu2 = 2.0;
  const std::string path = "test_field_roundtrip.json";
  write_json_file(path, field_to_json("w0", f, p));
  ScalarField back = read_scalar_field(path);
  REQUIRE(back.grid.n_x == g.n_x);
  CHECK(back.grid.periodic_x);
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
  std::remove(path.c_str());
}

TEST_CASE("vector field files round-trip") {
  PhaseGrid g = make_grid(-1.0, 1.0, -1.0, 1.0, 8, 8);
  VectorField v = evaluate_vector_field(g, [](double x, double k) {
    return std::array<double, 2>{x * k, x - k};
  });
  FieldParams p;
  p.model = "harper";
  p.gamma = 1.0;
  const std::string path = "test_vfield_roundtrip.json";
  write_json_file(path, field_to_json("currents", v, p));
  VectorField back = read_vector_field(path);
  for (std::size_t i = 0; i < v.x_values.size(); ++i) {
    CHECK(back.x_values[i] == v.x_values[i]);
    CHECK(back.k_values[i] == v.k_values[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("field files carry the schema id and parameters") {
  PhaseGrid g = make_grid(-1.0, 1.0, -1.0, 1.0, 8, 8);
  ScalarField f = evaluate_field(g, [](double, double) { return 1.0; });
  FieldParams p;
  p.model = "harper";
  p.beta = 0.5;
  auto j = field_to_json("w0", f, p);
  CHECK(j["schema"] == "wigner-flow/field/v1");
  CHECK(j["field_name"] == "w0");
  CHECK(j["params"]["model"] == "harper");
  CHECK(j["params"]["beta"] == 0.5);
  CHECK_FALSE(j["params"].contains("gamma"));
  CHECK(j["grid"]["periodic"][0] == false);
}

TEST_CASE("field writes are byte-identical across runs") {
  PhaseGrid g = make_grid(-kPi, kPi, -kPi, kPi, 11, 11, true, true);
  FieldParams p;
  p.model = "harper";
  p.gamma = std::sqrt(2.0);
  auto make = [&] {
    ScalarField f =
        evaluate_field(g, [](double x, double k) { return std::exp(std::sin(x) - k * k / 7.0); });
    return field_to_json("g_gamma", f, p);
  };
  write_json_file("det_a.json", make());
  write_json_file("det_b.json", make());
  CHECK(slurp("det_a.json") == slurp("det_b.json"));
  std::remove("det_a.json");
  std::remove("det_b.json");
}

TEST_CASE("thermo csv has the exact header and round-trip floats") {
  ThermoCurve c;
  c.betas = {0.1, 1.0};
  c.z_classical = {39.7, 63.3};
  c.z_corrected = {39.6, 62.8};
  c.purity_cl = {0.025, 0.03};
  c.purity_q = {0.025, 0.031};
  c.energy_cl = {-0.1, -0.89};
  c.energy_q = {-0.11, -0.9};
  c.heat_cl = {0.9, 0.8};
  c.heat_q = {0.91, 0.81};
  write_thermo_csv("test_thermo.csv", c);
  std::ifstream in("test_thermo.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "beta,z_cl,z_q,purity_cl,purity_q,energy_cl,energy_q,heat_cl,heat_q");
  std::string row;
  std::getline(in, row);
  CHECK(row.substr(0, 4) == "0.1,");
  std::remove("test_thermo.csv");
}

TEST_CASE("orbit files list energy, branch and polyline") {
  auto orbit = classify_and_trace(harper_model(0.5), 1.2);
  FieldParams p;
  p.model = "harper";
  p.nu2 = 0.5;
  auto j = orbits_to_json({orbit}, p);
  CHECK(j["schema"] == "wigner-flow/orbits/v1");
  REQUIRE(j["orbits"].size() == 1);
  CHECK(j["orbits"][0]["branch"] == "closed_positive");
  CHECK(j["orbits"][0]["energy"] == 1.2);
  CHECK(j["orbits"][0]["polyline"].size() == orbit.polyline.size());
}

TEST_CASE("reading a file with a foreign schema fails") {
  std::ofstream out("bad_schema.json");
  out << R"({"schema":"other/v9","grid":{},"values":[]})";
  out.close();
  CHECK_THROWS_WITH(read_scalar_field("bad_schema.json"),
                    Catch::Matchers::ContainsSubstring("unsupported schema"));
  std::remove("bad_schema.json");
}
