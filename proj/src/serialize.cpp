#include "gaugelab/serialize.hpp"

namespace gaugelab::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("JSON: missing key '") + key + "'");
  return j.at(key);
}

void check_schema(const json& j, const char* type) {
  if (j.contains("type") && j.at("type") != type)
    throw InvalidInput(std::string("JSON: expected document of type ") + type);
}

}  // namespace

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("JSON: matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidInput("JSON: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& z = row.at(static_cast<std::size_t>(k));
      if (!z.is_array() || z.size() != 2) throw InvalidInput("JSON: complex entries are [re, im] pairs");
      m(i, k) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return m;
}

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("JSON: vector must be an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& z = j.at(i);
    if (!z.is_array() || z.size() != 2) throw InvalidInput("JSON: complex entries are [re, im] pairs");
    v(static_cast<Eigen::Index>(i)) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
  }
  return v;
}

json to_json(const LatticeSpec& spec) {
  return {{"dims", spec.dims()}, {"weights", spec.weights()}, {"colors", spec.colors()}};
}

LatticeSpec lattice_from_json(const json& j) {
  auto dims = require(j, "dims").get<std::vector<int>>();
  const int colors = require(j, "colors").get<int>();
  if (j.contains("weights")) return {std::move(dims), colors, j.at("weights").get<std::vector<double>>()};
  return {std::move(dims), colors};
}

json to_json(const GaugeField& g) {
  json values = json::array();
  for (const auto& u : g.values()) values.push_back(to_json(u));
  return {{"schema", kSchemaVersion}, {"type", "gauge_field"}, {"spec", to_json(g.spec())},
          {"kind", g.kind().name()},  {"values", std::move(values)}};
}

GaugeField gauge_field_from_json(const json& j) {
  check_schema(j, "gauge_field");
  std::vector<CMatrix> values;
  for (const auto& m : require(j, "values")) values.push_back(matrix_from_json(m));
  return {lattice_from_json(require(j, "spec")), GroupKind::parse(require(j, "kind").get<std::string>()),
          std::move(values)};
}

json to_json(const WeakFunctional& omega) {
  json blocks = json::array();
  for (const auto& b : omega.blocks()) blocks.push_back(to_json(b));
  return {{"schema", kSchemaVersion}, {"type", "weak_functional"}, {"spec", to_json(omega.spec())},
          {"blocks", std::move(blocks)}, {"norm", omega.norm()}};
}

WeakFunctional weak_functional_from_json(const json& j) {
  check_schema(j, "weak_functional");
  std::vector<CMatrix> blocks;
  for (const auto& m : require(j, "blocks")) blocks.push_back(matrix_from_json(m));
  return {lattice_from_json(require(j, "spec")), std::move(blocks)};
}

json fock_manifest(const FockSpace& space) {
  return {{"modes", space.modes()},
          {"dimension", space.dim()},
          {"mode_order", "site-major, color-minor: mode = site * colors + color"},
          {"basis_index", "sum over occupied modes k of 2^k"},
          {"basis_vector", "|S> = a*(k1) ... a*(kp) |0> with k1 < ... < kp"},
          {"jordan_wigner", "a(k) carries the sign (-1)^(number of occupied modes below k)"},
          {"coordinates", "orthonormal mode basis, c(x, c) = sqrt(w_x) psi(x)_c"}};
}

json to_json(const FockOperator& a) {
  return {{"schema", kSchemaVersion}, {"type", "fock_operator"}, {"spec", to_json(a.space().spec())},
          {"manifest", fock_manifest(a.space())}, {"entries", to_json(a.matrix())}};
}

FockOperator fock_operator_from_json(const json& j) {
  check_schema(j, "fock_operator");
  return {FockSpace(lattice_from_json(require(j, "spec"))), matrix_from_json(require(j, "entries"))};
}

json to_json(const State& s) {
  return {{"schema", kSchemaVersion}, {"type", "state"}, {"spec", to_json(s.space().spec())},
          {"manifest", fock_manifest(s.space())}, {"density", to_json(s.density())}};
}

State state_from_json(const json& j) {
  check_schema(j, "state");
  return {FockSpace(lattice_from_json(require(j, "spec"))), matrix_from_json(require(j, "density"))};
}

json to_json(const GnsTriple& gns) {
  json rep = json::array();
  for (const auto& p : gns.rep) rep.push_back(to_json(p));
  std::vector<double> spectrum(gns.gram_spectrum.data(), gns.gram_spectrum.data() + gns.gram_spectrum.size());
  return {{"schema", kSchemaVersion}, {"type", "gns_triple"}, {"dim", gns.dim},
          {"cyclic", to_json(gns.cyclic)},  {"rep", std::move(rep)},  {"gram_spectrum", std::move(spectrum)},
          {"gram_rank_tol", gns.gram_rank_tol}};
}

json to_json(const MeanConfig& cfg) {
  return {{"sampler", sampler_name(cfg.sampler)},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"kind", cfg.kind.name()},
          {"spec", to_json(cfg.spec)}};
}

json convergence_record(const MeanConfig& cfg, const std::vector<ConvergencePoint>& points) {
  json table = json::array();
  for (const auto& p : points) table.push_back({{"N", p.samples}, {"defect", p.defect}});
  return {{"sampler", to_json(cfg)}, {"seed", cfg.seed}, {"points", std::move(table)}};
}

}  // namespace gaugelab::io
