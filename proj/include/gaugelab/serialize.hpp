#pragma once

#include <nlohmann/json.hpp>

#include "gaugelab/gns.hpp"
#include "gaugelab/means.hpp"
#include "gaugelab/weak.hpp"

// JSON documents for the library's value types. Complex matrices are written
// row-major as nested rows of [re, im] pairs; doubles use the shortest
// representation that round-trips exactly.

namespace gaugelab::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);
json to_json(const CVector& v);
CVector vector_from_json(const json& j);

json to_json(const LatticeSpec& spec);
LatticeSpec lattice_from_json(const json& j);

json to_json(const GaugeField& g);
GaugeField gauge_field_from_json(const json& j);

json to_json(const WeakFunctional& omega);
WeakFunctional weak_functional_from_json(const json& j);

/// Includes a "manifest" block describing the occupation-basis convention.
json to_json(const FockOperator& a);
FockOperator fock_operator_from_json(const json& j);

json to_json(const State& s);
State state_from_json(const json& j);

json to_json(const GnsTriple& gns);

json to_json(const MeanConfig& cfg);
json convergence_record(const MeanConfig& cfg, const std::vector<ConvergencePoint>& points);

json fock_manifest(const FockSpace& space);

}  // namespace gaugelab::io
