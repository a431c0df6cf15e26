#include <doctest.h>

#include "gaugelab/gns.hpp"
#include "gaugelab/serialize.hpp"
#include "support.hpp"

using namespace gaugelab;
using nlohmann::json;

namespace {

// Round trip through text, the way reports and fixtures are stored.
json through_text(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("complex matrices and vectors round trip exactly") {
  Rng rng = substream(71, 0);
  for (int t = 0; t < 10; ++t) {
    const CMatrix m = testing_support::gaussian_matrix(1 + t % 4, 1 + t % 3, rng) * std::pow(10.0, t - 5);
    CHECK((io::matrix_from_json(through_text(io::to_json(m))).array() == m.array()).all());
    const CVector v = testing_support::gaussian_vector(1 + t, rng);
    CHECK((io::vector_from_json(through_text(io::to_json(v))).array() == v.array()).all());
  }
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")), InvalidInput);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[[1,0,3]]]")), InvalidInput);
  CHECK_THROWS_AS(io::vector_from_json(json::parse("{}")), InvalidInput);
}

TEST_CASE("lattice, gauge field and weak functional round trip") {
  const LatticeSpec s({2, 2}, 2, {0.1, 0.2, 0.3, 0.4});
  CHECK(io::lattice_from_json(through_text(io::to_json(s))) == s);

  Rng rng = substream(72, 0);
  for (const auto kind : {GroupKind::unitary(), GroupKind::special_unitary(), GroupKind::torus(), GroupKind::cyclic(3)}) {
    const auto g = sample_gauge_field(s, kind, rng);
    const auto back = io::gauge_field_from_json(through_text(io::to_json(g)));
    CHECK(back.kind() == kind);
    CHECK(back.spec() == s);
    CHECK(sup_norm_dist(back, g) == 0.0);
  }

  std::vector<CMatrix> blocks;
  for (int x = 0; x < 4; ++x) blocks.push_back(testing_support::gaussian_matrix(2, 2, rng));
  const WeakFunctional omega(s, blocks);
  const auto back = io::weak_functional_from_json(through_text(io::to_json(omega)));
  CHECK(back.norm() == omega.norm());
  for (int x = 0; x < 4; ++x) CHECK((back.blocks()[static_cast<std::size_t>(x)].array() == blocks[static_cast<std::size_t>(x)].array()).all());
}

TEST_CASE("Fock operators and states round trip with a basis manifest") {
  FockSpace space(LatticeSpec({2}, 1));
  Rng rng = substream(73, 0);
  const FockOperator a(space, testing_support::gaussian_matrix(4, 4, rng));
  const json ja = io::to_json(a);
  CHECK(ja.at("manifest").at("dimension") == 4);
  CHECK((io::fock_operator_from_json(through_text(ja)).matrix().array() == a.matrix().array()).all());

  const State omega = State::pure(space, testing_support::gaussian_vector(4, rng));
  CHECK((io::state_from_json(through_text(io::to_json(omega))).density().array() == omega.density().array()).all());
  CHECK_THROWS_AS(io::state_from_json(ja), InvalidInput);
}

TEST_CASE("corrupted documents are rejected") {
  FockSpace space(LatticeSpec({1}, 1));
  json j = io::to_json(State::maximally_mixed(space));
  j["density"][0][0] = json::array({2.0, 0.0});
  CHECK_THROWS_AS(io::state_from_json(j), NumericalError);
  json g = io::to_json(GaugeField::identity(LatticeSpec({1}, 1), GroupKind::unitary()));
  g.erase("kind");
  CHECK_THROWS_AS(io::gauge_field_from_json(g), InvalidInput);
}

TEST_CASE("GNS triples export their audit data") {
  FockSpace space(LatticeSpec({1}, 1));
  const auto gns = gns_construct(State::maximally_mixed(space), AlgebraBasis::full_matrix_algebra(space));
  const json j = through_text(io::to_json(gns));
  CHECK(j.at("dim") == 4);
  CHECK(j.at("rep").size() == 4);
  CHECK(j.at("gram_spectrum").size() == 4);
  CHECK(io::vector_from_json(j.at("cyclic")).size() == 4);
}
