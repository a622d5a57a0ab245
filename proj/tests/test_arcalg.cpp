#include "doctest.h"
#include <stdexcept>

#include "arckh/arcalg.hpp"
#include "support/arc_props.hpp"

using namespace arckh;
using arcalg::ArcAlgebra;
using arcalg::ArcCombination;
using arcalg::ArcElement;

TEST_CASE("dimensions") {
  CHECK(ArcAlgebra::get(1).dimension() == 2);
  CHECK(ArcAlgebra::get(2).dimension() == 12);
  // brute force over circle counts
  for (int n = 1; n <= 4; ++n) {
    const auto ms = planar::enumerate_matchings(n);
    std::size_t dim = 0;
    for (const auto& a : ms)
      for (const auto& b : ms) dim += std::size_t{1} << planar::circles(a, b).count();
    CHECK(ArcAlgebra::get(n).dimension() == dim);
  }
  CHECK_THROWS(ArcAlgebra::get(0));
}

TEST_CASE("n = 2 products through plait and mix") {
  const auto& alg = ArcAlgebra::get(2);
  const auto p = alg.id(planar::plait(2)), m = alg.id(planar::mixed(2));
  REQUIRE(alg.circle_count(p, m) == 1);
  REQUIRE(alg.circle_count(p, p) == 2);
  // 1 . 1 -> 1(x)x + x(x)1
  const auto one = alg.multiply(ArcElement{m, p, 0}, ArcElement{p, m, 0});
  CHECK(one == ArcCombination::from_terms(p, p, {{0b01, 1}, {0b10, 1}}));
  // x . x -> 0
  CHECK(alg.multiply(ArcElement{m, p, 1}, ArcElement{p, m, 1}).is_zero());
  // mismatched middles give zero
  CHECK(alg.multiply(ArcElement{p, p, 0}, ArcElement{p, m, 0}).is_zero());
}

TEST_CASE("idempotents, degrees and minimal generators") {
  for (int n = 1; n <= 3; ++n) {
    const auto& alg = ArcAlgebra::get(n);
    for (arcalg::MatchingId a = 0; a < alg.size(); ++a) {
      CHECK(alg.multiply(alg.idempotent(a), alg.idempotent(a)) == alg.idempotent(a));
      for (arcalg::MatchingId b = 0; b < alg.size(); ++b) {
        const auto g = alg.min_generator(a, b);
        CHECK(g.labels == 0);
        CHECK(alg.sdeg(g) == n - alg.circle_count(a, b));
        for (const auto& e : alg.basis(a, b)) CHECK(alg.sdeg(e) >= alg.sdeg(g));
      }
    }
  }
  const auto& a2 = ArcAlgebra::get(2);
  CHECK(a2.sdeg(a2.min_generator(a2.id(planar::plait(2)), a2.id(planar::mixed(2)))) == 1);
  const auto& a3 = ArcAlgebra::get(3);
  CHECK(a3.sdeg(a3.min_generator(a3.id(planar::plait(3)), a3.id(planar::mixed(3)))) == 2);
}

TEST_CASE("sdeg is additive under multiplication") {
  const auto& alg = ArcAlgebra::get(3);
  for (const auto& x : props::all_basis(alg))
    for (arcalg::MatchingId c = 0; c < alg.size(); ++c)
      for (const auto& y : alg.basis(x.target, c)) {
        const auto prod = alg.multiply(ArcCombination(y), ArcCombination(x));
        for (auto [l, coeff] : prod.terms()) {
          (void)coeff;
          CHECK(alg.sdeg({x.source, c, l}) == alg.sdeg(x) + alg.sdeg(y));
        }
      }
}

TEST_CASE("center action") {
  const auto& alg = ArcAlgebra::get(2);
  const auto p = alg.id(planar::plait(2));
  const auto v1 = alg.center_action(1, alg.idempotent(p));
  CHECK(v1 == ArcCombination(ArcElement{p, p, 0b01}));
  CHECK(alg.center_action(1, v1).is_zero());
  // points on the same circle act the same way
  for (arcalg::MatchingId a = 0; a < alg.size(); ++a)
    for (arcalg::MatchingId b = 0; b < alg.size(); ++b) {
      const auto& cd = alg.circles(a, b);
      if (cd.circle_of[1] != cd.circle_of[2]) continue;
      for (const auto& e : alg.basis(a, b))
        CHECK(alg.center_action(1, ArcCombination(e)) == alg.center_action(2, ArcCombination(e)));
    }
}

TEST_CASE("trace") {
  const auto& alg = ArcAlgebra::get(2);
  const auto p = alg.id(planar::plait(2)), m = alg.id(planar::mixed(2));
  CHECK(alg.trace(ArcCombination(ArcElement{p, p, 0b11})) == 1);
  CHECK(alg.trace(alg.idempotent(p)) == 0);
  CHECK_THROWS_AS(alg.trace(ArcCombination(ArcElement{p, m, 0})), std::invalid_argument);
}

TEST_CASE("product agrees with stacked surgery in any order") {
  for (int n = 1; n <= 3; ++n) CHECK(props::check_surgery_order(ArcAlgebra::get(n), 7u + n) == 0);
}

TEST_CASE("associativity and unit") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(props::check_associativity(ArcAlgebra::get(n)) == 0);
    CHECK(props::check_unit(ArcAlgebra::get(n)) == 0);
  }
  CHECK(props::check_associativity_random(ArcAlgebra::get(4), 2000, 3) == 0);
}

TEST_CASE("trace symmetry, positivity, centrality") {
  for (int n = 1; n <= 3; ++n) {
    const auto& alg = ArcAlgebra::get(n);
    CHECK(props::check_trace_symmetry(alg) == 0);
    CHECK(props::check_centrality(alg) == 0);
    CHECK(props::check_positivity_random(alg, 2000, 5) == 0);
  }
}

TEST_CASE("codimension-one law, factorization, cyclicity, plait and mix") {
  for (int n = 1; n <= 4; ++n) {
    const auto& alg = ArcAlgebra::get(n);
    CHECK(props::check_codim_one_law(alg) == 0);
    CHECK(props::check_factorization(alg) == 0);
    CHECK(props::check_cyclicity(alg) == 0);
    CHECK(props::check_plait_mix(alg) == 0);
  }
}

TEST_CASE("combinations") {
  ArcCombination a(0, 0);
  a.add(1, 2);
  a.add(1, -2);
  CHECK(a.is_zero());
  a.add(3, 1);
  a.add(0, 4);
  CHECK(a.terms().front().first == 0);
  CHECK(a.coefficient(3) == 1);
  ArcCombination b = a;
  b -= a;
  CHECK(b.is_zero());
  CHECK((a * 3).coefficient(0) == 12);
  CHECK(ArcCombination::from_terms(0, 0, {{3, 1}, {0, 2}, {0, 2}}) == a);
}
