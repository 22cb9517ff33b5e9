/*
   Copyright 2026 The klein authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "doctest.h"
#include "klein/bundle.hpp"
#include "klein/fixtures.hpp"
#include "klein/surface.hpp"

using namespace klein;

TEST_SUITE("surface") {
  TEST_CASE("fixture atlases validate") {
    CHECK(validate_atlas(*fixtures::sphere_twist()).ok);
    CHECK(validate_atlas(*fixtures::klein_bottle()).ok);
    CHECK(validate_atlas(*fixtures::one_chart()).ok);
  }

  TEST_CASE("flag and map disagreement is a violation") {
    Atlas a = *fixtures::sphere_twist();
    a.overlaps[1].map = MonomialMap{1, -1, false};
    ValidationReport r = validate_atlas(a);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.violations.empty());
  }

  TEST_CASE("inverse transitions must compose to the identity") {
    Atlas a = *fixtures::klein_bottle();
    a.overlaps[5].map = MonomialMap{3, 1, true};
    CHECK_FALSE(validate_atlas(a).ok);
  }

  TEST_CASE("designated directions carry the weights") {
    AtlasPtr s = fixtures::sphere_twist();
    REQUIRE(s->designated().size() == 1);
    CHECK(s->designated().front() == Dir{0, 1});
    CHECK(fixtures::klein_bottle()->designated().size() == 3);
  }

  TEST_CASE("tangent entry on the twisted overlap") {
    AtlasPtr s = fixtures::sphere_twist();
    CanonicalBundles cb = canonical_bundles(s);
    const HalfMat& t = cb.tangent.source({0, 1});
    CHECK(t.arg == Arg::ZBar);
    CHECK(t.m(0, 0) == LaurentPoly::monomial(-1, -2));
    CHECK(cb.orientation.target({0, 1})(0, 0) == LaurentPoly(-1));
    CHECK(validate_cocycle(cb.tangent).ok);
    CHECK(validate_cocycle(cb.cotangent).ok);
    CHECK(validate_cocycle(cb.orientation).ok);
  }

  TEST_CASE("orientation is trivial on holomorphic overlaps") {
    CanonicalBundles cb = canonical_bundles(fixtures::klein_bottle());
    CHECK(cb.orientation.target({0, 1})(0, 0) == LaurentPoly(1));
    CHECK(cb.orientation.target({2, 0})(0, 0) == LaurentPoly(-1));
  }

  TEST_CASE("double cover of the twisted sphere") {
    AtlasPtr s = fixtures::sphere_twist();
    DoubleCover dc = double_cover(*s);
    CHECK(dc.atlas.charts.size() == 4);
    CHECK(validate_atlas(dc.atlas).ok);
    for (const auto& t : dc.atlas.overlaps) CHECK(t.flag == Flag::Holo);
    for (std::size_t c = 0; c < dc.involution.size(); ++c) {
      int other = dc.involution[c];
      CHECK(dc.involution[static_cast<std::size_t>(other)] == static_cast<int>(c));
      CHECK(dc.sheet_map[c].first == dc.sheet_map[static_cast<std::size_t>(other)].first);
      CHECK(dc.sheet_map[c].second == -dc.sheet_map[static_cast<std::size_t>(other)].second);
    }
    CHECK(check_quotient(dc, *s).ok);
  }

  TEST_CASE("orientable atlas covers as two disjoint copies") {
    auto a = std::make_shared<Atlas>();
    a->name = "ANNULI";
    a->charts = {Chart{"A", DomainKind::Annulus, Rational(1, 2), Rational(2)},
                 Chart{"B", DomainKind::Annulus, Rational(1, 2), Rational(2)}};
    a->overlaps = {Transition{0, 1, MonomialMap{1, -1, false}, Flag::Holo, 1, true},
                   Transition{1, 0, MonomialMap{1, -1, false}, Flag::Holo, -1, false}};
    DoubleCover dc = double_cover(*a);
    for (const auto& t : dc.atlas.overlaps)
      CHECK(dc.sheet_map[static_cast<std::size_t>(t.from)].second == dc.sheet_map[static_cast<std::size_t>(t.to)].second);
    CHECK(check_quotient(dc, *a).ok);
  }

  TEST_CASE("lifted functions are conjugated by the involution") {
    DoubleCover dc = double_cover(*fixtures::sphere_twist());
    GaussianRational c(Rational(2), Rational(-3));
    std::vector<LaurentPoly> f = {LaurentPoly::monomial(c, 1) + LaurentPoly(1), LaurentPoly::monomial(c.conj(), 1)};
    std::vector<LaurentPoly> lift = lift_function(dc, f);
    for (std::size_t k = 0; k < lift.size(); ++k)
      CHECK(lift[static_cast<std::size_t>(dc.involution[k])] == lift[k].conj_coeffs());
  }

  TEST_CASE("invalid atlas has no double cover") {
    Atlas a = *fixtures::sphere_twist();
    a.overlaps[1].map = MonomialMap{1, -1, false};
    CHECK_THROWS_AS(double_cover(a), Error);
  }
}
