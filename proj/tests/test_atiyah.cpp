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

#include <random>

#include "doctest.h"
#include "klein/atiyah.hpp"
#include "klein/bundle.hpp"
#include "klein/fixtures.hpp"
#include "klein/sections.hpp"

using namespace klein;

TEST_SUITE("atiyah") {
  TEST_CASE("atiyah cocycle of lines") {
    AtlasPtr s = fixtures::sphere_twist();
    for (int n = -3; n <= 3; ++n) {
      Cocycle e = fixtures::line(s, n);
      CechCochain th = atiyah_cocycle(e);
      CHECK(satisfies_cocycle_law(e, th));
      CHECK(th.overlap.at({0, 1}) == LMat::scalar(1, LaurentPoly::monomial(n, -1)));
    }
  }

  TEST_CASE("atiyah cocycle of trivial and sum bundles") {
    AtlasPtr s = fixtures::sphere_twist();
    for (const auto& [d, m] : atiyah_cocycle(trivial_bundle(s, 2)).overlap) CHECK(m.is_zero());
    Cocycle a = fixtures::line(s, 2), b = fixtures::line(s, -1);
    CechCochain sum = atiyah_cocycle(direct_sum(a, b));
    CechCochain ta = atiyah_cocycle(a), tb = atiyah_cocycle(b);
    for (const auto& [d, m] : sum.overlap) CHECK(m == direct_sum(ta.overlap.at(d), tb.overlap.at(d)));
  }

  TEST_CASE("coboundaries satisfy the cocycle law and pair to zero") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
    std::vector<LMat> tau(2, LMat(2, 2));
    tau[0](0, 1) = LaurentPoly::z(2);
    tau[0](1, 1) = LaurentPoly(3);
    tau[1](1, 0) = LaurentPoly::monomial(GaussianRational(Rational(0), Rational(1)), 1);
    CechCochain c = coboundary(e, tau);
    CHECK(satisfies_cocycle_law(e, c));
    for (const auto& phi : end_algebra(e).basis) CHECK(trace_pairing(e, c, phi).value_2pii_units.is_zero());
    auto back = solve_coboundary(e, c);
    REQUIRE(back.has_value());
    CHECK(coboundary(e, *back).overlap == c.overlap);
  }

  TEST_CASE("connections on lines") {
    AtlasPtr s = fixtures::sphere_twist();
    ConnectionResult zero = solve_connection(fixtures::line(s, 0));
    REQUIRE(zero.verdict == Verdict::Exists);
    for (const auto& w : zero.forms) CHECK(w.is_zero());
    ConnectionResult two = solve_connection(fixtures::line(s, 2));
    REQUIRE(two.verdict == Verdict::NotExists);
    REQUIRE(two.certificate.has_value());
    CHECK(two.certificate->value_2pii_units == GaussianRational(2));
  }

  TEST_CASE("opposite lines have no connection") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
    CHECK(degree(e).total == 0);
    ConnectionResult r = solve_connection(e);
    REQUIRE(r.verdict == Verdict::NotExists);
    REQUIRE(r.certificate_phi.has_value());
    CHECK(glues_endomorphism(e, *r.certificate_phi));
    CHECK(compose(*r.certificate_phi, *r.certificate_phi) == *r.certificate_phi);
    CHECK_FALSE(r.certificate->value_2pii_units.is_zero());
  }

  TEST_CASE("extension admits a connection") {
    Cocycle ext = fixtures::unipotent_extension(fixtures::klein_bottle());
    ConnectionResult r = solve_connection(ext);
    REQUIRE(r.verdict == Verdict::Exists);
    CHECK(satisfies_transformation_law(ext, r.forms));
  }

  TEST_CASE("broken connection forms violate the law") {
    Cocycle ext = fixtures::unipotent_extension(fixtures::klein_bottle());
    ConnectionResult r = solve_connection(ext);
    REQUIRE(r.verdict == Verdict::Exists);
    r.forms[1](0, 0) += LaurentPoly::z();
    CHECK_FALSE(satisfies_transformation_law(ext, r.forms));
  }

  TEST_CASE("pairing with the identity is the degree") {
    AtlasPtr s = fixtures::sphere_twist();
    std::mt19937_64 rng(12);
    for (int n = -3; n <= 3; ++n) {
      Cocycle e = fixtures::line(s, n);
      CHECK(trace_pairing(e, atiyah_cocycle(e), identity_section(e)).value_2pii_units == GaussianRational(n));
      Cocycle f = frame_change(e, random_frames(*s, 1, rng));
      CHECK(trace_pairing(f, atiyah_cocycle(f), identity_section(f)).value_2pii_units == GaussianRational(n));
    }
    Cocycle t = canonical_bundles(s).tangent;
    CHECK(trace_pairing(t, atiyah_cocycle(t), identity_section(t)).value_2pii_units == GaussianRational(2));
  }

  TEST_CASE("nilpotent endomorphism pairs to zero") {
    Cocycle ext = fixtures::unipotent_extension(fixtures::klein_bottle());
    SectionFamily n{"EXT", std::vector<LMat>(3, LMat(2, 2))};
    for (auto& m : n.per_chart) m(0, 1) = LaurentPoly(1);
    REQUIRE(glues_endomorphism(ext, n));
    CHECK(trace_pairing(ext, atiyah_cocycle(ext), n).value_2pii_units.is_zero());
  }

  TEST_CASE("criterion agrees with the solver") {
    AtlasPtr s = fixtures::sphere_twist();
    CriterionReport oo = connection_criterion(trivial_bundle(s, 2));
    CHECK(oo.predicted_exists);
    CHECK(oo.solver.verdict == Verdict::Exists);
    CriterionReport l3 = connection_criterion(fixtures::line(s, 3));
    CHECK_FALSE(l3.predicted_exists);
    CHECK(l3.solver.certificate->value_2pii_units == GaussianRational(3));
    CriterionReport sum = connection_criterion(direct_sum(fixtures::line(s, 1), fixtures::line(s, -1)));
    CHECK_FALSE(sum.predicted_exists);
    CHECK(sum.agree);
    CHECK(sum.factor_degrees.size() == 2);
  }

  TEST_CASE("verdicts are frame invariant") {
    AtlasPtr s = fixtures::sphere_twist();
    std::mt19937_64 rng(21);
    Cocycle oo = trivial_bundle(s, 2);
    Cocycle sum = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
    for (int t = 0; t < 3; ++t) {
      CHECK(solve_connection(frame_change(oo, random_frames(*s, 2, rng))).verdict == Verdict::Exists);
      CHECK(solve_connection(frame_change(sum, random_frames(*s, 2, rng))).verdict == Verdict::NotExists);
    }
  }
}
