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
#include "klein/bundle.hpp"
#include "klein/fixtures.hpp"

using namespace klein;

TEST_SUITE("bundle") {
  TEST_CASE("line fixtures validate") {
    AtlasPtr s = fixtures::sphere_twist();
    for (int n = -3; n <= 3; ++n) {
      Cocycle e = fixtures::line(s, n);
      CHECK(validate_cocycle(e).ok);
      if (n != 0) CHECK(e.source({0, 1}).arg == Arg::ZBar);
    }
    CHECK(validate_cocycle(trivial_bundle(s, 2)).ok);
    CHECK(validate_cocycle(fixtures::unipotent_extension(fixtures::klein_bottle())).ok);
  }

  TEST_CASE("perturbed coefficient breaks the inverse law") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = fixtures::line(s, 1);
    HalfMat h = e.source({0, 1});
    h.m(0, 0) += LaurentPoly(1);
    e.set_source({0, 1}, h);
    ValidationReport r = validate_cocycle(e);
    CHECK_FALSE(r.ok);
    CHECK_THROWS_AS(require_valid(e), Error);
  }

  TEST_CASE("wrong variable on a twisted overlap is rejected") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = fixtures::line(s, 1);
    e.set_source({0, 1}, HalfMat{Arg::Z, LMat::scalar(1, LaurentPoly::z(-1))});
    CHECK_FALSE(validate_cocycle(e).ok);
  }

  TEST_CASE("determinant of opposite lines is trivial") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle d = det(direct_sum(fixtures::line(s, 1), fixtures::line(s, -1)));
    CHECK(d.rank() == 1);
    CHECK(d.target({0, 1}) == LMat::identity(1));
    CHECK(d.target({1, 0}) == LMat::identity(1));
  }

  TEST_CASE("endomorphisms of a line are trivial") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle h = hom(fixtures::line(s, 1), fixtures::line(s, 1));
    for (Dir d : h.directions()) CHECK(h.target(d) == LMat::identity(1));
  }

  TEST_CASE("degree oracles") {
    AtlasPtr s = fixtures::sphere_twist();
    for (int n = -3; n <= 3; ++n) CHECK(degree(fixtures::line(s, n)).total == n);
    CHECK(degree(trivial_bundle(s, 2)).total == 0);
    CanonicalBundles cb = canonical_bundles(s);
    CHECK(degree(cb.tangent).total == 2);
    CHECK(degree(cb.cotangent).total == -2);
    CHECK(degree(cb.orientation).total == 0);
    AtlasPtr k = fixtures::klein_bottle();
    CHECK(degree(canonical_bundles(k).tangent).total == 0);
    CHECK(degree(fixtures::unipotent_extension(k)).total == 0);
  }

  TEST_CASE("degree needs a compact surface") {
    CHECK_THROWS_AS(degree(trivial_bundle(fixtures::one_chart(), 1)), Error);
  }

  TEST_CASE("degree is additive over constructions") {
    AtlasPtr s = fixtures::sphere_twist();
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        Cocycle ea = fixtures::line(s, a), eb = fixtures::line(s, b);
        Cocycle sum = direct_sum(ea, eb);
        CHECK(validate_cocycle(sum).ok);
        CHECK(degree(sum).total == a + b);
        CHECK(degree(tensor(ea, eb)).total == a + b);
        CHECK(degree(hom(ea, eb)).total == b - a);
        CHECK(degree(dual(ea)).total == -a);
        CHECK(degree(det(sum)).total == a + b);
        CHECK(degree(tensor(sum, sum)).total == 4 * (a + b));
      }
  }

  TEST_CASE("frame changes preserve validity and degree") {
    AtlasPtr s = fixtures::sphere_twist();
    std::mt19937_64 rng(4);
    Cocycle e = direct_sum(fixtures::line(s, 2), fixtures::line(s, -1));
    for (int t = 0; t < 20; ++t) {
      Cocycle f = frame_change(e, random_frames(*s, 2, rng));
      CHECK(validate_cocycle(f).ok);
      CHECK(degree(f).total == 1);
    }
    AtlasPtr k = fixtures::klein_bottle();
    Cocycle ext = fixtures::unipotent_extension(k);
    for (int t = 0; t < 10; ++t) CHECK(validate_cocycle(frame_change(ext, random_frames(*k, 2, rng))).ok);
  }

  TEST_CASE("frames must be invertible on discs") {
    AtlasPtr s = fixtures::sphere_twist();
    std::vector<LMat> frames = {LMat::scalar(1, LaurentPoly::z()), LMat::identity(1)};
    CHECK_THROWS_AS(frame_change(fixtures::line(s, 0), frames), Error);
  }

  TEST_CASE("mixed atlases are rejected") {
    Cocycle a = fixtures::line(fixtures::sphere_twist(), 1);
    Cocycle b = trivial_bundle(fixtures::klein_bottle(), 1);
    CHECK_THROWS_AS(direct_sum(a, b), Error);
  }
}
