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

#include <algorithm>

#include "doctest.h"
#include "klein/bundle.hpp"
#include "klein/fixtures.hpp"
#include "klein/sections.hpp"

using namespace klein;

namespace {

bool is_idempotent(const SectionFamily& p) { return compose(p, p) == p; }

}  // namespace

TEST_SUITE("sections") {
  TEST_CASE("global sections of lines on the sphere") {
    // Independent count: polynomials of degree at most n, two real dimensions each.
    AtlasPtr s = fixtures::sphere_twist();
    for (int n = -3; n <= 3; ++n) {
      Cocycle e = fixtures::line(s, n);
      auto basis = global_sections(e);
      CHECK(basis.size() == static_cast<std::size_t>(n < 0 ? 0 : 2 * (n + 1)));
      for (const auto& b : basis) CHECK(glues(e, b));
    }
  }

  TEST_CASE("trivial line on the Klein bottle has real constants only") {
    Cocycle o = trivial_bundle(fixtures::klein_bottle(), 1);
    auto basis = global_sections(o);
    REQUIRE(basis.size() == 1);
    for (const auto& m : basis.front().per_chart) CHECK(m == basis.front().per_chart.front());
    CHECK(basis.front().per_chart.front()(0, 0).is_constant());
  }

  TEST_CASE("sections grow with the bound until saturation") {
    Cocycle e = fixtures::line(fixtures::sphere_twist(), 2);
    int b = auto_bound(e);
    CHECK(global_sections(e, b).size() == global_sections(e, b + 3).size());
  }

  TEST_CASE("broken family does not glue") {
    Cocycle e = fixtures::line(fixtures::sphere_twist(), 1);
    SectionFamily s = global_sections(e).front();
    s.per_chart[1](0, 0) += LaurentPoly(1);
    CHECK_FALSE(glues(e, s));
  }

  TEST_CASE("endomorphism algebra dimensions") {
    AtlasPtr s = fixtures::sphere_twist();
    CHECK(end_algebra(fixtures::line(s, 3)).dim_real() == 2);
    CHECK(end_algebra(direct_sum(fixtures::line(s, 1), fixtures::line(s, -1))).dim_real() == 10);
    CHECK(end_algebra(trivial_bundle(s, 2)).dim_real() == 8);
    CHECK(end_algebra(fixtures::unipotent_extension(fixtures::klein_bottle())).dim_real() == 2);
  }

  TEST_CASE("endomorphism algebra is closed and unital") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
    EndAlgebra alg = end_algebra(e);
    CHECK(alg.basis.front() == identity_section(e));
    for (std::size_t a = 0; a < alg.basis.size(); ++a) {
      CHECK(glues_endomorphism(e, alg.basis[a]));
      for (std::size_t b = 0; b < alg.basis.size(); ++b) {
        SectionFamily ab = compose(alg.basis[a], alg.basis[b]);
        CHECK(glues_endomorphism(e, ab));
        CHECK(alg.element(alg.structure_constants[a][b]) == ab);
      }
    }
  }

  TEST_CASE("sum of opposite lines splits") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
    RemakResult r = remak_decompose(e);
    REQUIRE(r.split);
    REQUIRE(r.factors.size() == 2);
    std::vector<long> degs = {degree(r.factors[0]).total, degree(r.factors[1]).total};
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<long>{-1, 1});
    for (const auto& p : r.idempotents) {
      CHECK(glues_endomorphism(e, p));
      CHECK(is_idempotent(p));
    }
    CHECK(validate_cocycle(frame_change(e, r.frames)).ok);
    CHECK(frame_change(e, r.frames).target({0, 1}) == direct_sum_all(r.factors).target({0, 1}));
  }

  TEST_CASE("trivial rank two splits into trivial lines") {
    RemakResult r = remak_decompose(trivial_bundle(fixtures::sphere_twist(), 2));
    REQUIRE(r.factors.size() == 2);
    for (const auto& f : r.factors) CHECK(degree(f).total == 0);
  }

  TEST_CASE("indecomposable bundles do not split") {
    RemakResult line = remak_decompose(fixtures::line(fixtures::sphere_twist(), 3));
    CHECK_FALSE(line.split);
    CHECK(line.factors.size() == 1);
    RemakResult ext = remak_decompose(fixtures::unipotent_extension(fixtures::klein_bottle()));
    CHECK_FALSE(ext.split);
  }

  TEST_CASE("remak is reproducible for a seed") {
    Cocycle e = trivial_bundle(fixtures::sphere_twist(), 2);
    RemakResult a = remak_decompose(e, 16, 9);
    RemakResult b = remak_decompose(e, 16, 9);
    CHECK(a.frames == b.frames);
    CHECK(a.seed == 9);
  }

  TEST_CASE("extension endomorphisms are real scalar plus nilpotent") {
    LambdaNilpotentReport r = check_lambda_nilpotent(fixtures::unipotent_extension(fixtures::klein_bottle()));
    CHECK(r.ok);
    for (const auto& e : r.entries) CHECK(e.lambda.im() == 0);
    CHECK(check_lambda_nilpotent(trivial_bundle(fixtures::klein_bottle(), 1)).ok);
  }

  TEST_CASE("sphere lines carry a complex scalar endomorphism") {
    LambdaNilpotentReport r = check_lambda_nilpotent(fixtures::line(fixtures::sphere_twist(), 1));
    CHECK_FALSE(r.ok);
  }

  TEST_CASE("decomposable bundle is reported") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
    try {
      check_lambda_nilpotent(e);
      FAIL("expected a decomposable error");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::Decomposable);
    }
  }

  TEST_CASE("characteristic polynomial of a Jordan block") {
    LMat m = LMat::scalar(2, LaurentPoly::z());
    m(0, 1) = LaurentPoly(1);
    std::vector<LaurentPoly> p = char_poly(m);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == LaurentPoly::z(2));
    CHECK(p[1] == LaurentPoly::monomial(-2, 1));
    CHECK(p[2] == LaurentPoly(1));
  }
}
