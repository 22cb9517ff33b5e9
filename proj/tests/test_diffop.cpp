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
#include "klein/atiyah.hpp"
#include "klein/bundle.hpp"
#include "klein/diffop.hpp"
#include "klein/fixtures.hpp"
#include "klein/sections.hpp"

using namespace klein;

namespace {

FirstOrderOp d_dz_one_chart(int rank) {
  Cocycle e = trivial_bundle(fixtures::one_chart(), rank);
  return FirstOrderOp{e, e, {ChartOp{LMat(rank, rank), LMat::identity(rank)}}};
}

// Derivation of the trivial line along the vector field 1 on U0.
FirstOrderOp sphere_derivation() {
  Cocycle o = trivial_bundle(fixtures::sphere_twist(), 1);
  return FirstOrderOp{o, o,
                      {ChartOp{LMat(1, 1), LMat::identity(1)},
                       ChartOp{LMat(1, 1), LMat::scalar(1, LaurentPoly::monomial(-1, 2))}}};
}

}  // namespace

TEST_SUITE("diffop") {
  TEST_CASE("d/dz on one chart") {
    FirstOrderOp p = d_dz_one_chart(1);
    CHECK(validate_operator(p).ok);
    SectionFamily s = symbol(p);
    CHECK(s.per_chart.front() == LMat::identity(1));
  }

  TEST_CASE("linear morphisms have zero symbol") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
    EndAlgebra alg = end_algebra(e);
    for (const auto& phi : alg.basis) {
      FirstOrderOp p{e, e, {}};
      for (const auto& m : phi.per_chart) p.per_chart.push_back(ChartOp{m, LMat(2, 2)});
      CHECK(validate_operator(p).ok);
      for (const auto& m : symbol(p).per_chart) CHECK(m.is_zero());
      DerivativeCheck dc = is_derivative_endomorphism(p);
      CHECK(dc.yes);
      for (const auto& y : dc.field) CHECK(y.is_zero());
    }
  }

  TEST_CASE("mismatched operator data is a violation") {
    FirstOrderOp p = sphere_derivation();
    CHECK(validate_operator(p).ok);
    p.per_chart[1].b(0, 0) += LaurentPoly::z();
    CHECK_FALSE(validate_operator(p).ok);
  }

  TEST_CASE("derivation along a vector field") {
    FirstOrderOp p = sphere_derivation();
    DerivativeCheck dc = is_derivative_endomorphism(p);
    CHECK(dc.yes);
    REQUIRE(dc.field.size() == 2);
    CHECK(dc.field[0] == LaurentPoly(1));
    CHECK(glues(canonical_bundles(p.source.atlas_ptr()).tangent,
                SectionFamily{"T", {LMat::scalar(1, dc.field[0]), LMat::scalar(1, dc.field[1])}}));
  }

  TEST_CASE("scalar symbol on rank two") {
    Cocycle e = trivial_bundle(fixtures::one_chart(), 2);
    FirstOrderOp p{e, e, {ChartOp{LMat(2, 2), LMat::scalar(2, LaurentPoly::z())}}};
    DerivativeCheck dc = is_derivative_endomorphism(p);
    CHECK(dc.yes);
    CHECK(dc.field.front() == LaurentPoly::z());
    LMat b = LMat::identity(2);
    b(0, 1) = LaurentPoly(1);
    FirstOrderOp q{e, e, {ChartOp{LMat(2, 2), b}}};
    DerivativeCheck no = is_derivative_endomorphism(q);
    CHECK_FALSE(no.yes);
    CHECK_FALSE(no.witness.empty());
  }

  TEST_CASE("jets of the trivial line on the sphere") {
    AtlasPtr s = fixtures::sphere_twist();
    Cocycle e = fixtures::line(s, 0);
    JetBundle j = jet_cocycle(e);
    CHECK(j.cocycle.rank() == 2);
    CHECK(validate_cocycle(j.cocycle).ok);
    Cocycle k = canonical_bundles(s).cotangent;
    for (Dir d : s->directions()) {
      LMat want(2, 2);
      want(0, 0) = LaurentPoly(1);
      want(1, 1) = k.target(d)(0, 0);
      CHECK(j.cocycle.target(d) == want);
    }
    CHECK(solve_coboundary(e, jet_extension_class(e)).has_value());
  }

  TEST_CASE("jets on one chart are free") {
    JetBundle j = jet_cocycle(trivial_bundle(fixtures::one_chart(), 1));
    CHECK(j.cocycle.rank() == 2);
    CHECK(j.cocycle.directions().empty());
  }

  TEST_CASE("jet class of trivial rank two vanishes") {
    CechCochain u = jet_extension_class(trivial_bundle(fixtures::sphere_twist(), 2));
    for (const auto& [d, m] : u.overlap) CHECK(m.is_zero());
  }

  TEST_CASE("jet cocycles validate and cancel the Atiyah class") {
    AtlasPtr s = fixtures::sphere_twist();
    for (int n = -2; n <= 2; ++n) {
      Cocycle e = fixtures::line(s, n);
      CHECK(validate_cocycle(jet_cocycle(e).cocycle).ok);
      CechCochain u = jet_extension_class(e);
      CechCochain th = atiyah_cocycle(e);
      for (const auto& [d, m] : u.overlap) CHECK(m == -th.overlap.at(d));
    }
    CHECK(validate_cocycle(jet_cocycle(fixtures::unipotent_extension(fixtures::klein_bottle())).cocycle).ok);
  }

  TEST_CASE("operators and jet morphisms correspond") {
    FirstOrderOp p = sphere_derivation();
    SectionFamily t = jet_morphism(p);
    CHECK(glues_morphism(jet_cocycle(p.source).cocycle, p.target, t));
    FirstOrderOp back = operator_from_jet_morphism(p.source, p.target, t);
    REQUIRE(back.per_chart.size() == p.per_chart.size());
    for (std::size_t i = 0; i < p.per_chart.size(); ++i) {
      CHECK(back.per_chart[i].a == p.per_chart[i].a);
      CHECK(back.per_chart[i].b == p.per_chart[i].b);
    }
  }
}
