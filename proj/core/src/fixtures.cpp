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

#include "klein/fixtures.hpp"

#include <memory>

namespace klein::fixtures {

namespace {

Transition link(int from, int to, const GaussianRational& c, int e, bool bar, int weight, bool designated) {
  return Transition{from, to, MonomialMap{c, e, bar}, bar ? Flag::AntiHolo : Flag::Holo, weight, designated};
}

}  // namespace

AtlasPtr sphere_twist() {
  auto a = std::make_shared<Atlas>();
  a->name = "SPHERE_TWIST";
  a->charts = {Chart{"U0", DomainKind::Disc, Rational(0), Rational(2)},
               Chart{"U1", DomainKind::Disc, Rational(0), Rational(2)}};
  a->overlaps = {link(0, 1, 1, -1, true, 1, true), link(1, 0, 1, -1, true, -1, false)};
  a->compact = true;
  return a;
}

AtlasPtr klein_bottle() {
  auto a = std::make_shared<Atlas>();
  a->name = "KLEIN_BOTTLE";
  for (const char* id : {"V0", "V1", "V2"})
    a->charts.push_back(Chart{id, DomainKind::Annulus, Rational(1, 4), Rational(4)});
  a->overlaps = {link(0, 1, 1, 1, false, 1, true),
                 link(1, 0, 1, 1, false, -1, false),
                 link(1, 2, 1, 1, false, 1, true),
                 link(2, 1, 1, 1, false, -1, false),
                 link(2, 0, GaussianRational(Rational(1, 2)), 1, true, 1, true),
                 link(0, 2, 2, 1, true, -1, false)};
  a->compact = true;
  return a;
}

AtlasPtr one_chart() {
  auto a = std::make_shared<Atlas>();
  a->name = "ONE_CHART";
  a->charts = {Chart{"U", DomainKind::Disc, Rational(0), Rational(1)}};
  return a;
}

Cocycle line(const AtlasPtr& sphere, int n) {
  Cocycle e(sphere, 1, "LINE(" + std::to_string(n) + ")");
  e.set_target({0, 1}, LMat::scalar(1, LaurentPoly::z(n)));
  e.set_target({1, 0}, LMat::scalar(1, LaurentPoly::z(n)));
  return e;
}

Cocycle unipotent_extension(const AtlasPtr& klein) {
  Cocycle e(klein, 2, "EXT");
  LMat n(2, 2);
  n(0, 1) = LaurentPoly(1);
  LMat id = LMat::identity(2);
  e.set_target({0, 1}, id);
  e.set_target({1, 0}, id);
  e.set_target({1, 2}, id);
  e.set_target({2, 1}, id);
  e.set_target({2, 0}, id + n);
  e.set_target({0, 2}, id - n);
  return e;
}

}  // namespace klein::fixtures
