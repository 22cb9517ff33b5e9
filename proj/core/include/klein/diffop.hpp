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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klein/atiyah.hpp"
#include "klein/bundle.hpp"
#include "klein/sections.hpp"

namespace klein {

// Local normal form P(s) = a s + b ds/dz on each chart.
struct ChartOp {
  LMat a;
  LMat b;
};

struct FirstOrderOp {
  Cocycle source;
  Cocycle target;
  std::vector<ChartOp> per_chart;
};

ValidationReport validate_operator(const FirstOrderOp& p);

// b_i as a section of T (x) Hom(E, F).
SectionFamily symbol(const FirstOrderOp& p);
// Gluing check for sections of T (x) Hom(E, F).
bool glues_symbol(const Cocycle& e, const Cocycle& f, const SectionFamily& s);

struct DerivativeCheck {
  bool yes = false;
  // Coefficient of d/dz on each chart.
  std::vector<LaurentPoly> field;
  std::string witness;
};

DerivativeCheck is_derivative_endomorphism(const FirstOrderOp& p);

struct JetBundle {
  Cocycle cocycle;
  Cocycle base;
};

// Blocks [[g, 0], [g', g J]] acting on (s, ds/dz).
JetBundle jet_cocycle(const Cocycle& e);
CechCochain jet_extension_class(const Cocycle& e);

// Hom(J1 E, F) section [a | b] realizing P through the jet map.
SectionFamily jet_morphism(const FirstOrderOp& p);
FirstOrderOp operator_from_jet_morphism(const Cocycle& e, const Cocycle& f, const SectionFamily& t);
// phi_j g_E = g_F tr(phi_i) on every overlap direction.
bool glues_morphism(const Cocycle& e, const Cocycle& f, const SectionFamily& phi);

}  // namespace klein
