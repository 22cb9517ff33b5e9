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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klein/bundle.hpp"
#include "klein/sections.hpp"

namespace klein {

// Pairing sign: pairing(at(LINE(1)), id) = 1.
inline constexpr int kPairingSign = 1;

// Cochains valued in End(E)-valued holomorphic 1-forms. Entries hold the
// coefficient of dz in the frame and coordinate of the target chart.
struct CechCochain {
  int degree = 1;
  std::string valued_in;
  std::vector<LMat> chart;
  std::map<Dir, LMat> overlap;
};

// Adjoint transport of an End-valued 1-form from chart i to chart j.
LMat adjoint(const Cocycle& e, Dir d, const LMat& form_on_source);

CechCochain atiyah_cocycle(const Cocycle& e);
// Twisted antisymmetry and triple law.
bool satisfies_cocycle_law(const Cocycle& e, const CechCochain& c);
CechCochain coboundary(const Cocycle& e, const std::vector<LMat>& tau);
CechCochain add(const CechCochain& a, const CechCochain& b);

// Regular chart forms tau with coboundary(tau) = c, searched within the
// exponent bound. A bound of 0 selects the automatic bound.
int connection_bound(const Cocycle& e, const CechCochain& c);
std::optional<std::vector<LMat>> solve_coboundary(const Cocycle& e, const CechCochain& c, int bound = 0);

struct PairingValue {
  GaussianRational value_2pii_units;
  GaussianRational residue_sum;
};

PairingValue trace_pairing(const Cocycle& e, const CechCochain& theta, const SectionFamily& phi);

enum class Verdict { Exists, NotExists, Unknown };
const char* verdict_name(Verdict v);

struct ConnectionResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<LMat> forms;
  std::optional<PairingValue> certificate;
  std::optional<SectionFamily> certificate_phi;
  int bound = 0;
};

// omega_j = Ad(omega_i) - theta on every overlap direction.
bool satisfies_transformation_law(const Cocycle& e, const std::vector<LMat>& forms);

ConnectionResult solve_connection(const Cocycle& e, int bound = 0);

struct CriterionReport {
  RemakResult remak;
  std::vector<long> factor_degrees;
  bool predicted_exists = false;
  ConnectionResult solver;
  bool agree = false;
};

CriterionReport connection_criterion(const Cocycle& e, int trials = 16, std::uint64_t seed = 1);

}  // namespace klein
