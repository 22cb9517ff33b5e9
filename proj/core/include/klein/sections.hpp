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

#include <cstdint>
#include <string>
#include <vector>

#include "klein/bundle.hpp"
#include "klein/linalg.hpp"

namespace klein {

// Per-chart data of a global section: column vectors for sections of E,
// square matrices for endomorphisms.
struct SectionFamily {
  std::string bundle;
  std::vector<LMat> per_chart;

  friend bool operator==(const SectionFamily& a, const SectionFamily& b) { return a.per_chart == b.per_chart; }
};

// rank * max |exponent| over all cocycle entries, plus one.
int auto_bound(const Cocycle& e);

// Real basis of the global sections of E. A bound of 0 selects auto_bound.
std::vector<SectionFamily> global_sections(const Cocycle& e, int bound = 0);

// Exact gluing checks in every overlap direction.
bool glues(const Cocycle& e, const SectionFamily& s);
bool glues_endomorphism(const Cocycle& e, const SectionFamily& phi);

SectionFamily identity_section(const Cocycle& e);
SectionFamily compose(const SectionFamily& a, const SectionFamily& b);
SectionFamily linear_combination(const std::vector<SectionFamily>& basis, const QVec& x);

struct EndAlgebra {
  std::vector<SectionFamily> basis;
  // basis[a] * basis[b] = sum_k structure_constants[a][b][k] * basis[k]
  std::vector<std::vector<QVec>> structure_constants;

  int dim_real() const { return static_cast<int>(basis.size()); }
  SectionFamily element(const QVec& x) const { return linear_combination(basis, x); }
  QVec product(const QVec& x, const QVec& y) const;
  // Matrix of left multiplication by x in the basis.
  QMat left_multiplication(const QVec& x) const;
};

EndAlgebra end_algebra(const Cocycle& e, int bound = 0);

struct RemakResult {
  std::vector<Cocycle> factors;
  // Certificate: frame_change(E, frames) equals the direct sum of the factors.
  std::vector<LMat> frames;
  std::vector<SectionFamily> idempotents;
  bool split = false;
  int trials = 0;
  std::uint64_t seed = 0;
};

RemakResult remak_decompose(const Cocycle& e, int trials = 16, std::uint64_t seed = 1);
// Block-diagonal direct sum of several cocycles.
Cocycle direct_sum_all(const std::vector<Cocycle>& parts);

struct LambdaEntry {
  std::size_t index = 0;
  GaussianRational lambda;
  bool ok = false;
  std::string witness;
};

struct LambdaNilpotentReport {
  bool ok = true;
  std::vector<LambdaEntry> entries;
};

// Characteristic polynomial det(t - m) with Laurent coefficients, lowest degree first.
std::vector<LaurentPoly> char_poly(const LMat& m);

LambdaNilpotentReport check_lambda_nilpotent(const Cocycle& e);

}  // namespace klein
