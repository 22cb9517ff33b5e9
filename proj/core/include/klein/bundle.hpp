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
#include <random>
#include <string>
#include <vector>

#include "klein/field.hpp"
#include "klein/surface.hpp"

namespace klein {

// Degree sign: degree(tangent of the twisted sphere) = 2.
inline constexpr int kDegreeSign = 1;

// Matrix of one-variable functions sharing an argument.
struct HalfMat {
  Arg arg = Arg::Z;
  LMat m;
};

// Transition data g for each overlap direction i->j: it carries frame
// coordinates on chart i to frame coordinates on chart j.
class Cocycle {
 public:
  Cocycle() = default;
  Cocycle(AtlasPtr atlas, int rank, std::string name = "");

  const Atlas& atlas() const { return *atlas_; }
  const AtlasPtr& atlas_ptr() const { return atlas_; }
  int rank() const { return rank_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  // Entry written in the target coordinate z_j, holomorphic there.
  void set_target(Dir d, LMat g);
  // Entry written in the source coordinate z_i.
  void set_source(Dir d, HalfMat h);

  bool has(Dir d) const { return entries_.count(d) > 0; }
  const LMat& target(Dir d) const;
  const HalfMat& source(Dir d) const;
  std::vector<Dir> directions() const;

 private:
  struct Entry {
    HalfMat source;
    std::optional<LMat> target;
  };

  AtlasPtr atlas_;
  int rank_ = 0;
  std::string name_;
  std::map<Dir, Entry> entries_;
};

// Holomorphic image on chart j of a matrix written on chart i.
LMat to_target(const Atlas& a, Dir d, const LMat& m_on_source);
// d/dz_j of the transported chart-i coordinate.
LaurentPoly jacobian(const Atlas& a, Dir d);

ValidationReport validate_cocycle(const Cocycle& e);
void require_valid(const Cocycle& e);

enum class ConstructOp { Dual, Tensor, Hom, DirectSum, Det };

Cocycle construct(ConstructOp op, const std::vector<const Cocycle*>& args);
Cocycle dual(const Cocycle& e);
Cocycle tensor(const Cocycle& e, const Cocycle& f);
Cocycle hom(const Cocycle& e, const Cocycle& f);
Cocycle direct_sum(const Cocycle& e, const Cocycle& f);
Cocycle det(const Cocycle& e);

struct DegreeReport {
  long total = 0;
  std::map<Dir, long> per_overlap;
};

DegreeReport degree(const Cocycle& e);

struct CanonicalBundles {
  Cocycle tangent;
  Cocycle cotangent;
  Cocycle orientation;
};

CanonicalBundles canonical_bundles(const AtlasPtr& a);
Cocycle trivial_bundle(const AtlasPtr& a, int rank);

// New frames P_i on each chart: coordinates become P_i^{-1} s_i.
Cocycle frame_change(const Cocycle& e, const std::vector<LMat>& frames);
// Invertible frames with unit-monomial determinants regular on each chart.
std::vector<LMat> random_frames(const Atlas& a, int rank, std::mt19937_64& rng, int max_degree = 1);

}  // namespace klein
