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

#include "klein/bundle.hpp"
#include "klein/surface.hpp"

namespace klein::fixtures {

// Two discs glued by w = 1/conj(z); the overlap 0->1 carries the residue.
AtlasPtr sphere_twist();
// Three annuli in a cycle closed by z0 = conj(z2)/2.
AtlasPtr klein_bottle();
// A single disc and no overlaps.
AtlasPtr one_chart();

// g(0->1) = w^n on the twisted sphere.
Cocycle line(const AtlasPtr& sphere, int n);
// Rank-2 bundle on the Klein bottle glued by [[1, 1], [0, 1]] on 2->0.
Cocycle unipotent_extension(const AtlasPtr& klein);

}  // namespace klein::fixtures
