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

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "klein/field.hpp"

namespace klein {

enum class DomainKind { Disc, Annulus };
enum class Flag { Holo, AntiHolo };

struct Chart {
  std::string id;
  DomainKind kind = DomainKind::Disc;
  Rational inner{0};
  Rational outer{1};

  // Disc charts admit non-negative exponents only.
  bool regular(int exponent) const { return kind == DomainKind::Annulus || exponent >= 0; }
};

// z_to = map(z_from) on the overlap.
struct Transition {
  int from = 0;
  int to = 0;
  MonomialMap map;
  Flag flag = Flag::Holo;
  int weight = 1;
  bool designated = false;
};

using Dir = std::pair<int, int>;

struct Atlas {
  std::string name;
  std::vector<Chart> charts;
  std::vector<Transition> overlaps;
  bool compact = false;
  std::vector<std::array<int, 3>> triples;

  int num_charts() const { return static_cast<int>(charts.size()); }
  int chart_index(const std::string& id) const;
  const Transition* find(int from, int to) const;
  const Transition& transition(int from, int to) const;
  // One direction per unordered pair, with from < to.
  std::vector<Dir> pairs() const;
  std::vector<Dir> directions() const;
  std::vector<Dir> designated() const;
  std::string dir_name(Dir d) const;
};

using AtlasPtr = std::shared_ptr<const Atlas>;

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void add(const std::string& v) {
    ok = false;
    violations.push_back(v);
  }
  void merge(const ValidationReport& o) {
    for (const auto& v : o.violations) add(v);
  }
};

ValidationReport validate_atlas(const Atlas& a);

struct DoubleCover {
  Atlas atlas;
  // cover chart -> (base chart, sheet +1 or -1)
  std::vector<std::pair<int, int>> sheet_map;
  // cover chart -> its image under the involution
  std::vector<int> involution;
};

DoubleCover double_cover(const Atlas& a);
// Rebuilds base transitions from the cover and compares them with `base`.
ValidationReport check_quotient(const DoubleCover& cover, const Atlas& base);
// Per cover chart Laurent data of the lift of a per-chart function family.
std::vector<LaurentPoly> lift_function(const DoubleCover& cover, const std::vector<LaurentPoly>& f);

}  // namespace klein
