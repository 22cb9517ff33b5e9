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

#include "klein/surface.hpp"

#include <set>

namespace klein {

int Atlas::chart_index(const std::string& id) const {
  for (std::size_t i = 0; i < charts.size(); ++i)
    if (charts[i].id == id) return static_cast<int>(i);
  return -1;
}

const Transition* Atlas::find(int from, int to) const {
  for (const auto& t : overlaps)
    if (t.from == from && t.to == to) return &t;
  return nullptr;
}

const Transition& Atlas::transition(int from, int to) const {
  const Transition* t = find(from, to);
  if (!t) fail(ErrorCode::InvalidAtlas, "no overlap " + dir_name({from, to}));
  return *t;
}

std::vector<Dir> Atlas::pairs() const {
  std::set<Dir> s;
  for (const auto& t : overlaps) s.insert({std::min(t.from, t.to), std::max(t.from, t.to)});
  return {s.begin(), s.end()};
}

std::vector<Dir> Atlas::directions() const {
  std::vector<Dir> out;
  for (const auto& t : overlaps) out.emplace_back(t.from, t.to);
  return out;
}

std::vector<Dir> Atlas::designated() const {
  std::vector<Dir> out;
  for (const auto& t : overlaps)
    if (t.designated) out.emplace_back(t.from, t.to);
  return out;
}

std::string Atlas::dir_name(Dir d) const {
  auto id = [this](int i) {
    return i >= 0 && i < num_charts() ? charts[i].id : std::to_string(i);
  };
  return id(d.first) + "->" + id(d.second);
}

ValidationReport validate_atlas(const Atlas& a) {
  ValidationReport rep;
  for (const auto& c : a.charts) {
    if (sgn(c.outer) <= 0) rep.add("chart " + c.id + ": radius must be positive");
    if (c.kind == DomainKind::Annulus && (sgn(c.inner) <= 0 || c.inner >= c.outer))
      rep.add("chart " + c.id + ": annulus needs 0 < inner < outer");
  }
  std::set<Dir> seen;
  for (const auto& t : a.overlaps) {
    std::string name = a.dir_name({t.from, t.to});
    if (t.from < 0 || t.to < 0 || t.from >= a.num_charts() || t.to >= a.num_charts()) {
      rep.add("overlap " + name + ": unknown chart");
      continue;
    }
    if (t.from == t.to) rep.add("overlap " + name + ": self overlap");
    if (!seen.insert({t.from, t.to}).second) rep.add("overlap " + name + ": listed twice");
    if (t.weight != 1 && t.weight != -1) rep.add("overlap " + name + ": weight must be +1 or -1");
    try {
      t.map.check();
    } catch (const Error& e) {
      rep.add("overlap " + name + ": " + e.what());
      continue;
    }
    if ((t.flag == Flag::AntiHolo) != t.map.bar) rep.add("overlap " + name + ": flag/map mismatch");
    const Transition* inv = a.find(t.to, t.from);
    if (!inv) {
      rep.add("overlap " + name + ": missing inverse direction");
      continue;
    }
    if (inv->flag != t.flag) rep.add("overlap " + name + ": inverse flag differs");
    try {
      if (!(inv->map == t.map.inverse())) rep.add("overlap " + name + ": inverse map inconsistent");
    } catch (const Error& e) {
      rep.add("overlap " + name + ": " + e.what());
    }
    if (inv->weight != -t.weight) rep.add("overlap " + name + ": weight not antisymmetric");
  }
  for (const auto& tr : a.triples) {
    std::string name = "triple (" + std::to_string(tr[0]) + "," + std::to_string(tr[1]) + "," +
                       std::to_string(tr[2]) + ")";
    const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perm) {
      int i = tr[p[0]], j = tr[p[1]], k = tr[p[2]];
      const Transition* ij = a.find(i, j);
      const Transition* jk = a.find(j, k);
      const Transition* ik = a.find(i, k);
      if (!ij || !jk || !ik) {
        rep.add(name + ": missing overlap");
        break;
      }
      try {
        if (!(compose(jk->map, ij->map) == ik->map)) {
          rep.add(name + ": composition law fails for " + a.dir_name({i, j}) + "," + a.dir_name({j, k}));
          break;
        }
      } catch (const Error& e) {
        rep.add(name + ": " + e.what());
        break;
      }
    }
  }
  return rep;
}

DoubleCover double_cover(const Atlas& a) {
  if (!validate_atlas(a).ok) fail(ErrorCode::InvalidAtlas, "atlas " + a.name + " does not validate");
  DoubleCover dc;
  dc.atlas.name = a.name + "~";
  dc.atlas.compact = a.compact;
  for (int i = 0; i < a.num_charts(); ++i) {
    Chart plus = a.charts[i], minus = a.charts[i];
    plus.id += "+";
    minus.id += "-";
    dc.atlas.charts.push_back(plus);
    dc.atlas.charts.push_back(minus);
    dc.sheet_map.emplace_back(i, 1);
    dc.sheet_map.emplace_back(i, -1);
    dc.involution.push_back(2 * i + 1);
    dc.involution.push_back(2 * i);
  }
  for (const auto& t : a.overlaps) {
    GaussianRational cc = t.map.c.conj();
    auto add = [&](int from, int to, GaussianRational c) {
      Transition n;
      n.from = from;
      n.to = to;
      n.map = MonomialMap{c, t.map.e, false};
      n.flag = Flag::Holo;
      n.weight = t.weight;
      n.designated = t.designated;
      dc.atlas.overlaps.push_back(n);
    };
    if (t.flag == Flag::Holo) {
      add(2 * t.from, 2 * t.to, t.map.c);
      add(2 * t.from + 1, 2 * t.to + 1, cc);
    } else {
      add(2 * t.from, 2 * t.to + 1, cc);
      add(2 * t.from + 1, 2 * t.to, t.map.c);
    }
  }
  for (const auto& tr : a.triples) {
    for (int s0 = 0; s0 < 2; ++s0) {
      int sheet[3] = {s0, 0, 0};
      for (int m = 1; m < 3; ++m) {
        const Transition& t = a.transition(tr[0], tr[m]);
        sheet[m] = t.flag == Flag::Holo ? s0 : 1 - s0;
      }
      dc.atlas.triples.push_back({2 * tr[0] + sheet[0], 2 * tr[1] + sheet[1], 2 * tr[2] + sheet[2]});
    }
  }
  return dc;
}

ValidationReport check_quotient(const DoubleCover& cover, const Atlas& base) {
  ValidationReport rep;
  rep.merge(validate_atlas(cover.atlas));
  for (std::size_t c = 0; c < cover.involution.size(); ++c) {
    int s = cover.involution[c];
    if (cover.involution[s] != static_cast<int>(c)) rep.add("involution is not an involution");
    if (cover.sheet_map[s].first != cover.sheet_map[c].first || cover.sheet_map[s].second != -cover.sheet_map[c].second)
      rep.add("involution does not exchange sheets");
  }
  std::size_t matched = 0;
  for (const auto& t : cover.atlas.overlaps) {
    if (t.flag != Flag::Holo) rep.add("cover overlap " + cover.atlas.dir_name({t.from, t.to}) + " is not holomorphic");
    auto [i, si] = cover.sheet_map[t.from];
    auto [j, sj] = cover.sheet_map[t.to];
    if (si < 0) continue;
    const Transition* b = base.find(i, j);
    if (!b) {
      rep.add("cover overlap has no base overlap");
      continue;
    }
    MonomialMap m = t.map;
    MonomialMap rebuilt = sj > 0 ? m : MonomialMap{m.c.conj(), m.e, true};
    if (!(rebuilt == b->map)) rep.add("quotient map differs on " + base.dir_name({i, j}));
    ++matched;
  }
  if (matched != base.overlaps.size()) rep.add("quotient misses base overlaps");
  return rep;
}

std::vector<LaurentPoly> lift_function(const DoubleCover& cover, const std::vector<LaurentPoly>& f) {
  std::vector<LaurentPoly> out;
  for (const auto& [base, sheet] : cover.sheet_map) out.push_back(sheet > 0 ? f[base] : f[base].conj_coeffs());
  return out;
}

}  // namespace klein
