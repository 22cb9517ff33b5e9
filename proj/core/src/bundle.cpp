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

#include "klein/bundle.hpp"

namespace klein {

Cocycle::Cocycle(AtlasPtr atlas, int rank, std::string name)
    : atlas_(std::move(atlas)), rank_(rank), name_(std::move(name)) {}

void Cocycle::set_target(Dir d, LMat g) {
  const MonomialMap& t = atlas_->transition(d.first, d.second).map;
  HalfMat h;
  h.arg = t.bar ? Arg::ZBar : Arg::Z;
  h.m = LMat(g.rows(), g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) h.m(r, c) = pullback(HalfFn{g(r, c), Arg::Z}, t).body;
  entries_[d] = Entry{std::move(h), std::move(g)};
}

void Cocycle::set_source(Dir d, HalfMat h) {
  const MonomialMap& back = atlas_->transition(d.second, d.first).map;
  LMat g(h.m.rows(), h.m.cols());
  bool holo = true;
  for (std::size_t r = 0; r < h.m.rows(); ++r)
    for (std::size_t c = 0; c < h.m.cols(); ++c) {
      HalfFn f = pullback(HalfFn{h.m(r, c), h.arg}, back);
      if (f.arg != Arg::Z && !f.body.is_zero()) holo = false;
      g(r, c) = f.body;
    }
  Entry e{std::move(h), std::nullopt};
  if (holo) e.target = std::move(g);
  entries_[d] = std::move(e);
}

const LMat& Cocycle::target(Dir d) const {
  auto it = entries_.find(d);
  if (it == entries_.end()) fail(ErrorCode::InvalidBundle, name_ + ": no entry on " + atlas_->dir_name(d));
  if (!it->second.target)
    fail(ErrorCode::InvalidBundle, name_ + ": entry on " + atlas_->dir_name(d) + " does not match the overlap flag");
  return *it->second.target;
}

const HalfMat& Cocycle::source(Dir d) const {
  auto it = entries_.find(d);
  if (it == entries_.end()) fail(ErrorCode::InvalidBundle, name_ + ": no entry on " + atlas_->dir_name(d));
  return it->second.source;
}

std::vector<Dir> Cocycle::directions() const {
  std::vector<Dir> out;
  for (const auto& [d, e] : entries_) out.push_back(d);
  return out;
}

LMat to_target(const Atlas& a, Dir d, const LMat& m) { return m.transported(a.transition(d.second, d.first).map); }

LaurentPoly jacobian(const Atlas& a, Dir d) { return transport_jacobian(a.transition(d.second, d.first).map); }

ValidationReport validate_cocycle(const Cocycle& e) {
  ValidationReport rep;
  const Atlas& a = e.atlas();
  ValidationReport ar = validate_atlas(a);
  if (!ar.ok) {
    rep.add("atlas invalid");
    rep.merge(ar);
    return rep;
  }
  std::size_t r = static_cast<std::size_t>(e.rank());
  for (Dir d : e.directions())
    if (!a.find(d.first, d.second)) rep.add("entry on unknown overlap " + a.dir_name(d));
  bool shapes_ok = true;
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    std::string name = e.name() + " on " + a.dir_name(d);
    if (!e.has(d)) {
      rep.add(name + ": missing entry");
      shapes_ok = false;
      continue;
    }
    const HalfMat& h = e.source(d);
    if (h.m.rows() != r || h.m.cols() != r) {
      rep.add(name + ": wrong shape");
      shapes_ok = false;
      continue;
    }
    Arg want = t.flag == Flag::AntiHolo ? Arg::ZBar : Arg::Z;
    if (h.arg != want) {
      rep.add(name + ": argument does not match overlap flag");
      shapes_ok = false;
      continue;
    }
    if (!e.target(d).det().is_monomial()) rep.add(name + ": determinant is not a nonzero monomial");
  }
  if (!shapes_ok) return rep;
  LMat id = LMat::identity(r);
  for (const auto& t : a.overlaps) {
    Dir ij{t.from, t.to}, ji{t.to, t.from};
    if (e.target(ji) * to_target(a, ji, e.target(ij)) != id)
      rep.add(e.name() + " on " + a.dir_name(ij) + ": inverse law fails");
  }
  for (const auto& tr : a.triples) {
    const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perm) {
      int i = tr[p[0]], j = tr[p[1]], k = tr[p[2]];
      LMat lhs = e.target({i, k});
      LMat rhs = e.target({j, k}) * to_target(a, {j, k}, e.target({i, j}));
      if (lhs != rhs) {
        rep.add(e.name() + ": triple law fails on (" + a.charts[i].id + "," + a.charts[j].id + "," + a.charts[k].id + ")");
        break;
      }
    }
  }
  return rep;
}

void require_valid(const Cocycle& e) {
  ValidationReport rep = validate_cocycle(e);
  if (!rep.ok) fail(ErrorCode::InvalidBundle, rep.violations.front());
}

namespace {

void same_atlas(const Cocycle& e, const Cocycle& f) {
  if (e.atlas_ptr() != f.atlas_ptr()) fail(ErrorCode::AtlasMismatch, e.name() + " and " + f.name() + " live on different atlases");
}

template <typename F>
Cocycle map_entries(const Cocycle& e, int rank, std::string name, F f) {
  Cocycle out(e.atlas_ptr(), rank, std::move(name));
  for (const auto& t : e.atlas().overlaps) out.set_target({t.from, t.to}, f(Dir{t.from, t.to}));
  return out;
}

}  // namespace

Cocycle dual(const Cocycle& e) {
  return map_entries(e, e.rank(), "dual(" + e.name() + ")", [&](Dir d) { return e.target(d).inverse().transpose(); });
}

Cocycle tensor(const Cocycle& e, const Cocycle& f) {
  same_atlas(e, f);
  return map_entries(e, e.rank() * f.rank(), "tensor(" + e.name() + "," + f.name() + ")",
                     [&](Dir d) { return kronecker(e.target(d), f.target(d)); });
}

Cocycle hom(const Cocycle& e, const Cocycle& f) {
  same_atlas(e, f);
  Cocycle out = tensor(f, dual(e));
  out.set_name("hom(" + e.name() + "," + f.name() + ")");
  return out;
}

Cocycle direct_sum(const Cocycle& e, const Cocycle& f) {
  same_atlas(e, f);
  return map_entries(e, e.rank() + f.rank(), "sum(" + e.name() + "," + f.name() + ")",
                     [&](Dir d) { return klein::direct_sum(e.target(d), f.target(d)); });
}

Cocycle det(const Cocycle& e) {
  return map_entries(e, 1, "det(" + e.name() + ")", [&](Dir d) { return LMat::scalar(1, e.target(d).det()); });
}

Cocycle construct(ConstructOp op, const std::vector<const Cocycle*>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) fail(ErrorCode::ShapeMismatch, "construct expects " + std::to_string(n) + " operands");
  };
  switch (op) {
    case ConstructOp::Dual: need(1); return dual(*args[0]);
    case ConstructOp::Det: need(1); return det(*args[0]);
    case ConstructOp::Tensor: need(2); return tensor(*args[0], *args[1]);
    case ConstructOp::Hom: need(2); return hom(*args[0], *args[1]);
    case ConstructOp::DirectSum: need(2); return direct_sum(*args[0], *args[1]);
  }
  fail(ErrorCode::ShapeMismatch, "unknown construction");
}

DegreeReport degree(const Cocycle& e) {
  if (!e.atlas().compact) fail(ErrorCode::NotCompact, "degree needs a compact atlas");
  require_valid(e);
  DegreeReport rep;
  for (const auto& t : e.atlas().overlaps) {
    if (!t.designated) continue;
    Dir d{t.from, t.to};
    long v = static_cast<long>(t.weight) * e.target(d).det().valuation() * kDegreeSign;
    rep.per_overlap[d] = v;
    rep.total += v;
  }
  return rep;
}

CanonicalBundles canonical_bundles(const AtlasPtr& a) {
  ValidationReport rep = validate_atlas(*a);
  if (!rep.ok) fail(ErrorCode::InvalidAtlas, rep.violations.front());
  CanonicalBundles out{Cocycle(a, 1, "tangent"), Cocycle(a, 1, "cotangent"), Cocycle(a, 1, "orientation")};
  for (const auto& t : a->overlaps) {
    Dir d{t.from, t.to};
    LaurentPoly j = jacobian(*a, d);
    const auto& [k, c] = *j.terms().begin();
    out.tangent.set_target(d, LMat::scalar(1, LaurentPoly::monomial(c.inverse(), -k)));
    out.cotangent.set_target(d, LMat::scalar(1, j));
    out.orientation.set_target(d, LMat::scalar(1, LaurentPoly(t.flag == Flag::Holo ? 1 : -1)));
  }
  return out;
}

Cocycle trivial_bundle(const AtlasPtr& a, int rank) {
  Cocycle out(a, rank, rank == 1 ? "trivial" : "trivial" + std::to_string(rank));
  for (const auto& t : a->overlaps) out.set_target({t.from, t.to}, LMat::identity(rank));
  return out;
}

Cocycle frame_change(const Cocycle& e, const std::vector<LMat>& frames) {
  const Atlas& a = e.atlas();
  if (frames.size() != a.charts.size()) fail(ErrorCode::ShapeMismatch, "one frame per chart expected");
  for (int i = 0; i < a.num_charts(); ++i) {
    LaurentPoly dt = frames[i].det();
    if (!dt.is_monomial()) fail(ErrorCode::InvalidBundle, "frame on " + a.charts[i].id + " is not invertible");
    if (a.charts[i].kind == DomainKind::Disc) {
      if (dt.valuation() != 0) fail(ErrorCode::InvalidBundle, "frame on disc " + a.charts[i].id + " vanishes at the centre");
      for (std::size_t r = 0; r < frames[i].rows(); ++r)
        for (std::size_t c = 0; c < frames[i].cols(); ++c)
          if (!frames[i](r, c).is_zero() && frames[i](r, c).valuation() < 0)
            fail(ErrorCode::InvalidBundle, "frame on disc " + a.charts[i].id + " is singular");
    }
  }
  return map_entries(e, e.rank(), e.name(), [&](Dir d) {
    return frames[d.second].inverse() * e.target(d) * to_target(a, d, frames[d.first]);
  });
}

std::vector<LMat> random_frames(const Atlas& a, int rank, std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> nz(1, 3);
  auto rand_poly = [&](const Chart& ch) {
    LaurentPoly p;
    int lo = ch.kind == DomainKind::Disc ? 0 : -max_degree;
    for (int k = lo; k <= max_degree; ++k)
      p.add_term(k, GaussianRational(Rational(coef(rng)), Rational(coef(rng))));
    return p;
  };
  std::vector<LMat> out;
  std::size_t n = static_cast<std::size_t>(rank);
  for (const auto& ch : a.charts) {
    LMat u = LMat::identity(n), l = LMat::identity(n), d(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        u(i, j) = rand_poly(ch);
        l(j, i) = rand_poly(ch);
      }
    for (std::size_t i = 0; i < n; ++i) {
      int s = nz(rng) * (coef(rng) < 0 ? -1 : 1);
      int k = ch.kind == DomainKind::Disc ? 0 : std::uniform_int_distribution<int>(-1, 1)(rng);
      d(i, i) = LaurentPoly::monomial(GaussianRational(Rational(s), Rational(coef(rng) % 2)), k);
      if (d(i, i).is_zero()) d(i, i) = LaurentPoly::monomial(GaussianRational(1), k);
    }
    out.push_back(d * u * l);
  }
  return out;
}

}  // namespace klein
