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

#include "klein/diffop.hpp"

namespace klein {

namespace {

bool regular_on(const Chart& ch, const LMat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && !ch.regular(m(r, c).valuation())) return false;
  return true;
}

LaurentPoly monomial_inverse(const LaurentPoly& m) {
  const auto& [k, c] = *m.terms().begin();
  return LaurentPoly::monomial(c.inverse(), -k);
}

// Chart data expected on the target chart of d.
ChartOp transport_op(const FirstOrderOp& p, Dir d) {
  const Atlas& a = p.source.atlas();
  const ChartOp& op = p.per_chart[d.first];
  LMat h = p.source.target(d).inverse();
  const LMat& gf = p.target.target(d);
  LaurentPoly jinv = monomial_inverse(jacobian(a, d));
  LMat tb = to_target(a, d, op.b);
  ChartOp out;
  out.b = (gf * tb * h).scaled(jinv);
  out.a = gf * (to_target(a, d, op.a) * h + (tb * h.derive()).scaled(jinv));
  return out;
}

}  // namespace

ValidationReport validate_operator(const FirstOrderOp& p) {
  ValidationReport rep;
  if (p.source.atlas_ptr() != p.target.atlas_ptr()) {
    rep.add("source and target live on different atlases");
    return rep;
  }
  rep.merge(validate_cocycle(p.source));
  rep.merge(validate_cocycle(p.target));
  if (!rep.ok) return rep;
  const Atlas& a = p.source.atlas();
  std::size_t re = static_cast<std::size_t>(p.source.rank()), rf = static_cast<std::size_t>(p.target.rank());
  if (p.per_chart.size() != a.charts.size()) {
    rep.add("operator needs data on every chart");
    return rep;
  }
  for (int i = 0; i < a.num_charts(); ++i) {
    const ChartOp& op = p.per_chart[i];
    if (op.a.rows() != rf || op.a.cols() != re || op.b.rows() != rf || op.b.cols() != re) {
      rep.add("operator on " + a.charts[i].id + ": wrong shape");
      return rep;
    }
    if (!regular_on(a.charts[i], op.a) || !regular_on(a.charts[i], op.b))
      rep.add("operator on " + a.charts[i].id + ": coefficients not regular");
  }
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    ChartOp want = transport_op(p, d);
    const ChartOp& have = p.per_chart[t.to];
    if (want.b != have.b) rep.add("operator on " + a.dir_name(d) + ": b does not glue");
    if (want.a != have.a) rep.add("operator on " + a.dir_name(d) + ": a does not glue");
  }
  return rep;
}

SectionFamily symbol(const FirstOrderOp& p) {
  ValidationReport rep = validate_operator(p);
  if (!rep.ok) fail(ErrorCode::InvalidOperator, rep.violations.front());
  SectionFamily s{"tangent*hom(" + p.source.name() + "," + p.target.name() + ")", {}};
  for (const auto& op : p.per_chart) s.per_chart.push_back(op.b);
  return s;
}

bool glues_symbol(const Cocycle& e, const Cocycle& f, const SectionFamily& s) {
  const Atlas& a = e.atlas();
  if (s.per_chart.size() != a.charts.size()) return false;
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    LMat want = (f.target(d) * to_target(a, d, s.per_chart[t.from]) * e.target(d).inverse())
                    .scaled(monomial_inverse(jacobian(a, d)));
    if (want != s.per_chart[t.to]) return false;
  }
  return true;
}

DerivativeCheck is_derivative_endomorphism(const FirstOrderOp& p) {
  if (p.source.rank() != p.target.rank()) fail(ErrorCode::InvalidOperator, "source and target differ");
  for (const auto& t : p.source.atlas().overlaps)
    if (p.source.target({t.from, t.to}) != p.target.target({t.from, t.to}))
      fail(ErrorCode::InvalidOperator, "source and target differ");
  SectionFamily sym = symbol(p);
  DerivativeCheck out;
  const Atlas& a = p.source.atlas();
  std::size_t r = static_cast<std::size_t>(p.source.rank());
  for (int i = 0; i < a.num_charts(); ++i) {
    const LMat& b = sym.per_chart[i];
    LaurentPoly y = b(0, 0);
    if (b != LMat::scalar(r, y)) {
      out.witness = "symbol on " + a.charts[i].id + " is not a multiple of the identity";
      out.field.clear();
      return out;
    }
    out.field.push_back(y);
  }
  out.yes = true;
  return out;
}

JetBundle jet_cocycle(const Cocycle& e) {
  require_valid(e);
  const Atlas& a = e.atlas();
  std::size_t r = static_cast<std::size_t>(e.rank());
  Cocycle j(e.atlas_ptr(), 2 * e.rank(), "jet(" + e.name() + ")");
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    const LMat& g = e.target(d);
    LMat m(2 * r, 2 * r);
    m.set_block(0, 0, g);
    m.set_block(r, 0, g.derive());
    m.set_block(r, r, g.scaled(jacobian(a, d)));
    j.set_target(d, m);
  }
  ValidationReport rep = validate_cocycle(j);
  if (!rep.ok) fail(ErrorCode::InvalidBundle, rep.violations.front());
  return JetBundle{j, e};
}

CechCochain jet_extension_class(const Cocycle& e) {
  JetBundle jb = jet_cocycle(e);
  std::size_t r = static_cast<std::size_t>(e.rank());
  CechCochain u;
  u.degree = 1;
  u.valued_in = "Omega1(end(" + e.name() + "))";
  // Difference of the chart splittings s -> (s, 0), read in the target frame.
  for (const auto& t : e.atlas().overlaps) {
    Dir d{t.from, t.to};
    const LMat& m = jb.cocycle.target(d);
    LMat lower = m.block(r, 0, r, r);
    u.overlap[d] = -(lower * e.target(d).inverse());
  }
  if (!satisfies_cocycle_law(e, u)) fail(ErrorCode::InvalidBundle, "jet extension class violates the cocycle law");
  return u;
}

SectionFamily jet_morphism(const FirstOrderOp& p) {
  ValidationReport rep = validate_operator(p);
  if (!rep.ok) fail(ErrorCode::InvalidOperator, rep.violations.front());
  std::size_t re = static_cast<std::size_t>(p.source.rank()), rf = static_cast<std::size_t>(p.target.rank());
  SectionFamily t{"hom(jet(" + p.source.name() + ")," + p.target.name() + ")", {}};
  for (const auto& op : p.per_chart) {
    LMat m(rf, 2 * re);
    m.set_block(0, 0, op.a);
    m.set_block(0, re, op.b);
    t.per_chart.push_back(m);
  }
  return t;
}

FirstOrderOp operator_from_jet_morphism(const Cocycle& e, const Cocycle& f, const SectionFamily& t) {
  std::size_t re = static_cast<std::size_t>(e.rank()), rf = static_cast<std::size_t>(f.rank());
  FirstOrderOp p{e, f, {}};
  for (const auto& m : t.per_chart) {
    if (m.rows() != rf || m.cols() != 2 * re) fail(ErrorCode::ShapeMismatch, "jet morphism has the wrong shape");
    p.per_chart.push_back(ChartOp{m.block(0, 0, rf, re), m.block(0, re, rf, re)});
  }
  return p;
}

bool glues_morphism(const Cocycle& e, const Cocycle& f, const SectionFamily& phi) {
  const Atlas& a = e.atlas();
  if (phi.per_chart.size() != a.charts.size()) return false;
  for (int i = 0; i < a.num_charts(); ++i) {
    const LMat& m = phi.per_chart[i];
    if (m.rows() != static_cast<std::size_t>(f.rank()) || m.cols() != static_cast<std::size_t>(e.rank())) return false;
    if (!regular_on(a.charts[i], m)) return false;
  }
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    if (phi.per_chart[t.to] * e.target(d) != f.target(d) * to_target(a, d, phi.per_chart[t.from])) return false;
  }
  return true;
}

}  // namespace klein
