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

#include "klein/atiyah.hpp"

#include <algorithm>
#include <cstdlib>

#include "window.hpp"

namespace klein {

namespace {

using detail::accumulate;
using detail::add_complex_equation;
using detail::ComplexRow;
using detail::Layout;

int max_abs_exponent(const LMat& m) {
  int mx = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) mx = std::max({mx, std::abs(m(r, c).valuation()), std::abs(m(r, c).max_exponent())});
  return mx;
}

bool regular_on(const Chart& ch, const LMat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && !ch.regular(m(r, c).valuation())) return false;
  return true;
}

LMat column_to_square(const LMat& col, std::size_t n) {
  LMat m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = col(r * n + c, 0);
  return m;
}

}  // namespace

LMat adjoint(const Cocycle& e, Dir d, const LMat& form_on_source) {
  const LMat& g = e.target(d);
  return (g * to_target(e.atlas(), d, form_on_source) * g.inverse()).scaled(jacobian(e.atlas(), d));
}

CechCochain atiyah_cocycle(const Cocycle& e) {
  require_valid(e);
  CechCochain c;
  c.degree = 1;
  c.valued_in = "Omega1(end(" + e.name() + "))";
  for (const auto& t : e.atlas().overlaps) {
    Dir d{t.from, t.to};
    const LMat& g = e.target(d);
    c.overlap[d] = g.derive() * g.inverse();
  }
  if (!satisfies_cocycle_law(e, c)) fail(ErrorCode::InvalidBundle, "Atiyah cochain of " + e.name() + " violates the cocycle law");
  return c;
}

bool satisfies_cocycle_law(const Cocycle& e, const CechCochain& c) {
  const Atlas& a = e.atlas();
  if (c.degree != 1) return false;
  for (const auto& t : a.overlaps) {
    Dir ij{t.from, t.to}, ji{t.to, t.from};
    if (!c.overlap.count(ij) || !c.overlap.count(ji)) return false;
    if (c.overlap.at(ji) != -adjoint(e, ji, c.overlap.at(ij))) return false;
  }
  for (const auto& tr : a.triples) {
    const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perm) {
      int i = tr[p[0]], j = tr[p[1]], k = tr[p[2]];
      if (c.overlap.at({i, k}) != c.overlap.at({j, k}) + adjoint(e, {j, k}, c.overlap.at({i, j}))) return false;
    }
  }
  return true;
}

CechCochain coboundary(const Cocycle& e, const std::vector<LMat>& tau) {
  const Atlas& a = e.atlas();
  if (tau.size() != a.charts.size()) fail(ErrorCode::ShapeMismatch, "one form per chart expected");
  CechCochain c;
  c.degree = 1;
  c.valued_in = "Omega1(end(" + e.name() + "))";
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    c.overlap[d] = adjoint(e, d, tau[t.from]) - tau[t.to];
  }
  return c;
}

CechCochain add(const CechCochain& a, const CechCochain& b) {
  if (a.degree != b.degree) fail(ErrorCode::ShapeMismatch, "cochains of different degree");
  CechCochain c = a;
  for (const auto& [d, m] : b.overlap) {
    auto it = c.overlap.find(d);
    if (it == c.overlap.end())
      c.overlap[d] = m;
    else
      it->second = it->second + m;
  }
  if (!b.chart.empty()) {
    if (c.chart.size() != b.chart.size()) fail(ErrorCode::ShapeMismatch, "cochains on different atlases");
    for (std::size_t i = 0; i < c.chart.size(); ++i) c.chart[i] = c.chart[i] + b.chart[i];
  }
  return c;
}

int connection_bound(const Cocycle& e, const CechCochain& c) {
  int mx = 0;
  for (const auto& [d, m] : c.overlap) mx = std::max(mx, max_abs_exponent(m));
  return auto_bound(hom(e, e)) + mx + 2;
}

std::optional<std::vector<LMat>> solve_coboundary(const Cocycle& e, const CechCochain& c, int bound) {
  int need = connection_bound(e, c);
  if (bound == 0) bound = need;
  if (bound < need)
    fail(ErrorCode::BoundTooSmall, "bound " + std::to_string(bound) + " is below the auto-bound " + std::to_string(need));
  const Atlas& a = e.atlas();
  std::size_t r = static_cast<std::size_t>(e.rank());
  Layout lay(a, r * r, bound);
  SparseSystem sys(lay.size());
  const GaussianRational iu = GaussianRational::imag_unit();
  for (Dir d : a.pairs()) {
    auto [i, j] = d;
    auto cit = c.overlap.find(d);
    if (cit == c.overlap.end()) fail(ErrorCode::ShapeMismatch, "cochain lacks " + a.dir_name(d));
    const LMat& rhs = cit->second;
    const MonomialMap& back = a.transition(j, i).map;
    const LMat& g = e.target(d);
    LMat ginv = g.inverse();
    LaurentPoly jac = jacobian(a, d);
    std::map<std::pair<std::size_t, int>, ComplexRow> eqs;
    for (std::size_t row = 0; row < r; ++row)
      for (std::size_t col = 0; col < r; ++col) {
        std::size_t flat = row * r + col;
        for (int k = lay.lo(j); k <= lay.hi(); ++k) {
          accumulate(eqs[{flat, k}], lay.index(j, flat, k, 0), GaussianRational(-1));
          accumulate(eqs[{flat, k}], lay.index(j, flat, k, 1), -iu);
        }
        for (const auto& [k, v] : rhs(row, col).terms()) eqs[{flat, k}];
      }
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = 0; q < r; ++q)
        for (std::size_t row = 0; row < r; ++row)
          for (std::size_t col = 0; col < r; ++col) {
            LaurentPoly m = g(row, p) * ginv(q, col) * jac;
            if (m.is_zero()) continue;
            std::size_t flat = row * r + col;
            for (int k = lay.lo(i); k <= lay.hi(); ++k) {
              GaussianRational kappa = back.c.pow(k);
              GaussianRational cre = back.bar ? kappa.conj() : kappa;
              GaussianRational cim = back.bar ? -(iu * kappa.conj()) : iu * kappa;
              int ek = back.e * k;
              for (const auto& [s, mc] : m.terms()) {
                ComplexRow& eq = eqs[{flat, ek + s}];
                accumulate(eq, lay.index(i, p * r + q, k, 0), mc * cre);
                accumulate(eq, lay.index(i, p * r + q, k, 1), mc * cim);
              }
            }
          }
    for (const auto& [key, row] : eqs) add_complex_equation(sys, row, rhs(key.first / r, key.first % r).coeff(key.second));
    if (!sys.consistent()) return std::nullopt;
  }
  auto x = sys.particular();
  if (!x) return std::nullopt;
  std::vector<LMat> tau;
  for (const LMat& col : lay.unpack(*x)) tau.push_back(column_to_square(col, r));
  CechCochain check = coboundary(e, tau);
  for (const auto& [d, m] : c.overlap)
    if (check.overlap.at(d) != m) return std::nullopt;
  return tau;
}

PairingValue trace_pairing(const Cocycle& e, const CechCochain& theta, const SectionFamily& phi) {
  const Atlas& a = e.atlas();
  std::size_t r = static_cast<std::size_t>(e.rank());
  if (theta.degree != 1) fail(ErrorCode::ShapeMismatch, "pairing needs a degree-1 cochain");
  if (phi.per_chart.size() != a.charts.size()) fail(ErrorCode::ShapeMismatch, "endomorphism lives on another atlas");
  for (const auto& m : phi.per_chart)
    if (m.rows() != r || m.cols() != r) fail(ErrorCode::ShapeMismatch, "endomorphism has the wrong shape");
  GaussianRational sum;
  for (const auto& t : a.overlaps) {
    if (!t.designated) continue;
    Dir d{t.from, t.to};
    auto it = theta.overlap.find(d);
    if (it == theta.overlap.end()) fail(ErrorCode::ShapeMismatch, "cochain lacks " + a.dir_name(d));
    if (it->second.rows() != r || it->second.cols() != r) fail(ErrorCode::ShapeMismatch, "cochain has the wrong shape");
    sum += GaussianRational(static_cast<long>(t.weight)) * (it->second * phi.per_chart[t.to]).trace().residue();
  }
  sum *= GaussianRational(static_cast<long>(kPairingSign));
  return PairingValue{GaussianRational(sum.re()), sum};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Exists: return "Exists";
    case Verdict::NotExists: return "NotExists";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

bool satisfies_transformation_law(const Cocycle& e, const std::vector<LMat>& forms) {
  const Atlas& a = e.atlas();
  if (forms.size() != a.charts.size()) return false;
  for (int i = 0; i < a.num_charts(); ++i)
    if (!regular_on(a.charts[i], forms[i])) return false;
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    const LMat& g = e.target(d);
    LMat theta = g.derive() * g.inverse();
    if (forms[t.to] != adjoint(e, d, forms[t.from]) - theta) return false;
  }
  return true;
}

ConnectionResult solve_connection(const Cocycle& e, int bound) {
  CechCochain theta = atiyah_cocycle(e);
  ConnectionResult res;
  res.bound = bound == 0 ? connection_bound(e, theta) : bound;
  if (auto tau = solve_coboundary(e, theta, bound)) {
    if (!satisfies_transformation_law(e, *tau))
      fail(ErrorCode::BadConnection, "solver output violates the transformation law");
    res.verdict = Verdict::Exists;
    res.forms = std::move(*tau);
    return res;
  }
  if (!e.atlas().compact) return res;
  EndAlgebra alg = end_algebra(e);
  for (const auto& phi : alg.basis) {
    PairingValue pv = trace_pairing(e, theta, phi);
    if (!pv.value_2pii_units.is_zero()) {
      res.verdict = Verdict::NotExists;
      res.certificate = pv;
      res.certificate_phi = phi;
      return res;
    }
  }
  return res;
}

CriterionReport connection_criterion(const Cocycle& e, int trials, std::uint64_t seed) {
  if (!e.atlas().compact) fail(ErrorCode::NotCompact, "connection criterion needs a compact atlas");
  require_valid(e);
  CriterionReport rep;
  rep.remak = remak_decompose(e, trials, seed);
  rep.predicted_exists = true;
  for (const auto& f : rep.remak.factors) {
    long d = degree(f).total;
    rep.factor_degrees.push_back(d);
    if (d != 0) rep.predicted_exists = false;
  }
  rep.solver = solve_connection(e);
  rep.agree = rep.predicted_exists ? rep.solver.verdict == Verdict::Exists : rep.solver.verdict == Verdict::NotExists;
  return rep;
}

}  // namespace klein
