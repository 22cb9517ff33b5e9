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

#include "klein/sections.hpp"

#include "window.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace klein {

namespace {

using detail::Layout;
using detail::ComplexRow;
using detail::accumulate;
using detail::add_complex_equation;

// Section basis of a rank-`rows` cocycle; each solution is unpacked per chart.
std::vector<std::vector<LMat>> solve_sections(const Cocycle& e, const Layout& lay) {
  const Atlas& a = e.atlas();
  SparseSystem sys(lay.size());
  std::size_t r = static_cast<std::size_t>(e.rank());
  const GaussianRational iu = GaussianRational::imag_unit();
  for (Dir d : a.pairs()) {
    auto [i, j] = d;
    const MonomialMap& back = a.transition(j, i).map;
    const LMat& g = e.target(d);
    std::map<std::pair<std::size_t, int>, ComplexRow> eqs;
    for (std::size_t row = 0; row < r; ++row)
      for (int k = lay.lo(j); k <= lay.hi(); ++k) {
        accumulate(eqs[{row, k}], lay.index(j, row, k, 0), GaussianRational(-1));
        accumulate(eqs[{row, k}], lay.index(j, row, k, 1), -iu);
      }
    for (int k = lay.lo(i); k <= lay.hi(); ++k) {
      GaussianRational kappa = back.c.pow(k);
      GaussianRational cre = back.bar ? kappa.conj() : kappa;
      GaussianRational cim = back.bar ? -(iu * kappa.conj()) : iu * kappa;
      int ek = back.e * k;
      for (std::size_t row = 0; row < r; ++row)
        for (std::size_t col = 0; col < r; ++col)
          for (const auto& [p, gc] : g(row, col).terms()) {
            ComplexRow& eq = eqs[{row, ek + p}];
            accumulate(eq, lay.index(i, col, k, 0), gc * cre);
            accumulate(eq, lay.index(i, col, k, 1), gc * cim);
          }
    }
    for (const auto& [key, row] : eqs) add_complex_equation(sys, row);
  }
  std::vector<std::vector<LMat>> out;
  for (const QVec& v : sys.nullspace()) out.push_back(lay.unpack(v));
  return out;
}

LMat reshape(const LMat& col, std::size_t n) {
  LMat m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = col(r * n + c, 0);
  return m;
}

LMat flatten(const LMat& m) {
  LMat col(m.rows() * m.cols(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) col(r * m.cols() + c, 0) = m(r, c);
  return col;
}

bool regular_on(const Chart& ch, const LMat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && !ch.regular(m(r, c).valuation())) return false;
  return true;
}

}  // namespace

int auto_bound(const Cocycle& e) {
  int mx = 0;
  for (const auto& t : e.atlas().overlaps) {
    const LMat& g = e.target({t.from, t.to});
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c)
        if (!g(r, c).is_zero()) mx = std::max({mx, std::abs(g(r, c).valuation()), std::abs(g(r, c).max_exponent())});
  }
  return e.rank() * mx + 1;
}

std::vector<SectionFamily> global_sections(const Cocycle& e, int bound) {
  require_valid(e);
  int need = auto_bound(e);
  if (bound == 0) bound = need;
  if (bound < need)
    fail(ErrorCode::BoundTooSmall, "bound " + std::to_string(bound) + " is below the auto-bound " + std::to_string(need));
  Layout lay(e.atlas(), static_cast<std::size_t>(e.rank()), bound);
  std::vector<SectionFamily> out;
  for (auto& cols : solve_sections(e, lay)) out.push_back(SectionFamily{e.name(), std::move(cols)});
  return out;
}

bool glues(const Cocycle& e, const SectionFamily& s) {
  const Atlas& a = e.atlas();
  if (s.per_chart.size() != a.charts.size()) return false;
  for (int i = 0; i < a.num_charts(); ++i) {
    const LMat& m = s.per_chart[i];
    if (m.rows() != static_cast<std::size_t>(e.rank()) || m.cols() != 1 || !regular_on(a.charts[i], m)) return false;
  }
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    if (s.per_chart[t.to] != e.target(d) * to_target(a, d, s.per_chart[t.from])) return false;
  }
  return true;
}

bool glues_endomorphism(const Cocycle& e, const SectionFamily& phi) {
  const Atlas& a = e.atlas();
  std::size_t r = static_cast<std::size_t>(e.rank());
  if (phi.per_chart.size() != a.charts.size()) return false;
  for (int i = 0; i < a.num_charts(); ++i) {
    const LMat& m = phi.per_chart[i];
    if (m.rows() != r || m.cols() != r || !regular_on(a.charts[i], m)) return false;
  }
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    const LMat& g = e.target(d);
    if (phi.per_chart[t.to] * g != g * to_target(a, d, phi.per_chart[t.from])) return false;
  }
  return true;
}

SectionFamily identity_section(const Cocycle& e) {
  SectionFamily s{"end(" + e.name() + ")", {}};
  for (int i = 0; i < e.atlas().num_charts(); ++i) s.per_chart.push_back(LMat::identity(static_cast<std::size_t>(e.rank())));
  return s;
}

SectionFamily compose(const SectionFamily& a, const SectionFamily& b) {
  if (a.per_chart.size() != b.per_chart.size()) fail(ErrorCode::ShapeMismatch, "families on different atlases");
  SectionFamily out{a.bundle, {}};
  for (std::size_t i = 0; i < a.per_chart.size(); ++i) out.per_chart.push_back(a.per_chart[i] * b.per_chart[i]);
  return out;
}

SectionFamily linear_combination(const std::vector<SectionFamily>& basis, const QVec& x) {
  if (basis.empty() || x.size() != basis.size()) fail(ErrorCode::ShapeMismatch, "coefficient count mismatch");
  SectionFamily out{basis.front().bundle, {}};
  for (std::size_t i = 0; i < basis.front().per_chart.size(); ++i) {
    const LMat& m0 = basis.front().per_chart[i];
    LMat acc(m0.rows(), m0.cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (sgn(x[k]) != 0) acc = acc + basis[k].per_chart[i].scaled(LaurentPoly(GaussianRational(x[k])));
    out.per_chart.push_back(std::move(acc));
  }
  return out;
}

QVec EndAlgebra::product(const QVec& x, const QVec& y) const {
  std::size_t n = basis.size();
  QVec out(n, Rational(0));
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (sgn(y[b]) == 0) continue;
      Rational s = x[a] * y[b];
      for (std::size_t k = 0; k < n; ++k) out[k] += s * structure_constants[a][b][k];
    }
  }
  return out;
}

QMat EndAlgebra::left_multiplication(const QVec& x) const {
  std::size_t n = basis.size();
  QMat m(n, n);
  for (std::size_t b = 0; b < n; ++b) {
    QVec unit(n, Rational(0));
    unit[b] = 1;
    QVec col = product(x, unit);
    for (std::size_t k = 0; k < n; ++k) m(k, b) = col[k];
  }
  return m;
}

EndAlgebra end_algebra(const Cocycle& e, int bound) {
  require_valid(e);
  if (!e.atlas().compact) fail(ErrorCode::NotCompact, "end_algebra needs a compact atlas");
  Cocycle h = hom(e, e);
  int need = auto_bound(h);
  if (bound == 0) bound = need;
  if (bound < need)
    fail(ErrorCode::BoundTooSmall, "bound " + std::to_string(bound) + " is below the auto-bound " + std::to_string(need));
  std::size_t r = static_cast<std::size_t>(e.rank());
  Layout lay(e.atlas(), r * r, bound);
  auto raw = solve_sections(h, lay);

  auto pack = [&](const SectionFamily& s) {
    std::vector<LMat> cols;
    for (const auto& m : s.per_chart) cols.push_back(flatten(m));
    auto v = lay.pack(cols);
    if (!v) fail(ErrorCode::BoundTooSmall, "endomorphism leaves the exponent window");
    return *v;
  };
  auto to_rows = [](const QVec& v) {
    SparseSystem::Row row;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (sgn(v[k]) != 0) row[k] = v[k];
    return row;
  };

  EndAlgebra alg;
  std::vector<QVec> vecs;
  SparseSystem span(lay.size());
  auto admit = [&](SectionFamily s) {
    QVec v = pack(s);
    std::size_t before = span.rank();
    span.add_equation(to_rows(v));
    if (span.rank() == before) return;
    vecs.push_back(std::move(v));
    alg.basis.push_back(std::move(s));
  };
  admit(identity_section(e));
  for (auto& cols : raw) {
    SectionFamily s{"end(" + e.name() + ")", {}};
    for (const auto& c : cols) s.per_chart.push_back(reshape(c, r));
    admit(std::move(s));
  }
  if (alg.basis.size() != raw.size()) fail(ErrorCode::InvalidBundle, "identity is not a global endomorphism");

  // Coordinates are read off an invertible set of pivot positions.
  std::size_t n = alg.basis.size();
  std::vector<std::size_t> pivots;
  {
    SparseSystem probe(n);
    for (std::size_t v = 0; v < lay.size() && pivots.size() < n; ++v) {
      SparseSystem::Row row;
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(vecs[k][v]) != 0) row[k] = vecs[k][v];
      if (row.empty()) continue;
      std::size_t before = probe.rank();
      probe.add_equation(row);
      if (probe.rank() > before) pivots.push_back(v);
    }
  }
  auto coordinates = [&](const QVec& w) {
    SparseSystem sys(n);
    for (std::size_t v : pivots) {
      SparseSystem::Row row;
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(vecs[k][v]) != 0) row[k] = vecs[k][v];
      sys.add_equation(row, w[v]);
    }
    QVec c = *sys.particular();
    QVec check(w.size(), Rational(0));
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(c[k]) != 0)
        for (std::size_t v = 0; v < w.size(); ++v) check[v] += c[k] * vecs[k][v];
    if (check != w) fail(ErrorCode::InvalidBundle, "endomorphism space is not closed under composition");
    return c;
  };
  alg.structure_constants.assign(n, std::vector<QVec>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) alg.structure_constants[a][b] = coordinates(pack(compose(alg.basis[a], alg.basis[b])));
  return alg;
}

// ---------------------------------------------------------------------------
// Remak decomposition

namespace {

using CLD = std::complex<long double>;

std::vector<CLD> numeric_roots(const QPoly& monic) {
  int n = monic.degree();
  std::vector<CLD> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = CLD(static_cast<long double>(monic.coeff(k).get_d()), 0);
  std::vector<CLD> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::pow(CLD(0.4L, 0.9L), k);
  for (int it = 0; it < 2000; ++it) {
    long double delta = 0;
    for (int k = 0; k < n; ++k) {
      CLD num = c[n];
      for (int d = n - 1; d >= 0; --d) num = num * z[k] + c[d];
      CLD den = 1;
      for (int m = 0; m < n; ++m)
        if (m != k) den *= z[k] - z[m];
      if (std::abs(den) == 0) den = CLD(1e-12L, 0);
      CLD step = num / den;
      z[k] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-18L) break;
  }
  return z;
}

Rational rationalize(long double x) {
  long double v = x;
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 40; ++it) {
    long double a = std::floor(v);
    mpz_class ai(static_cast<double>(a));
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational q(h1, k1);
    q.canonicalize();
    if (std::fabs(static_cast<long double>(q.get_d()) - x) < 1e-12L || k1 > 100000000) break;
    long double frac = v - a;
    if (frac < 1e-15L) break;
    v = 1 / frac;
  }
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

bool divides(const QPoly& f, const QPoly& m, QPoly& quot) {
  QPoly r;
  divmod(m, f, quot, r);
  return r.is_zero();
}

// Coprime factorization m = p * q with both factors nonconstant.
std::optional<std::pair<QPoly, QPoly>> coprime_split(const QPoly& m) {
  QPoly mm = m.monic();
  if (mm.degree() < 2) return std::nullopt;
  for (const CLD& root : numeric_roots(mm)) {
    QPoly f;
    if (std::fabs(root.imag()) < 1e-9L) {
      f = QPoly(QVec{-rationalize(root.real()), Rational(1)});
    } else {
      Rational s = rationalize(2 * root.real());
      Rational p = rationalize(std::norm(root));
      f = QPoly(QVec{p, -s, Rational(1)});
    }
    QPoly rest = mm, quot, power = QPoly::constant(1);
    while (divides(f, rest, quot)) {
      rest = quot;
      power = power * f;
    }
    if (power.degree() >= 1 && rest.degree() >= 1) return std::make_pair(power, rest);
  }
  return std::nullopt;
}

QVec eval_in_algebra(const EndAlgebra& alg, const QPoly& p, const QVec& x) {
  std::size_t n = alg.basis.size();
  QVec acc(n, Rational(0));
  for (int k = p.degree(); k >= 0; --k) {
    acc = alg.product(acc, x);
    acc[0] += p.coeff(static_cast<std::size_t>(k));
  }
  return acc;
}

std::optional<QVec> idempotent_from(const EndAlgebra& alg, const QVec& x) {
  QPoly m = minimal_polynomial(alg.left_multiplication(x));
  auto split = coprime_split(m);
  if (!split) return std::nullopt;
  QPoly s, t;
  QPoly g = xgcd(split->first, split->second, s, t);
  if (g.degree() != 0) return std::nullopt;
  QPoly quot, rem;
  divmod(s * split->first, m.monic(), quot, rem);
  QVec e = eval_in_algebra(alg, rem, x);
  if (alg.product(e, e) != e) return std::nullopt;
  return e;
}

// Exact division in Q(i)[z, 1/z]; nullopt if b does not divide a.
std::optional<LaurentPoly> divide_exact(LaurentPoly a, const LaurentPoly& b) {
  if (a.is_zero()) return a;
  LaurentPoly q;
  int bv = b.valuation();
  GaussianRational lead_inv = b.coeff(bv).inverse();
  int guard = 0;
  while (!a.is_zero()) {
    int av = a.valuation();
    if (av + (b.max_exponent() - bv) > a.max_exponent() || ++guard > 4096) return std::nullopt;
    LaurentPoly term = LaurentPoly::monomial(a.coeff(av) * lead_inv, av - bv);
    q += term;
    a -= term * b;
  }
  return q;
}

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  a = a * LaurentPoly::z(-a.valuation());
  b = b * LaurentPoly::z(-b.valuation());
  while (!b.is_zero()) {
    LaurentPoly r = a;
    GaussianRational lead_inv = b.coeff(b.max_exponent()).inverse();
    while (!r.is_zero() && r.max_exponent() >= b.max_exponent()) {
      LaurentPoly term = LaurentPoly::monomial(r.coeff(r.max_exponent()) * lead_inv, r.max_exponent() - b.max_exponent());
      r -= term * b;
    }
    a = b;
    b = r;
  }
  return a * LaurentPoly(a.coeff(a.max_exponent()).inverse());
}

LMat primitive_column(const Chart& ch, LMat col) {
  LaurentPoly g;
  int minval = 0;
  bool first = true;
  for (std::size_t r = 0; r < col.rows(); ++r) {
    if (col(r, 0).is_zero()) continue;
    g = poly_gcd(g, col(r, 0));
    minval = first ? col(r, 0).valuation() : std::min(minval, col(r, 0).valuation());
    first = false;
  }
  if (first) return col;
  if (ch.kind == DomainKind::Disc) g = g * LaurentPoly::z(minval);
  for (std::size_t r = 0; r < col.rows(); ++r) {
    auto q = divide_exact(col(r, 0), g);
    if (!q) return col;
    col(r, 0) = *q;
  }
  return col;
}

bool unit_on(const Chart& ch, const LaurentPoly& d) {
  return d.is_monomial() && (ch.kind == DomainKind::Annulus || d.valuation() == 0);
}

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            const std::function<bool(const std::vector<std::size_t>&)>& visit, bool& done) {
  if (done) return;
  if (cur.size() == k) {
    done = visit(cur);
    return;
  }
  for (std::size_t i = start; i < n && !done; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, visit, done);
    cur.pop_back();
  }
}

// Frame adapted to image(e) followed by image(1 - e).
std::optional<LMat> adapted_frame(const Chart& ch, const LMat& e, std::size_t k) {
  std::size_t r = e.rows();
  LMat f = LMat::identity(r) - e;
  std::vector<LMat> ecols, fcols;
  for (std::size_t c = 0; c < r; ++c) {
    LMat a = e.block(0, c, r, 1), b = f.block(0, c, r, 1);
    ecols.push_back(k == 1 ? primitive_column(ch, a) : a);
    fcols.push_back(r - k == 1 ? primitive_column(ch, b) : b);
  }
  std::optional<LMat> found;
  bool done = false;
  std::vector<std::size_t> ce;
  choose(r, k, 0, ce, [&](const std::vector<std::size_t>& sel_e) {
    bool inner_done = false;
    std::vector<std::size_t> cf;
    choose(r, r - k, 0, cf, [&](const std::vector<std::size_t>& sel_f) {
      LMat p(r, r);
      for (std::size_t i = 0; i < k; ++i) p.set_block(0, i, ecols[sel_e[i]]);
      for (std::size_t i = 0; i < r - k; ++i) p.set_block(0, k + i, fcols[sel_f[i]]);
      if (!unit_on(ch, p.det())) return false;
      found = p;
      return true;
    }, inner_done);
    return inner_done;
  }, done);
  return found;
}

struct Split {
  std::vector<LMat> frames;
  std::size_t k;
};

std::optional<Split> split_along(const Cocycle& e, const SectionFamily& idem) {
  const Atlas& a = e.atlas();
  LaurentPoly tr = idem.per_chart.front().trace();
  if (!tr.is_constant() || !tr.coeff(0).is_real() || tr.coeff(0).re().get_den() != 1) return std::nullopt;
  long k = tr.coeff(0).re().get_num().get_si();
  if (k <= 0 || k >= e.rank()) return std::nullopt;
  Split s{{}, static_cast<std::size_t>(k)};
  for (int i = 0; i < a.num_charts(); ++i) {
    auto p = adapted_frame(a.charts[i], idem.per_chart[i], s.k);
    if (!p) return std::nullopt;
    s.frames.push_back(*p);
  }
  return s;
}

LMat block_diag(const LMat& a, const LMat& b) { return klein::direct_sum(a, b); }

RemakResult decompose(const Cocycle& e, int trials, std::mt19937_64& rng, std::uint64_t seed) {
  RemakResult res;
  res.trials = trials;
  res.seed = seed;
  std::size_t r = static_cast<std::size_t>(e.rank());
  for (int i = 0; i < e.atlas().num_charts(); ++i) res.frames.push_back(LMat::identity(r));
  res.factors.push_back(e);
  if (r == 1) return res;
  EndAlgebra alg = end_algebra(e);
  std::size_t n = alg.basis.size();
  std::vector<QVec> candidates;
  for (std::size_t b = 1; b < n; ++b) {
    QVec x(n, Rational(0));
    x[b] = 1;
    candidates.push_back(x);
  }
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < trials; ++t) {
    QVec x(n, Rational(0));
    for (auto& v : x) v = coef(rng);
    candidates.push_back(x);
  }
  for (const QVec& x : candidates) {
    auto idem = idempotent_from(alg, x);
    if (!idem) continue;
    SectionFamily ef = alg.element(*idem);
    auto sp = split_along(e, ef);
    if (!sp) continue;
    Cocycle adapted = frame_change(e, sp->frames);
    std::size_t k = sp->k;
    Cocycle a(e.atlas_ptr(), static_cast<int>(k), e.name() + ".a");
    Cocycle b(e.atlas_ptr(), static_cast<int>(r - k), e.name() + ".b");
    bool diagonal = true;
    for (const auto& t : e.atlas().overlaps) {
      Dir d{t.from, t.to};
      const LMat& g = adapted.target(d);
      if (!g.block(0, k, k, r - k).is_zero() || !g.block(k, 0, r - k, k).is_zero()) diagonal = false;
      a.set_target(d, g.block(0, 0, k, k));
      b.set_target(d, g.block(k, k, r - k, r - k));
    }
    if (!diagonal) continue;
    RemakResult ra = decompose(a, trials, rng, seed);
    RemakResult rb = decompose(b, trials, rng, seed);
    res.factors = ra.factors;
    res.factors.insert(res.factors.end(), rb.factors.begin(), rb.factors.end());
    res.frames.clear();
    for (int i = 0; i < e.atlas().num_charts(); ++i)
      res.frames.push_back(sp->frames[i] * block_diag(ra.frames[i], rb.frames[i]));
    res.idempotents.push_back(ef);
    res.idempotents.insert(res.idempotents.end(), ra.idempotents.begin(), ra.idempotents.end());
    res.idempotents.insert(res.idempotents.end(), rb.idempotents.begin(), rb.idempotents.end());
    res.split = true;
    return res;
  }
  return res;
}

}  // namespace

Cocycle direct_sum_all(const std::vector<Cocycle>& parts) {
  if (parts.empty()) fail(ErrorCode::ShapeMismatch, "empty direct sum");
  Cocycle acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = direct_sum(acc, parts[k]);
  return acc;
}

RemakResult remak_decompose(const Cocycle& e, int trials, std::uint64_t seed) {
  require_valid(e);
  std::mt19937_64 rng(seed);
  RemakResult res = decompose(e, trials, rng, seed);
  for (std::size_t k = 0; k < res.factors.size(); ++k)
    res.factors[k].set_name(res.factors.size() == 1 ? e.name() : e.name() + "[" + std::to_string(k) + "]");
  return res;
}

std::vector<LaurentPoly> char_poly(const LMat& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorCode::ShapeMismatch, "characteristic polynomial of a non-square matrix");
  std::vector<LaurentPoly> c(n + 1);
  c[n] = LaurentPoly(1);
  LMat mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + LMat::scalar(n, c[n - k + 1]);
    LaurentPoly tr = (m * mk).trace();
    c[n - k] = -(tr * LaurentPoly(GaussianRational(Rational(1, static_cast<long>(k)))));
  }
  return c;
}

LambdaNilpotentReport check_lambda_nilpotent(const Cocycle& e) {
  EndAlgebra alg = end_algebra(e);
  LambdaNilpotentReport rep;
  std::size_t r = static_cast<std::size_t>(e.rank());
  const Atlas& a = e.atlas();
  for (std::size_t b = 0; b < alg.basis.size(); ++b) {
    LambdaEntry entry;
    entry.index = b;
    entry.ok = true;
    std::optional<GaussianRational> lambda;
    for (int i = 0; i < a.num_charts() && entry.ok; ++i) {
      auto cp = char_poly(alg.basis[b].per_chart[i]);
      bool constant = std::all_of(cp.begin(), cp.end(), [](const LaurentPoly& p) { return p.is_constant() || p.is_zero(); });
      if (!constant) {
        entry.ok = false;
        entry.witness = "non-constant characteristic polynomial on " + a.charts[i].id;
        break;
      }
      GaussianRational lam = -cp[r - 1].coeff(0) / GaussianRational(static_cast<long>(r));
      // (t - lam)^r coefficients
      std::vector<GaussianRational> want(r + 1, GaussianRational(0));
      want[0] = 1;
      for (std::size_t d = 0; d < r; ++d)
        for (std::size_t j = d + 2; j-- > 0;) {
          GaussianRational shifted = j > 0 ? want[j - 1] : GaussianRational(0);
          want[j] = shifted - lam * want[j];
        }
      for (std::size_t j = 0; j <= r; ++j)
        if (cp[j].coeff(0) != want[j]) {
          std::string poly;
          for (std::size_t q = r + 1; q-- > 0;) poly += " " + cp[q].coeff(0).str();
          fail(ErrorCode::Decomposable, "endomorphism " + std::to_string(b) + " on " + a.charts[i].id +
                                            " has distinct eigenvalues; characteristic coefficients" + poly);
        }
      if (lambda && *lambda != lam && lambda->conj() != lam) {
        entry.ok = false;
        entry.witness = "eigenvalue differs between charts";
      }
      lambda = lam;
      if (!lam.is_real()) {
        entry.ok = false;
        entry.witness = "eigenvalue " + lam.str() + " is not real";
      }
    }
    if (lambda) entry.lambda = *lambda;
    if (!entry.ok) rep.ok = false;
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace klein
