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

#include "klein/smooth.hpp"

namespace klein {

SMat SMat::identity(std::size_t n) { return scalar(n, SmoothFn(1)); }

SMat SMat::scalar(std::size_t n, const SmoothFn& f) {
  SMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f;
  return m;
}

SMat SMat::from_laurent(const LMat& l) {
  SMat m(l.rows(), l.cols());
  for (std::size_t r = 0; r < l.rows(); ++r)
    for (std::size_t c = 0; c < l.cols(); ++c) m(r, c) = SmoothFn::from_half(HalfFn{l(r, c), Arg::Z});
  return m;
}

bool SMat::is_zero() const {
  for (const auto& f : a_)
    if (!f.is_zero()) return false;
  return true;
}

std::optional<LMat> SMat::to_laurent() const {
  LMat m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(r, c).to_laurent(m(r, c))) return std::nullopt;
  return m;
}

namespace {

template <typename F>
SMat map_entries(const SMat& m, F f) {
  SMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = f(m(r, c));
  return out;
}

SmoothFn laplace_det(const SMat& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (row == m.rows()) return SmoothFn(1);
  SmoothFn acc;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    if (m(row, c).is_zero()) continue;
    cols.erase(cols.begin() + static_cast<long>(k));
    SmoothFn minor = laplace_det(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<long>(k), c);
    SmoothFn term = m(row, c) * minor;
    if (k % 2 == 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

}  // namespace

SMat SMat::conj() const {
  return map_entries(*this, [](const SmoothFn& f) { return f.conj(); });
}

SMat SMat::dagger() const {
  SMat out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
  return out;
}

SMat SMat::del_z() const {
  return map_entries(*this, [](const SmoothFn& f) { return f.del_z(); });
}

SMat SMat::del_zbar() const {
  return map_entries(*this, [](const SmoothFn& f) { return f.del_zbar(); });
}

SMat SMat::transported(const MonomialMap& t) const {
  return map_entries(*this, [&](const SmoothFn& f) { return f.transported(t); });
}

SMat SMat::scaled(const SmoothFn& s) const {
  return map_entries(*this, [&](const SmoothFn& f) { return f * s; });
}

SmoothFn SMat::det() const {
  if (rows_ != cols_) fail(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < cols_; ++c) cols.push_back(c);
  return laplace_det(*this, cols, 0);
}

SMat SMat::inverse() const {
  SmoothFn d = det();
  if (d.is_zero()) fail(ErrorCode::DivZero, "singular smooth matrix");
  std::size_t n = rows_;
  if (n == 1) {
    SMat out(1, 1);
    out(0, 0) = d.inverse();
    return out;
  }
  SmoothFn dinv = d.inverse();
  SMat out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      SMat minor(n - 1, n - 1);
      for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj++) = (*this)(i, j);
        }
        ++mi;
      }
      SmoothFn cof = minor.det() * dinv;
      out(c, r) = (r + c) % 2 == 0 ? cof : -cof;
    }
  return out;
}

SMat SMat::operator-() const {
  return map_entries(*this, [](const SmoothFn& f) { return -f; });
}

SMat operator+(const SMat& a, const SMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::ShapeMismatch, "matrix sum shape mismatch");
  SMat out = a;
  for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] += b.a_[k];
  return out;
}

SMat operator-(const SMat& a, const SMat& b) { return a + (-b); }

SMat operator*(const SMat& a, const SMat& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  SMat out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

bool operator==(const SMat& a, const SMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.a_.size(); ++k)
    if (a.a_[k] != b.a_[k]) return false;
  return true;
}

std::string SMat::str() const {
  std::string s = "[ ";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r > 0) s += " ; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c > 0) s += ", ";
      s += (*this)(r, c).str();
    }
  }
  return s + " ]";
}

// ---------------------------------------------------------------------------

namespace {

SmoothFn smooth_jacobian(const Atlas& a, Dir d) {
  return SmoothFn::from_half(HalfFn{jacobian(a, d), Arg::Z});
}

SmoothFn power(const SmoothFn& f, int n) {
  SmoothFn out(1);
  for (int k = 0; k < n; ++k) out *= f;
  return out;
}

const GaussianRational kHalfI(Rational(0), Rational(1, 2));

}  // namespace

SMat transport_form(const Atlas& a, const Cocycle* e, Dir d, const SmoothForm& f) {
  const Transition& t = a.transition(d.first, d.second);
  SMat c = f.per_chart[d.first].transported(a.transition(d.second, d.first).map);
  SmoothFn j = smooth_jacobian(a, d);
  SmoothFn factor = power(j, f.p) * power(j.conj(), f.q);
  if (f.twisted && t.flag == Flag::AntiHolo) factor = -factor;
  c = c.scaled(factor);
  if (f.values != FormValues::Scalar) {
    if (!e) fail(ErrorCode::ShapeMismatch, "bundle-valued form needs its bundle");
    const LMat& g = e->target(d);
    c = SMat::from_laurent(g) * c;
    if (f.values == FormValues::Endomorphism) c = c * SMat::from_laurent(g.inverse());
  }
  return c;
}

ValidationReport check_form_gluing(const Atlas& a, const SmoothForm& f, const Cocycle* e) {
  ValidationReport rep;
  if (f.per_chart.size() != a.charts.size()) {
    rep.add("form needs a coefficient on every chart");
    return rep;
  }
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    if (transport_form(a, e, d, f) != f.per_chart[t.to]) rep.add("form does not glue on " + a.dir_name(d));
  }
  return rep;
}

SmoothForm conj_form(const SmoothForm& f) {
  SmoothForm out = f;
  out.p = f.q;
  out.q = f.p;
  for (auto& c : out.per_chart) {
    c = c.conj();
    if (f.p == 1 && f.q == 1) c = -c;
  }
  return out;
}

SmoothForm dbar(const SmoothForm& f) {
  SmoothForm out = f;
  out.q = f.q + 1;
  for (auto& c : out.per_chart) {
    if (f.q >= 1)
      c = SMat(c.rows(), c.cols());
    else
      c = f.p == 1 ? -c.del_zbar() : c.del_zbar();
  }
  return out;
}

SmoothForm dolbeault(const Cocycle& e, const std::vector<SMat>& sections) {
  SmoothForm s{0, 0, FormValues::Section, false, sections};
  ValidationReport rep = check_form_gluing(e.atlas(), s, &e);
  if (!rep.ok) fail(ErrorCode::BadGluing, rep.violations.front());
  SmoothForm out = dbar(s);
  rep = check_form_gluing(e.atlas(), out, &e);
  if (!rep.ok) fail(ErrorCode::BadGluing, "dolbeault output: " + rep.violations.front());
  return out;
}

ValidationReport check_metric(const Atlas& a, const DHermitianMetric& h) {
  ValidationReport rep;
  if (h.per_chart.size() != a.charts.size()) {
    rep.add("metric needs a value on every chart");
    return rep;
  }
  for (int i = 0; i < a.num_charts(); ++i) {
    const SMat& m = h.per_chart[i];
    if (m.rows() != 1 || m.cols() != 1) {
      rep.add("metric on " + a.charts[i].id + ": not a scalar");
      return rep;
    }
    if (m(0, 0).is_zero()) rep.add("metric on " + a.charts[i].id + ": vanishes");
    if (m(0, 0).conj() != m(0, 0)) rep.add("metric on " + a.charts[i].id + ": not real");
  }
  SmoothForm f{1, 1, FormValues::Scalar, false, h.per_chart};
  rep.merge(check_form_gluing(a, f));
  return rep;
}

MetricForms validate_metric(const Atlas& a, const DHermitianMetric& h) {
  ValidationReport rep = check_metric(a, h);
  if (!rep.ok) fail(ErrorCode::BadMetric, rep.violations.front());
  MetricForms out;
  out.fundamental = SmoothForm{1, 1, FormValues::Scalar, true, {}};
  for (const auto& m : h.per_chart) out.fundamental.per_chart.push_back(m.scaled(SmoothFn(kHalfI)));
  rep = check_form_gluing(a, out.fundamental);
  if (!rep.ok) fail(ErrorCode::BadMetric, "fundamental form: " + rep.violations.front());
  SmoothForm one{0, 0, FormValues::Scalar, false, {}};
  for (int i = 0; i < a.num_charts(); ++i) one.per_chart.push_back(SMat::identity(1));
  out.volume = hodge_star(a, one, h);
  return out;
}

ValidationReport check_bundle_metric(const Cocycle& e, const DHermitianMetric& h) {
  ValidationReport rep;
  const Atlas& a = e.atlas();
  std::size_t r = static_cast<std::size_t>(e.rank());
  if (h.per_chart.size() != a.charts.size()) {
    rep.add("metric needs a value on every chart");
    return rep;
  }
  for (int i = 0; i < a.num_charts(); ++i) {
    const SMat& m = h.per_chart[i];
    if (m.rows() != r || m.cols() != r) {
      rep.add("metric on " + a.charts[i].id + ": wrong shape");
      return rep;
    }
    if (m.dagger() != m) rep.add("metric on " + a.charts[i].id + ": not hermitian");
    if (m.det().is_zero()) rep.add("metric on " + a.charts[i].id + ": degenerate");
  }
  if (!rep.ok) return rep;
  for (const auto& t : a.overlaps) {
    Dir d{t.from, t.to};
    SMat ginv = SMat::from_laurent(e.target(d).inverse());
    SMat want = ginv.dagger() * h.per_chart[t.from].transported(a.transition(t.to, t.from).map) * ginv;
    if (want != h.per_chart[t.to]) rep.add("metric does not glue on " + a.dir_name(d));
  }
  return rep;
}

SmoothForm hodge_star(const Atlas& a, const SmoothForm& psi, const DHermitianMetric& h) {
  ValidationReport rep = check_metric(a, h);
  if (!rep.ok) fail(ErrorCode::BadMetric, rep.violations.front());
  if (psi.values != FormValues::Scalar) fail(ErrorCode::ShapeMismatch, "star acts on scalar forms");
  if (psi.p > 1 || psi.q > 1) fail(ErrorCode::ShapeMismatch, "star needs a bidegree with p, q <= 1");
  rep = check_form_gluing(a, psi);
  if (!rep.ok) fail(ErrorCode::BadGluing, rep.violations.front());
  SmoothForm out{1 - psi.q, 1 - psi.p, FormValues::Scalar, !psi.twisted, {}};
  for (int i = 0; i < a.num_charts(); ++i) {
    const SmoothFn& hi = h.per_chart[i](0, 0);
    SmoothFn factor = SmoothFn(kHalfI) * hi * power(SmoothFn(2) / hi, psi.p + psi.q);
    if (psi.q == 1) factor = -factor;
    out.per_chart.push_back(psi.per_chart[i].scaled(factor));
  }
  rep = check_form_gluing(a, out);
  if (!rep.ok) fail(ErrorCode::BadMetric, "star output: " + rep.violations.front());
  return out;
}

ValidationReport check_connection(const SmoothConnection& d) {
  ValidationReport rep;
  const Cocycle& e = d.bundle;
  const Atlas& a = e.atlas();
  std::size_t r = static_cast<std::size_t>(e.rank());
  if (d.a.size() != a.charts.size() || d.b.size() != a.charts.size()) {
    rep.add("connection needs forms on every chart");
    return rep;
  }
  for (int i = 0; i < a.num_charts(); ++i) {
    if (d.a[i].rows() != r || d.a[i].cols() != r || d.b[i].rows() != r || d.b[i].cols() != r) {
      rep.add("connection on " + a.charts[i].id + ": wrong shape");
      return rep;
    }
    if (d.compatible && !d.b[i].is_zero()) rep.add("connection on " + a.charts[i].id + ": (0,1) part is not zero");
  }
  for (const auto& t : a.overlaps) {
    Dir dir{t.from, t.to};
    const LMat& g = e.target(dir);
    SMat gs = SMat::from_laurent(g), gi = SMat::from_laurent(g.inverse());
    SMat theta = SMat::from_laurent(g.derive() * g.inverse());
    const MonomialMap& back = a.transition(t.to, t.from).map;
    SmoothFn j = smooth_jacobian(a, dir);
    SMat wa = (gs * d.a[t.from].transported(back) * gi).scaled(j) - theta;
    SMat wb = (gs * d.b[t.from].transported(back) * gi).scaled(j.conj());
    if (wa != d.a[t.to]) rep.add("connection (1,0) part does not transform on " + a.dir_name(dir));
    if (wb != d.b[t.to]) rep.add("connection (0,1) part does not transform on " + a.dir_name(dir));
  }
  return rep;
}

CurvatureForms curvature(const SmoothConnection& d) {
  ValidationReport rep = check_connection(d);
  if (!rep.ok) fail(ErrorCode::BadConnection, rep.violations.front());
  const Atlas& a = d.bundle.atlas();
  std::size_t r = static_cast<std::size_t>(d.bundle.rank());
  CurvatureForms out;
  out.f20 = SmoothForm{2, 0, FormValues::Endomorphism, false, {}};
  out.f11 = SmoothForm{1, 1, FormValues::Endomorphism, false, {}};
  out.f02 = SmoothForm{0, 2, FormValues::Endomorphism, false, {}};
  for (int i = 0; i < a.num_charts(); ++i) {
    const SMat& A = d.a[i];
    const SMat& B = d.b[i];
    out.f11.per_chart.push_back(B.del_z() - A.del_zbar() + A * B - B * A);
    out.f20.per_chart.push_back(SMat(r, r));
    out.f02.per_chart.push_back(SMat(r, r));
  }
  rep = check_form_gluing(a, out.f11, &d.bundle);
  if (!rep.ok) fail(ErrorCode::BadConnection, "curvature: " + rep.violations.front());
  if (d.compatible) {
    for (const auto& m : out.f02.per_chart)
      if (!m.is_zero()) fail(ErrorCode::BadConnection, "curvature has a (0,2) part");
    for (const auto& m : dbar(out.f11).per_chart)
      if (!m.is_zero()) fail(ErrorCode::BadConnection, "curvature is not dbar-closed");
  }
  return out;
}

SmoothConnection chern_connection(const Cocycle& e, const DHermitianMetric& h) {
  require_valid(e);
  ValidationReport rep = check_bundle_metric(e, h);
  if (!rep.ok) fail(ErrorCode::BadMetric, rep.violations.front());
  SmoothConnection d{e, {}, {}, true};
  std::size_t r = static_cast<std::size_t>(e.rank());
  for (const auto& m : h.per_chart) {
    d.a.push_back(m.inverse() * m.del_z());
    d.b.push_back(SMat(r, r));
  }
  rep = check_connection(d);
  if (!rep.ok) fail(ErrorCode::BadMetric, "Chern connection: " + rep.violations.front());
  return d;
}

SmoothConnection gauge(const SmoothConnection& d, const std::vector<LMat>& frames) {
  SmoothConnection out{frame_change(d.bundle, frames), {}, {}, d.compatible};
  for (std::size_t i = 0; i < frames.size(); ++i) {
    SMat p = SMat::from_laurent(frames[i]);
    SMat pi = SMat::from_laurent(frames[i].inverse());
    out.a.push_back(pi * d.a[i] * p + pi * SMat::from_laurent(frames[i].derive()));
    out.b.push_back(pi * d.b[i] * p);
  }
  return out;
}

DHermitianMetric gauge(const DHermitianMetric& h, const std::vector<LMat>& frames) {
  DHermitianMetric out;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    SMat p = SMat::from_laurent(frames[i]);
    out.per_chart.push_back(p.dagger() * h.per_chart[i] * p);
  }
  return out;
}

CompareReport cech_dolbeault_compare(const SmoothConnection& d) {
  const Cocycle& e = d.bundle;
  const Atlas& a = e.atlas();
  if (!d.compatible) fail(ErrorCode::Incompatible, "connection is not compatible with the holomorphic structure");
  for (const auto& m : d.b)
    if (!m.is_zero()) fail(ErrorCode::Incompatible, "connection has a (0,1) part");
  ValidationReport rep = check_connection(d);
  if (!rep.ok) fail(ErrorCode::Incompatible, rep.violations.front());
  CompareReport out;
  out.u.degree = 1;
  out.u.valued_in = "Omega1(end(" + e.name() + "))";
  out.dbar_closed = true;
  for (const auto& t : a.overlaps) {
    Dir dir{t.from, t.to};
    const LMat& g = e.target(dir);
    SMat moved = (SMat::from_laurent(g) * d.a[t.from].transported(a.transition(t.to, t.from).map) *
                  SMat::from_laurent(g.inverse()))
                     .scaled(smooth_jacobian(a, dir));
    SMat u = d.a[t.to] - moved;
    if (!u.del_zbar().is_zero()) out.dbar_closed = false;
    auto l = u.to_laurent();
    if (!l) {
      out.dbar_closed = false;
      return out;
    }
    out.u.overlap[dir] = *l;
  }
  CechCochain theta = atiyah_cocycle(e);
  out.equals_minus_theta = true;
  for (const auto& [dir, m] : theta.overlap)
    if (out.u.overlap.at(dir) != -m) out.equals_minus_theta = false;
  if (auto tau = solve_coboundary(e, add(out.u, theta))) {
    out.exact = true;
    out.witness = std::move(*tau);
  }
  return out;
}

DHermitianMetric fs_line_metric(const Atlas& a, int n, int rank) {
  BiPoly base = BiPoly(1) + BiPoly::monomial(1, 1, 1);
  SmoothFn f = n >= 0 ? SmoothFn::from_parts(BiPoly(1), {{base, n}}) : SmoothFn(base.pow(-n));
  if (n == 0) f = SmoothFn(1);
  DHermitianMetric h;
  for (int i = 0; i < a.num_charts(); ++i) h.per_chart.push_back(SMat::scalar(static_cast<std::size_t>(rank), f));
  return h;
}

DHermitianMetric fs_surface_metric(const Atlas& a) {
  BiPoly base = BiPoly(1) + BiPoly::monomial(1, 1, 1);
  SmoothFn f = SmoothFn::from_parts(BiPoly(4), {{base, 2}});
  DHermitianMetric h;
  for (int i = 0; i < a.num_charts(); ++i) h.per_chart.push_back(SMat::scalar(1, f));
  return h;
}

}  // namespace klein
