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

#include "klein/linalg.hpp"

namespace klein {

void SparseSystem::add_equation(Row row, Rational rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (sgn(it->second) == 0)
      it = row.erase(it);
    else
      ++it;
  }
  while (!row.empty()) {
    auto first = row.begin();
    std::size_t c = first->first;
    auto piv = pivots_.find(c);
    if (piv == pivots_.end()) {
      Rational inv = 1 / first->second;
      for (auto& [k, v] : row) v *= inv;
      rhs *= inv;
      pivots_.emplace(c, std::make_pair(std::move(row), rhs));
      return;
    }
    Rational f = first->second;
    const auto& [prow, prhs] = piv->second;
    for (const auto& [k, v] : prow) {
      Rational nv = row[k] - f * v;
      if (sgn(nv) == 0)
        row.erase(k);
      else
        row[k] = nv;
    }
    rhs -= f * prhs;
  }
  if (sgn(rhs) != 0) consistent_ = false;
}

std::vector<QVec> SparseSystem::back_substitute(bool homogeneous, std::optional<std::size_t> free_col) const {
  QVec x(nvars_, Rational(0));
  if (free_col) x[*free_col] = 1;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const auto& [c, pr] = *it;
    const auto& [row, rhs] = pr;
    Rational v = homogeneous ? Rational(0) : rhs;
    for (const auto& [k, a] : row)
      if (k != c) v -= a * x[k];
    x[c] = v;
  }
  return {x};
}

std::vector<QVec> SparseSystem::nullspace() const {
  std::vector<QVec> out;
  for (std::size_t c = 0; c < nvars_; ++c) {
    if (pivots_.count(c)) continue;
    out.push_back(back_substitute(true, c).front());
  }
  return out;
}

std::optional<QVec> SparseSystem::particular() const {
  if (!consistent_) return std::nullopt;
  return back_substitute(false, std::nullopt).front();
}

// ---------------------------------------------------------------------------

QMat QMat::identity(std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat operator*(const QMat& a, const QMat& b) {
  QMat m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

QMat operator+(const QMat& a, const QMat& b) {
  QMat m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

QMat QMat::scaled(const Rational& s) const {
  QMat m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

// ---------------------------------------------------------------------------

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

QPoly QPoly::monic() const {
  if (c_.empty()) return *this;
  QVec c = c_;
  Rational l = c.back();
  for (auto& x : c) x /= l;
  return QPoly(c);
}

QPoly QPoly::derivative() const {
  QVec c;
  for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * static_cast<long>(k));
  return QPoly(c);
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QVec c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return QPoly(c);
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  QVec c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
  return QPoly(c);
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  QVec c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPoly(c);
}

std::string QPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (sgn(c_[k]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + rational_str(c_[k]) + ")*t^" + std::to_string(k);
  }
  return out;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) fail(ErrorCode::DivZero, "polynomial division by zero");
  QVec qc(std::max(0, a.degree() - b.degree() + 1), Rational(0));
  QVec rc = a.coeffs();
  Rational lb = b.lead();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational f = rc[k + b.degree()] / lb;
    qc[k] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rc[k + j] -= f * b.coeff(j);
  }
  q = QPoly(qc);
  r = QPoly(rc);
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.monic();
}

QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(1), s1;
  QPoly t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  Rational l = r0.lead();
  QPoly inv = QPoly::constant(1 / l);
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

QMat evaluate(const QPoly& p, const QMat& m) {
  QMat acc(m.rows(), m.cols());
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * m + QMat::identity(m.rows()).scaled(p.coeffs()[k]);
  return acc;
}

QPoly minimal_polynomial(const QMat& m) {
  std::size_t n = m.rows();
  std::vector<QVec> powers;
  QMat p = QMat::identity(n);
  for (std::size_t d = 0; d <= n; ++d) {
    powers.push_back(p.data());
    // Solve sum_{j<d} c_j P^j = -P^d.
    std::size_t len = n * n;
    SparseSystem sys(d);
    for (std::size_t e = 0; e < len; ++e) {
      SparseSystem::Row row;
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(powers[j][e]) != 0) row[j] = powers[j][e];
      sys.add_equation(row, -powers[d][e]);
    }
    if (sys.consistent()) {
      QVec c = *sys.particular();
      c.push_back(Rational(1));
      return QPoly(c);
    }
    p = p * m;
  }
  fail(ErrorCode::DivZero, "minimal polynomial not found");
}

std::vector<GaussianRational> char_poly(const std::vector<std::vector<GaussianRational>>& m) {
  // Faddeev-LeVerrier.
  std::size_t n = m.size();
  using GMat = std::vector<std::vector<GaussianRational>>;
  auto mul = [n](const GMat& a, const GMat& b) {
    GMat c(n, std::vector<GaussianRational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  std::vector<GaussianRational> coef(n + 1);
  coef[n] = GaussianRational(1);
  GMat mk(n, std::vector<GaussianRational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    GMat prod = mul(m, mk);
    for (std::size_t i = 0; i < n; ++i) prod[i][i] += coef[n - k + 1];
    mk = prod;
    GMat am = mul(m, mk);
    GaussianRational tr;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    coef[n - k] = -tr / GaussianRational(static_cast<long>(k));
  }
  return coef;
}

}  // namespace klein
