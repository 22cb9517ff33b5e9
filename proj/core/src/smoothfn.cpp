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

#include "klein/smoothfn.hpp"

#include <algorithm>

#include "literal.hpp"

namespace klein {

BiPoly::BiPoly(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace(Key{0, 0}, c);
}

BiPoly BiPoly::monomial(const GaussianRational& c, int k, int l) {
  BiPoly p;
  p.add_term(k, l, c);
  return p;
}

BiPoly BiPoly::from_half(const HalfFn& h) {
  BiPoly p;
  for (const auto& [k, c] : h.body.terms()) {
    if (h.arg == Arg::Z)
      p.add_term(k, 0, c);
    else
      p.add_term(0, k, c);
  }
  return p;
}

GaussianRational BiPoly::coeff(int k, int l) const {
  auto it = terms_.find(Key{k, l});
  return it == terms_.end() ? GaussianRational() : it->second;
}

void BiPoly::add_term(int k, int l, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(Key{k, l}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int BiPoly::min_k() const {
  int m = terms_.begin()->first.first;
  for (const auto& [key, c] : terms_) m = std::min(m, key.first);
  return m;
}

int BiPoly::min_l() const {
  int m = terms_.begin()->first.second;
  for (const auto& [key, c] : terms_) m = std::min(m, key.second);
  return m;
}

int BiPoly::max_k() const {
  int m = terms_.begin()->first.first;
  for (const auto& [key, c] : terms_) m = std::max(m, key.first);
  return m;
}

int BiPoly::max_l() const {
  int m = terms_.begin()->first.second;
  for (const auto& [key, c] : terms_) m = std::max(m, key.second);
  return m;
}

BiPoly BiPoly::shifted(int dk, int dl) const {
  BiPoly p;
  for (const auto& [key, c] : terms_) p.terms_.emplace(Key{key.first + dk, key.second + dl}, c);
  return p;
}

BiPoly BiPoly::scaled(const GaussianRational& s) const {
  BiPoly p;
  if (s.is_zero()) return p;
  for (const auto& [key, c] : terms_) p.terms_.emplace(key, c * s);
  return p;
}

BiPoly BiPoly::conj() const {
  BiPoly p;
  for (const auto& [key, c] : terms_) p.terms_.emplace(Key{key.second, key.first}, c.conj());
  return p;
}

BiPoly BiPoly::del_z() const {
  BiPoly p;
  for (const auto& [key, c] : terms_)
    if (key.first != 0) p.terms_.emplace(Key{key.first - 1, key.second}, c * GaussianRational(key.first));
  return p;
}

BiPoly BiPoly::del_zbar() const {
  BiPoly p;
  for (const auto& [key, c] : terms_)
    if (key.second != 0) p.terms_.emplace(Key{key.first, key.second - 1}, c * GaussianRational(key.second));
  return p;
}

BiPoly BiPoly::transported(const MonomialMap& t) const {
  t.check();
  BiPoly p;
  GaussianRational cb = t.c.conj();
  for (const auto& [key, c] : terms_) {
    auto [k, l] = key;
    GaussianRational coef = c * t.c.pow(k) * cb.pow(l);
    if (t.bar)
      p.add_term(t.e * l, t.e * k, coef);
    else
      p.add_term(t.e * k, t.e * l, coef);
  }
  return t.bar ? p.conj() : p;
}

BiPoly BiPoly::pow(int n) const {
  BiPoly out(1);
  for (int i = 0; i < n; ++i) out = out * *this;
  return out;
}

bool BiPoly::divide_exact(const BiPoly& d, BiPoly& q) const {
  q = BiPoly();
  if (d.is_zero()) return false;
  if (is_zero()) return true;
  int k0 = min_k() - d.min_k(), k1 = max_k() - d.max_k();
  int l0 = min_l() - d.min_l(), l1 = max_l() - d.max_l();
  if (k0 > k1 || l0 > l1) return false;
  BiPoly r = *this;
  const auto& [dkey, dc] = *d.terms_.rbegin();
  GaussianRational dinv = dc.inverse();
  while (!r.is_zero()) {
    const auto& [rkey, rc] = *r.terms_.rbegin();
    int k = rkey.first - dkey.first, l = rkey.second - dkey.second;
    if (k < k0 || k > k1 || l < l0 || l > l1) return false;
    BiPoly m = monomial(rc * dinv, k, l);
    q += m;
    r -= m * d;
  }
  return true;
}

BiPoly BiPoly::operator-() const { return scaled(GaussianRational(-1)); }

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly p;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) p.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return p;
}

bool operator<(const BiPoly& a, const BiPoly& b) {
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        if (x.second.re() != y.second.re()) return x.second.re() < y.second.re();
        return x.second.im() < y.second.im();
      });
}

std::string BiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.str() + " * z^" + std::to_string(key.first) + " zb^" + std::to_string(key.second);
  }
  return out;
}

// ---------------------------------------------------------------------------

SmoothFn SmoothFn::fraction(const BiPoly& num, const BiPoly& den) {
  if (den.is_zero()) fail(ErrorCode::DivZero, "zero denominator");
  SmoothFn f(num);
  f.add_factor(den, 1);
  f.normalize();
  return f;
}

SmoothFn SmoothFn::from_parts(const BiPoly& num, const std::vector<std::pair<BiPoly, int>>& den) {
  SmoothFn f(num);
  for (const auto& [g, m] : den) f.add_factor(g, m);
  f.normalize();
  return f;
}

BiPoly SmoothFn::den() const {
  BiPoly d(1);
  for (const auto& [f, m] : den_) d = d * f.pow(m);
  return d;
}

void SmoothFn::add_factor(const BiPoly& f0, int mult) {
  if (f0.is_zero()) fail(ErrorCode::DivZero, "zero denominator factor");
  if (mult == 0) return;
  BiPoly f = f0;
  for (auto& [g, m] : den_) {
    BiPoly q;
    while (!f.is_monomial() && f.divide_exact(g, q)) {
      f = q;
      m += mult;
    }
  }
  int a = f.min_k(), b = f.min_l();
  BiPoly g = f.shifted(-a, -b);
  GaussianRational lc = g.terms().rbegin()->second;
  g = g.scaled(lc.inverse());
  num_ = num_.shifted(-a * mult, -b * mult).scaled(lc.pow(-mult));
  if (g.is_monomial()) return;
  for (auto& [h, m] : den_) {
    if (h == g) {
      m += mult;
      return;
    }
  }
  den_.emplace_back(g, mult);
  std::sort(den_.begin(), den_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
}

void SmoothFn::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [f, m] : den_) {
    BiPoly q;
    while (m > 0 && num_.divide_exact(f, q)) {
      num_ = q;
      --m;
    }
  }
  den_.erase(std::remove_if(den_.begin(), den_.end(), [](const auto& x) { return x.second == 0; }), den_.end());
}

bool SmoothFn::is_holomorphic() const {
  for (const auto& [key, c] : num_.terms())
    if (key.second != 0) return false;
  for (const auto& [f, m] : den_)
    if (f.max_l() != 0) return false;
  return true;
}

bool SmoothFn::to_laurent(LaurentPoly& out) const {
  if (!den_.empty()) return false;
  LaurentPoly p;
  for (const auto& [key, c] : num_.terms()) {
    if (key.second != 0) return false;
    p.add_term(key.first, c);
  }
  out = p;
  return true;
}

SmoothFn SmoothFn::inverse() const {
  if (num_.is_zero()) fail(ErrorCode::DivZero, "inverse of zero function");
  SmoothFn out(den());
  out.add_factor(num_, 1);
  out.normalize();
  return out;
}

SmoothFn SmoothFn::conj() const {
  SmoothFn out(num_.conj());
  for (const auto& [f, m] : den_) out.add_factor(f.conj(), m);
  out.normalize();
  return out;
}

namespace {

template <typename Deriv>
SmoothFn derive_with(const SmoothFn& s, Deriv d) {
  const auto& den = s.den_factors();
  if (den.empty()) return SmoothFn(d(s.num()));
  BiPoly prod(1);
  for (const auto& [f, m] : den) prod = prod * f;
  BiPoly top = d(s.num()) * prod;
  for (std::size_t k = 0; k < den.size(); ++k) {
    BiPoly rest(1);
    for (std::size_t j = 0; j < den.size(); ++j)
      if (j != k) rest = rest * den[j].first;
    top -= s.num() * d(den[k].first) * rest.scaled(GaussianRational(den[k].second));
  }
  std::vector<std::pair<BiPoly, int>> raised = den;
  for (auto& [f, m] : raised) ++m;
  return SmoothFn::from_parts(top, raised);
}

}  // namespace

SmoothFn SmoothFn::del_z() const {
  return derive_with(*this, [](const BiPoly& p) { return p.del_z(); });
}

SmoothFn SmoothFn::del_zbar() const {
  return derive_with(*this, [](const BiPoly& p) { return p.del_zbar(); });
}

SmoothFn SmoothFn::transported(const MonomialMap& t) const {
  SmoothFn out(num_.transported(t));
  for (const auto& [f, m] : den_) out.add_factor(f.transported(t), m);
  out.normalize();
  return out;
}

SmoothFn SmoothFn::operator-() const {
  SmoothFn out = *this;
  out.num_ = -num_;
  return out;
}

SmoothFn& SmoothFn::operator+=(const SmoothFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::vector<std::pair<BiPoly, int>> lcm = den_;
  for (const auto& [f, m] : o.den_) {
    bool found = false;
    for (auto& [g, n] : lcm)
      if (g == f) {
        n = std::max(n, m);
        found = true;
      }
    if (!found) lcm.emplace_back(f, m);
  }
  auto lift = [&lcm](const SmoothFn& s) {
    BiPoly p = s.num_;
    for (const auto& [g, n] : lcm) {
      int have = 0;
      for (const auto& [f, m] : s.den_)
        if (f == g) have = m;
      p = p * g.pow(n - have);
    }
    return p;
  };
  num_ = lift(*this) + lift(o);
  std::sort(lcm.begin(), lcm.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  den_ = lcm;
  normalize();
  return *this;
}

SmoothFn& SmoothFn::operator-=(const SmoothFn& o) { return *this += -o; }

SmoothFn& SmoothFn::operator*=(const SmoothFn& o) {
  num_ = num_ * o.num_;
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  for (const auto& [f, m] : o.den_) {
    bool found = false;
    for (auto& [g, n] : den_)
      if (g == f) {
        n += m;
        found = true;
      }
    if (!found) den_.emplace_back(f, m);
  }
  std::sort(den_.begin(), den_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  normalize();
  return *this;
}

std::string SmoothFn::str() const {
  if (den_.empty()) return num_.str();
  std::string out = "{" + num_.str() + "} /";
  for (const auto& [f, m] : den_) out += " {" + f.str() + "}^" + std::to_string(m);
  return out;
}

SmoothFn smooth_arith(const SmoothFn& a, const SmoothFn& b, SmoothOp op) {
  switch (op) {
    case SmoothOp::Add: return a + b;
    case SmoothOp::Mul: return a * b;
    case SmoothOp::Inv: return b.inverse();
    case SmoothOp::DelZ: return a.del_z();
    case SmoothOp::DelZBar: return a.del_zbar();
    case SmoothOp::Conj: return a.conj();
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

BiPoly to_bipoly(const std::vector<detail::RawTerm>& terms) {
  BiPoly p;
  for (const auto& t : terms) p.add_term(t.k, t.l, t.c);
  return p;
}

std::pair<BiPoly, int> parse_operand(detail::TermParser& p) {
  p.skip_ws();
  if (p.peek() != '{') return {to_bipoly(p.parse_sum('/')), 1};
  p.advance();
  BiPoly base = to_bipoly(p.parse_sum('}'));
  p.expect('}');
  p.skip_ws();
  int n = 1;
  if (p.peek() == '^') {
    p.advance();
    std::size_t s = p.pos();
    n = 0;
    while (!p.at_end() && p.peek() >= '0' && p.peek() <= '9') {
      n = n * 10 + (p.peek() - '0');
      p.advance();
    }
    if (s == p.pos() || n > 64) p.error("expected small exponent");
  }
  return {base, n};
}

}  // namespace

BiPoly parse_bipoly(std::string_view text) {
  detail::TermParser p(text);
  BiPoly out = to_bipoly(p.parse_sum());
  p.skip_ws();
  if (!p.at_end()) p.error("trailing characters");
  return out;
}

SmoothFn parse_smooth(std::string_view text) {
  detail::TermParser p(text);
  auto [num, np] = parse_operand(p);
  BiPoly top = num.pow(np);
  p.skip_ws();
  if (p.at_end()) return SmoothFn(top);
  p.expect('/');
  std::vector<std::pair<BiPoly, int>> factors;
  do {
    std::size_t at = p.pos();
    auto [den, dp] = parse_operand(p);
    if (den.is_zero()) throw LiteralError(at, "zero denominator");
    factors.emplace_back(den, dp);
    p.skip_ws();
  } while (p.peek() == '{');
  if (!p.at_end()) p.error("trailing characters");
  return SmoothFn::from_parts(top, factors);
}

}  // namespace klein
