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

#include "klein/field.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

#include "literal.hpp"

namespace klein {

std::string rational_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

GaussianRational::GaussianRational(const Rational& re, const Rational& im) : re_(re), im_(im) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) fail(ErrorCode::DivZero, "inverse of zero scalar");
  Rational n = norm();
  Rational r = re_ / n;
  Rational i = -im_ / n;
  return GaussianRational(r, i);
}

GaussianRational GaussianRational::pow(int k) const {
  GaussianRational base = k < 0 ? inverse() : *this;
  GaussianRational out(1);
  for (int n = k < 0 ? -k : k; n > 0; --n) out *= base;
  return out;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = r;
  im_ = i;
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::string GaussianRational::str() const {
  Rational a = abs(im_);
  return "(" + rational_str(re_) + ")" + (sgn(im_) < 0 ? "-" : "+") + "(" + rational_str(a) + ")i";
}

// ---------------------------------------------------------------------------

LaurentPoly::LaurentPoly(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

LaurentPoly LaurentPoly::monomial(const GaussianRational& c, int k) {
  LaurentPoly p;
  p.add_term(k, c);
  return p;
}

GaussianRational LaurentPoly::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void LaurentPoly::add_term(int k, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool LaurentPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

int LaurentPoly::valuation() const {
  if (terms_.empty()) fail(ErrorCode::DivZero, "valuation of zero");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) fail(ErrorCode::DivZero, "degree of zero");
  return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::derive() const {
  LaurentPoly out;
  for (const auto& [k, c] : terms_)
    if (k != 0) out.terms_.emplace(k - 1, c * GaussianRational(k));
  return out;
}

LaurentPoly LaurentPoly::conj_coeffs() const {
  LaurentPoly out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c.conj());
  return out;
}

LaurentPoly LaurentPoly::scale_substitute(const GaussianRational& c, int e) const {
  LaurentPoly out;
  for (const auto& [k, a] : terms_) out.add_term(k * e, a * c.pow(k));
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

std::string LaurentPoly::str(const char* var) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.str() + " * " + var + "^" + std::to_string(k);
  }
  return out;
}

GaussianRational residue(const LaurentPoly& f) { return f.residue(); }

HalfFn laurent_arith(const LaurentPoly& a, const LaurentPoly& b, LaurentOp op) {
  switch (op) {
    case LaurentOp::Add: return HalfFn{a + b, Arg::Z};
    case LaurentOp::Mul: return HalfFn{a * b, Arg::Z};
    case LaurentOp::Derive: return HalfFn{a.derive(), Arg::Z};
    case LaurentOp::ConjReflect: return HalfFn{a, Arg::Z}.conj_reflect();
  }
  return {};
}

// ---------------------------------------------------------------------------

void MonomialMap::check() const {
  if ((e != 1 && e != -1) || c.is_zero())
    fail(ErrorCode::NonMonomial, "map " + str() + " is not of the form c*z^(+-1) or c*zb^(+-1)");
}

MonomialMap MonomialMap::inverse() const {
  check();
  GaussianRational c2 = e == 1 ? c.inverse() : c;
  if (bar) c2 = c2.conj();
  return MonomialMap{c2, e, bar};
}

std::string MonomialMap::str() const {
  return c.str() + " * " + (bar ? "zb" : "z") + "^" + std::to_string(e);
}

MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner) {
  outer.check();
  inner.check();
  GaussianRational ci = outer.bar ? inner.c.conj() : inner.c;
  return MonomialMap{outer.c * ci.pow(outer.e), outer.e * inner.e, outer.bar != inner.bar};
}

HalfFn substitute_monomial(const LaurentPoly& f, const MonomialMap& t) {
  t.check();
  return HalfFn{f.scale_substitute(t.c, t.e), t.bar ? Arg::ZBar : Arg::Z};
}

HalfFn pullback(const HalfFn& h, const MonomialMap& t) {
  t.check();
  if (h.arg == Arg::Z) return substitute_monomial(h.body, t);
  // h(w) = body(conj w) and conj w = conj(c) * conj(zeta)^e.
  LaurentPoly body = h.body.scale_substitute(t.c.conj(), t.e);
  return HalfFn{body, t.bar ? Arg::Z : Arg::ZBar};
}

LaurentPoly transport(const LaurentPoly& f, const MonomialMap& t) {
  HalfFn h = substitute_monomial(f, t);
  return h.arg == Arg::Z ? h.body : h.body.conj_coeffs();
}

LaurentPoly transport_jacobian(const MonomialMap& t) { return transport(LaurentPoly::z(1), t).derive(); }

// ---------------------------------------------------------------------------

LMat LMat::identity(std::size_t n) { return scalar(n, LaurentPoly(1)); }

LMat LMat::scalar(std::size_t n, const LaurentPoly& f) {
  LMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f;
  return m;
}

bool LMat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

LMat LMat::derive() const {
  LMat m = *this;
  for (auto& x : m.a_) x = x.derive();
  return m;
}

LMat LMat::conj_coeffs() const {
  LMat m = *this;
  for (auto& x : m.a_) x = x.conj_coeffs();
  return m;
}

LMat LMat::transpose() const {
  LMat m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

LMat LMat::transported(const MonomialMap& t) const {
  LMat m = *this;
  for (auto& x : m.a_) x = transport(x, t);
  return m;
}

LMat LMat::scaled(const LaurentPoly& f) const {
  LMat m = *this;
  for (auto& x : m.a_) x = x * f;
  return m;
}

LaurentPoly LMat::trace() const {
  LaurentPoly t;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

LaurentPoly det_rec(const LMat& m, std::size_t row, unsigned mask,
                    std::vector<std::unordered_map<unsigned, LaurentPoly>>& memo) {
  if (row == m.rows()) return LaurentPoly(1);
  auto it = memo[row].find(mask);
  if (it != memo[row].end()) return it->second;
  LaurentPoly acc;
  int sign = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!(mask & (1u << c))) continue;
    if (!m(row, c).is_zero()) {
      LaurentPoly sub = det_rec(m, row + 1, mask & ~(1u << c), memo);
      LaurentPoly term = m(row, c) * sub;
      if (sign > 0)
        acc += term;
      else
        acc -= term;
    }
    sign = -sign;
  }
  memo[row].emplace(mask, acc);
  return acc;
}

}  // namespace

LaurentPoly LMat::det() const {
  if (rows_ != cols_) fail(ErrorCode::ShapeMismatch, "determinant of non-square matrix");
  if (rows_ == 0) return LaurentPoly(1);
  std::vector<std::unordered_map<unsigned, LaurentPoly>> memo(rows_);
  return det_rec(*this, 0, (1u << cols_) - 1, memo);
}

bool LMat::det_is_unit_monomial() const { return rows_ == cols_ && det().is_monomial(); }

LMat LMat::inverse() const {
  LaurentPoly d = det();
  if (!d.is_monomial()) fail(ErrorCode::InvalidBundle, "matrix determinant " + d.str() + " is not a nonzero monomial");
  const auto& [k, c] = *d.terms().begin();
  LaurentPoly dinv = LaurentPoly::monomial(c.inverse(), -k);
  std::size_t n = rows_;
  if (n == 1) return LMat::scalar(1, dinv);
  LMat out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LMat minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t cc = 0, mc = 0; cc < n; ++cc) {
          if (cc == j) continue;
          minor(rr, mc++) = (*this)(r, cc);
        }
        ++rr;
      }
      LaurentPoly cof = minor.det() * dinv;
      out(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return out;
}

LMat LMat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  LMat m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void LMat::set_block(std::size_t r0, std::size_t c0, const LMat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

LMat LMat::operator-() const {
  LMat m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

LMat operator+(const LMat& a, const LMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::ShapeMismatch, "matrix sum shape");
  LMat m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

LMat operator-(const LMat& a, const LMat& b) { return a + (-b); }

LMat operator*(const LMat& a, const LMat& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::ShapeMismatch, "matrix product shape");
  LMat m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const LaurentPoly& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

std::string LMat::str(const char* var) const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out += " ;";
    for (std::size_t c = 0; c < cols_; ++c) {
      out += c ? ", " : " ";
      out += (*this)(r, c).str(var);
    }
  }
  return out + " ]";
}

LMat kronecker(const LMat& a, const LMat& b) {
  LMat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

LMat direct_sum(const LMat& a, const LMat& b) {
  LMat m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

// ---------------------------------------------------------------------------

LiteralError::LiteralError(std::size_t offset, const std::string& what)
    : Error(ErrorCode::Parse, "offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

namespace detail {

void TermParser::error(const std::string& what) const { throw LiteralError(base_ + p_, what); }

void TermParser::skip_ws() {
  while (!at_end() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
}

void TermParser::expect(char c) {
  if (peek() != c) error(std::string("expected '") + c + "'");
  ++p_;
}

long TermParser::parse_int() {
  std::size_t start = p_;
  bool neg = false;
  if (peek() == '-' || peek() == '+') {
    neg = peek() == '-';
    ++p_;
  }
  if (!std::isdigit(static_cast<unsigned char>(peek()))) {
    p_ = start;
    error("expected integer");
  }
  long v = 0;
  while (std::isdigit(static_cast<unsigned char>(peek()))) {
    v = v * 10 + (s_[p_] - '0');
    if (v > 1000000000L) error("integer too large");
    ++p_;
  }
  return neg ? -v : v;
}

Rational TermParser::parse_rat() {
  std::size_t start = p_;
  bool neg = false;
  if (peek() == '-' || peek() == '+') {
    neg = peek() == '-';
    ++p_;
  }
  if (!std::isdigit(static_cast<unsigned char>(peek()))) {
    p_ = start;
    error("expected rational");
  }
  std::size_t ds = p_;
  while (std::isdigit(static_cast<unsigned char>(peek()))) ++p_;
  mpz_class num(std::string(s_.substr(ds, p_ - ds)));
  mpz_class den(1);
  if (peek() == '/') {
    ++p_;
    std::size_t dd = p_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++p_;
    if (dd == p_) error("expected denominator");
    den = mpz_class(std::string(s_.substr(dd, p_ - dd)));
    if (den == 0) error("zero denominator");
  }
  Rational q(neg ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

bool TermParser::parse_coeff(GaussianRational& out) {
  char c = peek();
  if (c == '(') {
    ++p_;
    skip_ws();
    Rational re = parse_rat();
    skip_ws();
    expect(')');
    Rational im(0);
    std::size_t save = p_;
    if ((peek() == '+' || peek() == '-') && p_ + 1 < s_.size() && s_[p_ + 1] == '(') {
      bool neg = peek() == '-';
      p_ += 2;
      skip_ws();
      Rational v = parse_rat();
      skip_ws();
      if (peek() == ')' && p_ + 1 < s_.size() && s_[p_ + 1] == 'i') {
        p_ += 2;
        im = neg ? Rational(-v) : v;
      } else {
        p_ = save;
      }
    } else if (peek() == 'i') {
      ++p_;
      out = GaussianRational(Rational(0), re);
      return true;
    }
    out = GaussianRational(re, im);
    return true;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    Rational v = parse_rat();
    if (peek() == 'i') {
      ++p_;
      out = GaussianRational(Rational(0), v);
    } else {
      out = GaussianRational(v);
    }
    return true;
  }
  if (c == 'i') {
    ++p_;
    out = GaussianRational::imag_unit();
    return true;
  }
  return false;
}

void TermParser::parse_mono(RawTerm& t) {
  bool any = false;
  while (peek() == 'z') {
    ++p_;
    bool bar = false;
    if (peek() == 'b') {
      ++p_;
      bar = true;
    }
    long e = 1;
    if (peek() == '^') {
      ++p_;
      e = parse_int();
    }
    if (bar) {
      t.l += static_cast<int>(e);
      t.has_zb = true;
    } else {
      t.k += static_cast<int>(e);
      t.has_z = true;
    }
    any = true;
    std::size_t save = p_;
    skip_ws();
    if (peek() == '*' ) {
      std::size_t s2 = p_;
      ++p_;
      skip_ws();
      if (peek() != 'z') p_ = s2;
    }
    if (peek() != 'z') p_ = save;
  }
  if (!any) error("expected monomial z^k or zb^l");
}

RawTerm TermParser::parse_term(bool negative) {
  RawTerm t;
  t.pos = base_ + p_;
  GaussianRational c(1);
  bool has_coeff = parse_coeff(c);
  skip_ws();
  if (has_coeff) {
    if (peek() == '*') {
      ++p_;
      skip_ws();
      parse_mono(t);
    } else if (peek() == 'z') {
      parse_mono(t);
    }
  } else {
    if (peek() != 'z') error("expected coefficient or monomial");
    parse_mono(t);
  }
  t.c = negative ? -c : c;
  return t;
}

std::vector<RawTerm> TermParser::parse_sum(char stop) {
  std::vector<RawTerm> out;
  skip_ws();
  bool neg = false;
  if (peek() == '-' || peek() == '+') {
    neg = peek() == '-';
    ++p_;
    skip_ws();
  }
  for (;;) {
    out.push_back(parse_term(neg));
    skip_ws();
    if (at_end() || (stop != '\0' && peek() == stop)) break;
    if (peek() != '+' && peek() != '-') error("expected '+' or '-' between terms");
    neg = peek() == '-';
    ++p_;
    skip_ws();
  }
  return out;
}

}  // namespace detail

namespace {

std::vector<detail::RawTerm> parse_all(std::string_view text) {
  detail::TermParser p(text);
  auto terms = p.parse_sum();
  p.skip_ws();
  if (!p.at_end()) p.error("trailing characters");
  return terms;
}

}  // namespace

GaussianRational parse_scalar(std::string_view text) {
  auto terms = parse_all(text);
  GaussianRational c;
  for (const auto& t : terms) {
    if (t.has_z || t.has_zb) throw LiteralError(t.pos, "expected scalar");
    c += t.c;
  }
  return c;
}

LaurentPoly parse_laurent(std::string_view text) {
  HalfFn h = parse_halffn(text);
  if (h.arg == Arg::ZBar) fail(ErrorCode::Parse, "expected holomorphic Laurent polynomial");
  return h.body;
}

HalfFn parse_halffn(std::string_view text) {
  auto terms = parse_all(text);
  HalfFn h;
  bool seen_z = false;
  bool seen_zb = false;
  for (const auto& t : terms) {
    if (t.has_z && t.has_zb) throw LiteralError(t.pos, "mixed z and zb term in one-variable literal");
    if ((t.has_z && seen_zb) || (t.has_zb && seen_z)) throw LiteralError(t.pos, "mixed z and zb terms");
    seen_z = seen_z || t.has_z;
    seen_zb = seen_zb || t.has_zb;
    h.body.add_term(t.has_zb ? t.l : t.k, t.c);
  }
  h.arg = seen_zb ? Arg::ZBar : Arg::Z;
  return h;
}

MonomialMap parse_monomial_map(std::string_view text) {
  HalfFn h = parse_halffn(text);
  if (!h.body.is_monomial()) fail(ErrorCode::NonMonomial, "map literal is not a single term");
  const auto& [k, c] = *h.body.terms().begin();
  MonomialMap m{c, k, h.arg == Arg::ZBar};
  m.check();
  return m;
}

}  // namespace klein
