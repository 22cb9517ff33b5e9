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

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "klein/error.hpp"

namespace klein {

using Rational = mpq_class;

std::string rational_str(const Rational& q);

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(const Rational& re, const Rational& im = Rational(0));

  static GaussianRational imag_unit() { return GaussianRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;
  GaussianRational pow(int k) const;

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  // Canonical literal: (re/den)(+|-)(im/den)i
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

using GR = GaussianRational;

class LaurentPoly {
 public:
  using Terms = std::map<int, GaussianRational>;

  LaurentPoly() = default;
  LaurentPoly(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(long c) : LaurentPoly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const GaussianRational& c, int k);
  static LaurentPoly z(int k = 1) { return monomial(GaussianRational(1), k); }

  const Terms& terms() const { return terms_; }
  GaussianRational coeff(int k) const;
  void add_term(int k, const GaussianRational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  // Lowest exponent; requires nonzero.
  int valuation() const;
  int max_exponent() const;

  LaurentPoly derive() const;
  LaurentPoly conj_coeffs() const;
  GaussianRational residue() const { return coeff(-1); }
  // f(c z^e); e may be any integer.
  LaurentPoly scale_substitute(const GaussianRational& c, int e) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  std::string str(const char* var = "z") const;

 private:
  Terms terms_;
};

enum class Arg { Z, ZBar };

inline Arg flip(Arg a) { return a == Arg::Z ? Arg::ZBar : Arg::Z; }

// body evaluated at z (arg Z) or at the conjugate coordinate (arg ZBar).
struct HalfFn {
  LaurentPoly body;
  Arg arg = Arg::Z;

  HalfFn conj_reflect() const { return HalfFn{body.conj_coeffs(), flip(arg)}; }
  std::string str() const { return body.str(arg == Arg::Z ? "z" : "zb"); }

  friend bool operator==(const HalfFn& a, const HalfFn& b) {
    if (a.body.is_zero() && b.body.is_zero()) return true;
    return a.arg == b.arg && a.body == b.body;
  }
};

enum class LaurentOp { Add, Mul, Derive, ConjReflect };

// Add and Mul combine a and b; Derive and ConjReflect act on a only.
HalfFn laurent_arith(const LaurentPoly& a, const LaurentPoly& b, LaurentOp op);

// w = c * z^e, or w = c * zb^e when bar is set.
struct MonomialMap {
  GaussianRational c{1};
  int e = 1;
  bool bar = false;

  static MonomialMap identity() { return MonomialMap{}; }
  void check() const;
  MonomialMap inverse() const;
  std::string str() const;

  friend bool operator==(const MonomialMap& a, const MonomialMap& b) {
    return a.c == b.c && a.e == b.e && a.bar == b.bar;
  }
};

// outer after inner: z -> outer(inner(z)).
MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner);

// f(w) with w = t(z), written in z.
HalfFn substitute_monomial(const LaurentPoly& f, const MonomialMap& t);
// h(w) with w = t(z), written in z.
HalfFn pullback(const HalfFn& h, const MonomialMap& t);
// Holomorphic image in z of f(w), w = t(z): conjugated when t uses zb.
LaurentPoly transport(const LaurentPoly& f, const MonomialMap& t);
// d/dz of the transported coordinate transport(w, t).
LaurentPoly transport_jacobian(const MonomialMap& t);

GaussianRational residue(const LaurentPoly& f);

// Matrices over the Laurent ring.
class LMat {
 public:
  LMat() = default;
  LMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static LMat identity(std::size_t n);
  static LMat scalar(std::size_t n, const LaurentPoly& f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  LaurentPoly& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const LaurentPoly& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const;
  LMat derive() const;
  LMat conj_coeffs() const;
  LMat transpose() const;
  LMat transported(const MonomialMap& t) const;
  LMat scaled(const LaurentPoly& f) const;
  LaurentPoly trace() const;
  LaurentPoly det() const;
  // Requires det to be a nonzero monomial.
  LMat inverse() const;
  bool det_is_unit_monomial() const;
  LMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const LMat& m);

  LMat operator-() const;
  friend LMat operator+(const LMat& a, const LMat& b);
  friend LMat operator-(const LMat& a, const LMat& b);
  friend LMat operator*(const LMat& a, const LMat& b);
  friend bool operator==(const LMat& a, const LMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const LMat& a, const LMat& b) { return !(a == b); }

  std::string str(const char* var = "z") const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LaurentPoly> a_;
};

LMat kronecker(const LMat& a, const LMat& b);
LMat direct_sum(const LMat& a, const LMat& b);

// Literal parsing. Errors carry the byte offset of the failure.
class LiteralError : public Error {
 public:
  LiteralError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

GaussianRational parse_scalar(std::string_view text);
LaurentPoly parse_laurent(std::string_view text);
HalfFn parse_halffn(std::string_view text);
MonomialMap parse_monomial_map(std::string_view text);

}  // namespace klein
