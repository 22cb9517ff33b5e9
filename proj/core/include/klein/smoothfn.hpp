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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "klein/field.hpp"

namespace klein {

// Laurent polynomial in z and zb; key (k, l) is the monomial z^k zb^l.
class BiPoly {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, GaussianRational>;

  BiPoly() = default;
  BiPoly(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
  BiPoly(long c) : BiPoly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
  static BiPoly monomial(const GaussianRational& c, int k, int l);
  static BiPoly from_half(const HalfFn& h);

  const Terms& terms() const { return terms_; }
  GaussianRational coeff(int k, int l) const;
  void add_term(int k, int l, const GaussianRational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  int min_k() const;
  int min_l() const;
  int max_k() const;
  int max_l() const;

  BiPoly shifted(int dk, int dl) const;
  BiPoly scaled(const GaussianRational& c) const;
  BiPoly conj() const;
  BiPoly del_z() const;
  BiPoly del_zbar() const;
  // f(w) with z = t(w), conjugated when t uses zb.
  BiPoly transported(const MonomialMap& t) const;
  BiPoly pow(int n) const;

  // Exact quotient in the Laurent ring, if d divides *this.
  bool divide_exact(const BiPoly& d, BiPoly& q) const;

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }
  friend bool operator<(const BiPoly& a, const BiPoly& b);

  std::string str() const;

 private:
  Terms terms_;
};

// Rational function num / den in z and zb. The denominator is kept as a
// product of normalized factors so common factors cancel exactly.
class SmoothFn {
 public:
  SmoothFn() = default;
  SmoothFn(const GaussianRational& c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  SmoothFn(long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  SmoothFn(const BiPoly& p) : num_(p) {}  // NOLINT(google-explicit-constructor)
  static SmoothFn fraction(const BiPoly& num, const BiPoly& den);
  // num divided by the product of factor^mult.
  static SmoothFn from_parts(const BiPoly& num, const std::vector<std::pair<BiPoly, int>>& den);
  static SmoothFn from_half(const HalfFn& h) { return SmoothFn(BiPoly::from_half(h)); }
  static SmoothFn z() { return SmoothFn(BiPoly::monomial(1, 1, 0)); }
  static SmoothFn zb() { return SmoothFn(BiPoly::monomial(1, 0, 1)); }

  const BiPoly& num() const { return num_; }
  BiPoly den() const;
  const std::vector<std::pair<BiPoly, int>>& den_factors() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  // True when the function depends on z only.
  bool is_holomorphic() const;
  // Laurent form when the function is a Laurent polynomial in z.
  bool to_laurent(LaurentPoly& out) const;

  SmoothFn inverse() const;
  SmoothFn conj() const;
  SmoothFn del_z() const;
  SmoothFn del_zbar() const;
  SmoothFn transported(const MonomialMap& t) const;

  SmoothFn operator-() const;
  SmoothFn& operator+=(const SmoothFn& o);
  SmoothFn& operator-=(const SmoothFn& o);
  SmoothFn& operator*=(const SmoothFn& o);
  friend SmoothFn operator+(SmoothFn a, const SmoothFn& b) { return a += b; }
  friend SmoothFn operator-(SmoothFn a, const SmoothFn& b) { return a -= b; }
  friend SmoothFn operator*(SmoothFn a, const SmoothFn& b) { return a *= b; }
  friend SmoothFn operator/(const SmoothFn& a, const SmoothFn& b) { return a * b.inverse(); }
  friend bool operator==(const SmoothFn& a, const SmoothFn& b) { return (a - b).is_zero(); }
  friend bool operator!=(const SmoothFn& a, const SmoothFn& b) { return !(a == b); }

  // "{num} / {den}" or the bare numerator.
  std::string str() const;

 private:
  void add_factor(const BiPoly& f, int mult);
  void normalize();

  BiPoly num_;
  std::vector<std::pair<BiPoly, int>> den_;
};

enum class SmoothOp { Add, Mul, Inv, DelZ, DelZBar, Conj };

// Binary ops combine a and b; Inv inverts b; the others act on a.
SmoothFn smooth_arith(const SmoothFn& a, const SmoothFn& b, SmoothOp op);

BiPoly parse_bipoly(std::string_view text);
SmoothFn parse_smooth(std::string_view text);

}  // namespace klein
