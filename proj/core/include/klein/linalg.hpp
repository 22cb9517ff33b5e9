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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klein/field.hpp"

namespace klein {

using QVec = std::vector<Rational>;

// Exact sparse linear system over the rationals, reduced incrementally.
class SparseSystem {
 public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseSystem(std::size_t nvars) : nvars_(nvars) {}

  std::size_t num_vars() const { return nvars_; }
  void add_equation(Row row, Rational rhs = Rational(0));
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }

  std::vector<QVec> nullspace() const;
  // Solution with all free variables zero.
  std::optional<QVec> particular() const;

 private:
  std::vector<QVec> back_substitute(bool homogeneous, std::optional<std::size_t> free_col) const;

  std::size_t nvars_;
  std::map<std::size_t, std::pair<Row, Rational>> pivots_;
  bool consistent_ = true;
};

class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}
  static QMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  const QVec& data() const { return a_; }

  friend QMat operator*(const QMat& a, const QMat& b);
  friend QMat operator+(const QMat& a, const QMat& b);
  QMat scaled(const Rational& s) const;
  friend bool operator==(const QMat& a, const QMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  QVec a_;
};

// Dense polynomial over Q, coefficients from degree 0 upward.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(QVec c) : c_(std::move(c)) { trim(); }
  static QPoly constant(const Rational& c) { return QPoly(QVec{c}); }
  static QPoly x() { return QPoly(QVec{Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const QVec& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  QPoly monic() const;
  QPoly derivative() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  std::string str() const;

 private:
  void trim();
  QVec c_;
};

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly gcd(const QPoly& a, const QPoly& b);
// g = s*a + t*b with g monic.
QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
QMat evaluate(const QPoly& p, const QMat& m);
QPoly minimal_polynomial(const QMat& m);

// Characteristic polynomial det(t - M) of a scalar matrix over Q(i),
// coefficients from degree 0 upward.
std::vector<GaussianRational> char_poly(const std::vector<std::vector<GaussianRational>>& m);

}  // namespace klein
