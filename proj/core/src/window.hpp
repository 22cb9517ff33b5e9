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
#include <optional>
#include <vector>

#include "klein/field.hpp"
#include "klein/linalg.hpp"
#include "klein/surface.hpp"

namespace klein::detail {

// Real coordinates of column-vector families with bounded exponents.
class Layout {
 public:
  Layout(const Atlas& a, std::size_t rows, int bound) : rows_(rows), bound_(bound) {
    // Later charts come first and exponents vary slowest, which keeps
    // elimination along the overlap nerve banded.
    lo_.resize(a.charts.size());
    base_.resize(a.charts.size());
    std::size_t base = 0;
    for (std::size_t i = a.charts.size(); i-- > 0;) {
      int lo = a.charts[i].kind == DomainKind::Disc ? 0 : -bound;
      lo_[i] = lo;
      base_[i] = base;
      base += rows * static_cast<std::size_t>(bound - lo + 1) * 2;
    }
    size_ = base;
  }

  std::size_t size() const { return size_; }
  int lo(int chart) const { return lo_[chart]; }
  int hi() const { return bound_; }
  bool inside(int chart, int k) const { return k >= lo_[chart] && k <= bound_; }
  std::size_t index(int chart, std::size_t row, int k, int part) const {
    return base_[chart] + (static_cast<std::size_t>(k - lo_[chart]) * rows_ + row) * 2 + static_cast<std::size_t>(part);
  }

  std::vector<LMat> unpack(const QVec& x) const {
    std::vector<LMat> out;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      LMat m(rows_, 1);
      for (std::size_t r = 0; r < rows_; ++r)
        for (int k = lo_[i]; k <= bound_; ++k) {
          int c = static_cast<int>(i);
          GaussianRational v(x[index(c, r, k, 0)], x[index(c, r, k, 1)]);
          if (!v.is_zero()) m(r, 0).add_term(k, v);
        }
      out.push_back(std::move(m));
    }
    return out;
  }

  std::optional<QVec> pack(const std::vector<LMat>& cols) const {
    QVec x(size_, Rational(0));
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [k, v] : cols[i](r, 0).terms()) {
          int c = static_cast<int>(i);
          if (!inside(c, k)) return std::nullopt;
          x[index(c, r, k, 0)] = v.re();
          x[index(c, r, k, 1)] = v.im();
        }
    return x;
  }

 private:
  std::size_t rows_;
  int bound_;
  std::vector<int> lo_;
  std::vector<std::size_t> base_;
  std::size_t size_ = 0;
};

using ComplexRow = std::map<std::size_t, GaussianRational>;

inline void accumulate(ComplexRow& row, std::size_t var, const GaussianRational& c) {
  GaussianRational& slot = row[var];
  slot += c;
  if (slot.is_zero()) row.erase(var);
}

inline void add_complex_equation(SparseSystem& sys, const ComplexRow& row, const GaussianRational& rhs = GaussianRational(0)) {
  SparseSystem::Row re, im;
  for (const auto& [v, c] : row) {
    if (sgn(c.re()) != 0) re[v] = c.re();
    if (sgn(c.im()) != 0) im[v] = c.im();
  }
  sys.add_equation(std::move(re), rhs.re());
  sys.add_equation(std::move(im), rhs.im());
}

}  // namespace klein::detail
