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

#include <optional>
#include <string>
#include <vector>

#include "klein/atiyah.hpp"
#include "klein/bundle.hpp"
#include "klein/smoothfn.hpp"

namespace klein {

class SMat {
 public:
  SMat() = default;
  SMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static SMat identity(std::size_t n);
  static SMat scalar(std::size_t n, const SmoothFn& f);
  static SMat from_laurent(const LMat& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  SmoothFn& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const SmoothFn& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const;
  // Laurent matrix when every entry is a Laurent polynomial in z.
  std::optional<LMat> to_laurent() const;
  SMat conj() const;
  // Conjugate transpose.
  SMat dagger() const;
  SMat del_z() const;
  SMat del_zbar() const;
  SMat transported(const MonomialMap& t) const;
  SMat scaled(const SmoothFn& f) const;
  SmoothFn det() const;
  SMat inverse() const;

  SMat operator-() const;
  friend SMat operator+(const SMat& a, const SMat& b);
  friend SMat operator-(const SMat& a, const SMat& b);
  friend SMat operator*(const SMat& a, const SMat& b);
  friend bool operator==(const SMat& a, const SMat& b);
  friend bool operator!=(const SMat& a, const SMat& b) { return !(a == b); }

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SmoothFn> a_;
};

enum class FormValues { Scalar, Section, Endomorphism };

// Per-chart coefficient of dz^p dz̄^q; a (1,1) coefficient multiplies dz∧dz̄.
struct SmoothForm {
  int p = 0;
  int q = 0;
  FormValues values = FormValues::Scalar;
  bool twisted = false;
  std::vector<SMat> per_chart;
};

// Coefficient expected on chart j from the coefficient on chart i.
SMat transport_form(const Atlas& a, const Cocycle* e, Dir d, const SmoothForm& f);
ValidationReport check_form_gluing(const Atlas& a, const SmoothForm& f, const Cocycle* e = nullptr);

SmoothForm conj_form(const SmoothForm& f);
SmoothForm dbar(const SmoothForm& f);
SmoothForm dolbeault(const Cocycle& e, const std::vector<SMat>& sections);

// Hermitian matrix per chart; 1x1 for a metric on the surface.
struct DHermitianMetric {
  std::vector<SMat> per_chart;
};

struct MetricForms {
  SmoothForm fundamental;
  SmoothForm volume;
};

ValidationReport check_metric(const Atlas& a, const DHermitianMetric& h);
MetricForms validate_metric(const Atlas& a, const DHermitianMetric& h);
ValidationReport check_bundle_metric(const Cocycle& e, const DHermitianMetric& h);

SmoothForm hodge_star(const Atlas& a, const SmoothForm& psi, const DHermitianMetric& h);

// omega_i = a_i dz + b_i dz̄.
struct SmoothConnection {
  Cocycle bundle;
  std::vector<SMat> a;
  std::vector<SMat> b;
  bool compatible = false;
};

ValidationReport check_connection(const SmoothConnection& d);

struct CurvatureForms {
  SmoothForm f20;
  SmoothForm f11;
  SmoothForm f02;
};

CurvatureForms curvature(const SmoothConnection& d);
SmoothConnection chern_connection(const Cocycle& e, const DHermitianMetric& h);
// Connection and metric in the frames used by frame_change.
SmoothConnection gauge(const SmoothConnection& d, const std::vector<LMat>& frames);
DHermitianMetric gauge(const DHermitianMetric& h, const std::vector<LMat>& frames);

struct CompareReport {
  CechCochain u;
  bool dbar_closed = false;
  bool equals_minus_theta = false;
  bool exact = false;
  std::vector<LMat> witness;
};

CompareReport cech_dolbeault_compare(const SmoothConnection& d);

// (1 + z zb)^{-n} on every chart.
DHermitianMetric fs_line_metric(const Atlas& a, int n, int rank = 1);
// 4 / (1 + z zb)^2 on every chart.
DHermitianMetric fs_surface_metric(const Atlas& a);

}  // namespace klein
