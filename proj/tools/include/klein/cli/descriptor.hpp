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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "klein/bundle.hpp"
#include "klein/diffop.hpp"
#include "klein/smooth.hpp"
#include "klein/surface.hpp"

namespace klein::cli {

// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct BundleDecl {
  std::string name;
  // Empty for bundles given by explicit entries.
  std::string op;
  std::vector<std::string> args;
  int rank = 0;
  std::map<std::pair<std::string, std::string>, HalfMat> entries;
};

struct MetricDecl {
  std::string name;
  // Empty for a metric on the surface.
  std::string bundle;
  DHermitianMetric metric;
};

struct OperatorDecl {
  std::string name;
  std::string source;
  std::string target;
  std::vector<ChartOp> per_chart;
};

struct SolverConfig {
  int bound = 0;
  std::uint64_t seed = 1;
  int trials = 16;
};

struct Descriptor {
  AtlasPtr atlas;
  std::vector<BundleDecl> bundle_decls;
  std::map<std::string, Cocycle> bundles;
  std::vector<MetricDecl> metrics;
  std::vector<OperatorDecl> operators;
  SolverConfig config;

  const Cocycle& bundle(const std::string& name) const;
  const MetricDecl* metric(const std::string& name) const;
  const OperatorDecl* op(const std::string& name) const;
  FirstOrderOp build_operator(const OperatorDecl& d) const;
};

Descriptor parse_descriptor(std::string_view text);
std::string emit_descriptor(const Descriptor& d);
// Structural equality of two parsed descriptors.
bool same_descriptor(const Descriptor& a, const Descriptor& b);

}  // namespace klein::cli
