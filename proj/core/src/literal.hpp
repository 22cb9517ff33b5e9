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

// Shared tokenizer for polynomial literals in z and zb.

#include <string_view>
#include <vector>

#include "klein/field.hpp"

namespace klein::detail {

struct RawTerm {
  GaussianRational c;
  int k = 0;
  int l = 0;
  bool has_z = false;
  bool has_zb = false;
  std::size_t pos = 0;
};

class TermParser {
 public:
  explicit TermParser(std::string_view s, std::size_t base = 0) : s_(s), base_(base) {}

  // Parses a signed sum of terms; stops at end of input or at `stop`.
  std::vector<RawTerm> parse_sum(char stop = '\0');

  void skip_ws();
  bool at_end() const { return p_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[p_]; }
  std::size_t pos() const { return p_; }
  void advance() { ++p_; }
  [[noreturn]] void error(const std::string& what) const;
  void expect(char c);

 private:
  RawTerm parse_term(bool negative);
  bool parse_coeff(GaussianRational& out);
  Rational parse_rat();
  long parse_int();
  void parse_mono(RawTerm& t);

  std::string_view s_;
  std::size_t base_;
  std::size_t p_ = 0;
};

}  // namespace klein::detail
