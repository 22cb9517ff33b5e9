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

#include <stdexcept>
#include <string>

namespace klein {

enum class ErrorCode {
  NonMonomial,
  DivZero,
  InvalidAtlas,
  NotCompact,
  AtlasMismatch,
  InvalidBundle,
  BoundTooSmall,
  Decomposable,
  InvalidOperator,
  ShapeMismatch,
  BadGluing,
  BadMetric,
  BadConnection,
  Incompatible,
  Parse,
  Semantic,
};

const char* code_name(ErrorCode code);

// Process exit status reported by the command line tool for each code.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace klein
