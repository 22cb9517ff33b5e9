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

#include "klein/error.hpp"

namespace klein {

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonomial: return "E_NONMONOMIAL";
    case ErrorCode::DivZero: return "E_DIV_ZERO";
    case ErrorCode::InvalidAtlas: return "E_INVALID_ATLAS";
    case ErrorCode::NotCompact: return "E_NOT_COMPACT";
    case ErrorCode::AtlasMismatch: return "E_ATLAS_MISMATCH";
    case ErrorCode::InvalidBundle: return "E_INVALID_BUNDLE";
    case ErrorCode::BoundTooSmall: return "E_BOUND_TOO_SMALL";
    case ErrorCode::Decomposable: return "E_DECOMPOSABLE";
    case ErrorCode::InvalidOperator: return "E_INVALID_OPERATOR";
    case ErrorCode::ShapeMismatch: return "E_SHAPE_MISMATCH";
    case ErrorCode::BadGluing: return "E_BAD_GLUING";
    case ErrorCode::BadMetric: return "E_BAD_METRIC";
    case ErrorCode::BadConnection: return "E_BAD_CONNECTION";
    case ErrorCode::Incompatible: return "E_INCOMPATIBLE";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Semantic: return "E_SEMANTIC";
  }
  return "E_UNKNOWN";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return 2;
    case ErrorCode::Semantic: return 3;
    case ErrorCode::InvalidAtlas: return 10;
    case ErrorCode::InvalidBundle: return 11;
    case ErrorCode::InvalidOperator: return 12;
    case ErrorCode::BadGluing: return 13;
    case ErrorCode::BadMetric: return 14;
    case ErrorCode::BadConnection: return 15;
    case ErrorCode::Incompatible: return 16;
    case ErrorCode::NotCompact: return 20;
    case ErrorCode::BoundTooSmall: return 21;
    case ErrorCode::Decomposable: return 22;
    case ErrorCode::AtlasMismatch: return 23;
    case ErrorCode::ShapeMismatch: return 24;
    case ErrorCode::NonMonomial: return 30;
    case ErrorCode::DivZero: return 31;
  }
  return 1;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace klein
