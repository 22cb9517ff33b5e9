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
#include <utility>
#include <vector>

#include "klein/cli/descriptor.hpp"

namespace klein::cli {

enum class Command { Validate, Degree, H0, EndAlg, Remak, Atiyah, Connect, Pair, Jets, Chern, Compare, Report };

std::optional<Command> command_from_name(const std::string& name);
const char* command_name(Command c);
std::vector<std::string> command_names();

enum class Format { Human, Machine };

struct Selection {
  // Empty picks the last declared bundle.
  std::string bundle;
  // Empty picks the first metric on the selected bundle.
  std::string metric;
  // Empty picks the first operator.
  std::string op;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;
  std::optional<ErrorCode> error;

  void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
  // First value stored under key, or empty.
  std::string get(const std::string& key) const;
  int exit_code() const;
  std::string render(Format f) const;
};

Report run_command(Command cmd, const Descriptor& d, const Selection& sel = {});
// Report for a failure raised before dispatch, such as a parse error.
Report error_report(const std::string& command, const Error& e);

}  // namespace klein::cli
