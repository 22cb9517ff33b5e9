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

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "klein/cli/commands.hpp"
#include "klein/cli/descriptor.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  using namespace klein::cli;
  CLI::App app{"Connections and sections of vector bundles on Klein surfaces"};
  std::string command;
  std::string path = "-";
  std::optional<int> bound;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  Format format = Format::Human;
  Selection sel;
  const std::map<std::string, Format> formats{{"human", Format::Human}, {"machine", Format::Machine}};

  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("file", path, "Descriptor file, or - for standard input");
  app.add_option("--bound", bound, "Laurent exponent bound for the linear solvers (0 derives one)");
  app.add_option("--seed", seed, "Seed for randomized Remak trials");
  app.add_option("--trials", trials, "Number of randomized Remak trials");
  app.add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--bundle", sel.bundle, "Bundle to operate on (default: last declared)");
  app.add_option("--metric", sel.metric, "Metric for chern and compare");
  app.add_option("--operator", sel.op, "Operator for jets");
  CLI11_PARSE(app, argc, argv);

  Command cmd = *command_from_name(command);
  std::string text;
  try {
    text = read_input(path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  Report report;
  try {
    Descriptor d = parse_descriptor(text);
    if (bound) d.config.bound = *bound;
    if (seed) d.config.seed = *seed;
    if (trials) d.config.trials = *trials;
    report = run_command(cmd, d, sel);
  } catch (const klein::Error& e) {
    report = error_report(command, e);
  }
  std::cout << report.render(format);
  return report.exit_code();
}
