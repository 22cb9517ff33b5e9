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
#include <sstream>

#include "doctest.h"
#include "klein/cli/commands.hpp"
#include "klein/cli/descriptor.hpp"

using namespace klein;
using namespace klein::cli;

namespace {

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(KLEIN_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kFixtures[] = {"sphere.kd",          "klein_bottle.kd",    "sphere_line_0.kd",   "sphere_line_1.kd",
                           "sphere_line_2.kd",   "sphere_line_3.kd",   "sphere_line_m1.kd",  "sphere_line_m2.kd",
                           "sphere_line_m3.kd"};

const char* kTwoLines = R"(surface S
  chart U0 disc 2
  chart U1 disc 2
  overlap U0 U1 antiholo weight 1 designated map zb^-1
  overlap U1 U0 antiholo weight -1 map zb^-1
  compact
end
bundle L rank 1
  entry U0 U1 [ zb^-2 ]
  entry U1 U0 [ zb^-2 ]
end
)";

template <typename F>
Error capture(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::Parse, "unreachable");
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("fixture files parse and validate") {
    for (const char* name : kFixtures) {
      CAPTURE(name);
      Descriptor d = parse_descriptor(fixture_text(name));
      Report r = run_command(Command::Validate, d);
      CHECK(r.get("verdict") == "valid");
      CHECK(r.exit_code() == 0);
    }
  }

  TEST_CASE("emit and parse round trip") {
    for (const char* name : kFixtures) {
      CAPTURE(name);
      Descriptor d = parse_descriptor(fixture_text(name));
      std::string text = emit_descriptor(d);
      Descriptor again = parse_descriptor(text);
      CHECK(same_descriptor(d, again));
      CHECK(emit_descriptor(again) == text);
    }
  }

  TEST_CASE("inline descriptor of the degree two line") {
    Descriptor d = parse_descriptor(kTwoLines);
    CHECK(d.bundle("L").rank() == 1);
    CHECK(run_command(Command::Degree, d).get("degree") == "2");
  }

  TEST_CASE("missing inverse direction names the overlap") {
    std::string text = kTwoLines;
    text.erase(text.find("  overlap U1 U0"), std::string("  overlap U1 U0 antiholo weight -1 map zb^-1\n").size());
    Error e = capture([&] { parse_descriptor(text); });
    CHECK(e.code() == ErrorCode::Semantic);
    CHECK(std::string(e.what()).find("overlap(U0,U1)") != std::string::npos);
  }

  TEST_CASE("missing bundle entry names the direction") {
    std::string text = kTwoLines;
    text.erase(text.find("  entry U1 U0"), std::string("  entry U1 U0 [ zb^-2 ]\n").size());
    Error e = capture([&] { parse_descriptor(text); });
    CHECK(e.code() == ErrorCode::Semantic);
    CHECK(std::string(e.what()).find("bundle.L.entry(U1,U0)") != std::string::npos);
  }

  TEST_CASE("malformed Laurent literal has a position") {
    std::string text = kTwoLines;
    text.replace(text.find("[ zb^-2 ]"), 9, "[ zb^-x ]");
    try {
      parse_descriptor(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.code() == ErrorCode::Parse);
      CHECK(e.line() == 9);
      CHECK(e.column() > 15);
      CHECK(error_report("degree", e).exit_code() == exit_status(ErrorCode::Parse));
    }
  }

  TEST_CASE("invalid cocycle is a semantic error") {
    std::string text = kTwoLines;
    text.replace(text.find("[ zb^-2 ]"), 9, "[ zb^-3 ]");
    Error e = capture([&] { parse_descriptor(text); });
    CHECK(e.code() == ErrorCode::Semantic);
    CHECK(std::string(e.what()).find("bundle.L") != std::string::npos);
  }

  TEST_CASE("unknown keywords are parse errors") {
    Error e = capture([] { parse_descriptor("surface S\n  chart U disc 1\n  wobble\nend\n"); });
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(capture([] { parse_descriptor("bundle L rank 1\nend\n"); }).code() == ErrorCode::Parse);
  }

  TEST_CASE("connect on the trivial line") {
    Report r = run_command(Command::Connect, parse_descriptor(fixture_text("sphere_line_0.kd")));
    CHECK(r.get("verdict") == "Exists");
    CHECK(r.get("form.U0") == "[ 0 ]");
    CHECK(r.get("form.U1") == "[ 0 ]");
    CHECK(r.exit_code() == 0);
  }

  TEST_CASE("report on opposite lines") {
    Descriptor d = parse_descriptor(fixture_text("sphere.kd"));
    Report r = run_command(Command::Report, d, Selection{"E", "", ""});
    CHECK(r.get("verdict") == "NotExists");
    CHECK(r.get("degree") == "0");
    std::string degs = r.get("factor_degrees");
    CHECK((degs == "[1, -1]" || degs == "[-1, 1]"));
    CHECK(r.get("agree") == "yes");
    CHECK(r.get("degree_sign") == "1");
    CHECK(r.get("pairing_sign") == "1");
  }

  TEST_CASE("degree of the tangent bundle") {
    Descriptor d = parse_descriptor(fixture_text("sphere.kd"));
    CHECK(run_command(Command::Degree, d, Selection{"T", "", ""}).get("degree") == "2");
  }

  TEST_CASE("every command runs on the sphere fixture") {
    Descriptor d = parse_descriptor(fixture_text("sphere.kd"));
    for (const auto& name : command_names()) {
      CAPTURE(name);
      Command c = *command_from_name(name);
      Report r = run_command(c, d, Selection{"L1", "", ""});
      CHECK(r.command == name);
      CHECK_FALSE(r.error.has_value());
    }
  }

  TEST_CASE("missing metric is reported") {
    Descriptor d = parse_descriptor(fixture_text("klein_bottle.kd"));
    Report r = run_command(Command::Chern, d);
    REQUIRE(r.error.has_value());
    CHECK(*r.error == ErrorCode::Semantic);
    CHECK(r.exit_code() == exit_status(ErrorCode::Semantic));
    CHECK(r.render(Format::Machine).find("error=E_SEMANTIC") != std::string::npos);
  }

  TEST_CASE("reports are deterministic and line oriented") {
    Descriptor d = parse_descriptor(fixture_text("sphere.kd"));
    std::string a = run_command(Command::Remak, d).render(Format::Machine);
    std::string b = run_command(Command::Remak, d).render(Format::Machine);
    CHECK(a == b);
    std::istringstream lines(a);
    std::string line;
    while (std::getline(lines, line)) CHECK(line.find('=') != std::string::npos);
  }

  TEST_CASE("report matrices parse back") {
    Descriptor d = parse_descriptor(fixture_text("sphere.kd"));
    Report r = run_command(Command::Atiyah, d, Selection{"E", "", ""});
    std::string theta = r.get("theta.U0->U1");
    REQUIRE(theta.size() > 4);
    std::vector<LaurentPoly> entries;
    std::string body = theta.substr(1, theta.size() - 2);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i)
      if (i == body.size() || body[i] == ',' || body[i] == ';') {
        entries.push_back(parse_laurent(body.substr(start, i - start)));
        start = i + 1;
      }
    REQUIRE(entries.size() == 4);
    CHECK(entries[0] == LaurentPoly::z(-1));
    CHECK(entries[1].is_zero());
    CHECK(entries[2].is_zero());
    CHECK(entries[3] == LaurentPoly::monomial(-1, -1));
  }
}
