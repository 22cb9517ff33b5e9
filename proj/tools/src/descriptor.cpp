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

#include "klein/cli/descriptor.hpp"

#include <cctype>
#include <memory>
#include <set>
#include <sstream>

namespace klein::cli {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

[[noreturn]] void semantic(const std::string& path, const std::string& what) {
  fail(ErrorCode::Semantic, path + ": " + what);
}

struct Token {
  std::string text;
  std::size_t col = 1;
};

struct Line {
  std::size_t no = 0;
  std::string raw;
  std::vector<Token> toks;

  [[noreturn]] void error(std::size_t col, const std::string& what) const { throw ParseError(no, col, what); }
  [[noreturn]] void error(const std::string& what) const { error(toks.empty() ? 1 : toks.front().col, what); }
  const Token& at(std::size_t k, const char* what) const {
    if (k >= toks.size()) error(raw.size() + 1, std::string("expected ") + what);
    return toks[k];
  }
  std::string rest(std::size_t k) const {
    if (k >= toks.size()) return "";
    return raw.substr(toks[k].col - 1);
  }
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string raw(text.substr(pos, nl - pos));
    ++no;
    pos = nl + 1;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    Line line{no, raw, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (raw[i] == '[') {
        std::size_t close = raw.find(']', i);
        if (close == std::string::npos) line.error(i + 1, "unterminated matrix literal");
        i = close + 1;
      } else {
        while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) && raw[i] != '[') ++i;
      }
      line.toks.push_back(Token{raw.substr(start, i - start), start + 1});
    }
    if (!line.toks.empty()) out.push_back(std::move(line));
    if (nl == text.size()) break;
  }
  return out;
}

struct Cell {
  std::string text;
  std::size_t col;
};

std::vector<std::vector<Cell>> split_matrix(const Line& line, const Token& tok) {
  if (tok.text.size() < 2 || tok.text.front() != '[' || tok.text.back() != ']') line.error(tok.col, "expected matrix literal");
  std::vector<std::vector<Cell>> rows(1);
  std::string body = tok.text.substr(1, tok.text.size() - 2);
  std::size_t start = 0;
  auto push = [&](std::size_t end) {
    std::size_t a = start, b = end;
    while (a < b && std::isspace(static_cast<unsigned char>(body[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(body[b - 1]))) --b;
    if (a == b) line.error(tok.col + 1 + a, "empty matrix entry");
    rows.back().push_back(Cell{body.substr(a, b - a), tok.col + 1 + a});
  };
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',' || body[i] == ';') {
      push(i);
      if (i < body.size() && body[i] == ';') rows.emplace_back();
      start = i + 1;
    }
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) line.error(tok.col, "ragged matrix literal");
  return rows;
}

std::string bare(const Error& e) {
  std::string w = e.what();
  std::string prefix = std::string(code_name(e.code())) + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

template <typename F>
auto literal(const Line& line, std::size_t col, F parse) {
  try {
    return parse();
  } catch (const LiteralError& e) {
    line.error(col + e.offset(), bare(e));
  } catch (const Error& e) {
    line.error(col, bare(e));
  }
}

HalfMat parse_half_matrix(const Line& line, const Token& tok, Arg fallback) {
  auto cells = split_matrix(line, tok);
  HalfMat h;
  h.m = LMat(cells.size(), cells.front().size());
  bool seen_z = false, seen_zb = false;
  for (std::size_t r = 0; r < cells.size(); ++r)
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      const Cell& cell = cells[r][c];
      HalfFn f = literal(line, cell.col, [&] { return parse_halffn(cell.text); });
      if (!f.body.is_zero() && !f.body.is_constant()) {
        if (f.arg == Arg::Z) seen_z = true;
        if (f.arg == Arg::ZBar) seen_zb = true;
        if (seen_z && seen_zb) line.error(cell.col, "matrix mixes z and zb entries");
      }
      h.m(r, c) = f.body;
    }
  h.arg = seen_zb ? Arg::ZBar : seen_z ? Arg::Z : fallback;
  return h;
}

LMat parse_laurent_matrix(const Line& line, const Token& tok) {
  auto cells = split_matrix(line, tok);
  LMat m(cells.size(), cells.front().size());
  for (std::size_t r = 0; r < cells.size(); ++r)
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      const Cell& cell = cells[r][c];
      m(r, c) = literal(line, cell.col, [&] { return parse_laurent(cell.text); });
    }
  return m;
}

SMat parse_smooth_matrix(const Line& line, const Token& tok) {
  auto cells = split_matrix(line, tok);
  SMat m(cells.size(), cells.front().size());
  for (std::size_t r = 0; r < cells.size(); ++r)
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      const Cell& cell = cells[r][c];
      m(r, c) = literal(line, cell.col, [&] { return parse_smooth(cell.text); });
    }
  return m;
}

long parse_int(const Line& line, const Token& tok) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok.text, &used);
    if (used != tok.text.size()) line.error(tok.col + used, "trailing characters in integer");
    return v;
  } catch (const std::logic_error&) {
    line.error(tok.col, "expected integer, found '" + tok.text + "'");
  }
}

Rational parse_rational(const Line& line, const Token& tok) {
  for (char ch : tok.text)
    if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/' && ch != '-' && ch != '+')
      line.error(tok.col, "expected rational, found '" + tok.text + "'");
  try {
    Rational q(tok.text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    line.error(tok.col, "expected rational, found '" + tok.text + "'");
  }
}

void expect_count(const Line& line, std::size_t n) {
  if (line.toks.size() > n) line.error(line.toks[n].col, "unexpected '" + line.toks[n].text + "'");
  if (line.toks.size() < n) line.error(line.raw.size() + 1, "missing argument");
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(split_lines(text)) {}

  Descriptor run() {
    while (k_ < lines_.size()) {
      const Line& line = lines_[k_];
      const std::string& kw = line.toks.front().text;
      if (kw == "surface")
        surface();
      else if (!atlas_)
        line.error("the surface block must come first");
      else if (kw == "bundle")
        bundle();
      else if (kw == "metric")
        metric();
      else if (kw == "operator")
        op();
      else if (kw == "config")
        config();
      else
        line.error("unknown block '" + kw + "'");
    }
    if (!atlas_) throw ParseError(lines_.empty() ? 1 : lines_.back().no, 1, "missing surface block");
    d_.atlas = atlas_;
    return std::move(d_);
  }

 private:
  const Line& next_body(const std::string& block) {
    ++k_;
    if (k_ >= lines_.size())
      throw ParseError(lines_.back().no, lines_.back().raw.size() + 1, "unterminated " + block + " block");
    return lines_[k_];
  }

  int chart(const Line&, const Token& tok, const std::string& path) const {
    int i = atlas_->chart_index(tok.text);
    if (i < 0) semantic(path, "unknown chart '" + tok.text + "'");
    return i;
  }

  void surface() {
    const Line& head = lines_[k_];
    if (atlas_) head.error("duplicate surface block");
    expect_count(head, 2);
    auto a = std::make_shared<Atlas>();
    a->name = head.toks[1].text;
    std::string path = "surface." + a->name;
    std::vector<std::array<std::string, 3>> triples;
    std::vector<std::pair<Transition, std::pair<std::string, std::string>>> pending;
    for (;;) {
      const Line& line = next_body("surface");
      const std::string& kw = line.toks.front().text;
      if (kw == "end") {
        expect_count(line, 1);
        break;
      }
      if (kw == "chart") {
        const std::string& kind = line.at(2, "domain").text;
        Chart c;
        c.id = line.at(1, "chart id").text;
        if (kind == "disc") {
          expect_count(line, 4);
          c.kind = DomainKind::Disc;
          c.inner = 0;
          c.outer = parse_rational(line, line.toks[3]);
        } else if (kind == "annulus") {
          expect_count(line, 5);
          c.kind = DomainKind::Annulus;
          c.inner = parse_rational(line, line.toks[3]);
          c.outer = parse_rational(line, line.toks[4]);
        } else {
          line.error(line.toks[2].col, "expected disc or annulus");
        }
        for (const auto& o : a->charts)
          if (o.id == c.id) semantic(path + ".chart(" + c.id + ")", "duplicate chart");
        a->charts.push_back(c);
      } else if (kw == "overlap") {
        Transition t;
        std::string from = line.at(1, "chart id").text, to = line.at(2, "chart id").text;
        const Token& flag = line.at(3, "holo or antiholo");
        if (flag.text == "holo")
          t.flag = Flag::Holo;
        else if (flag.text == "antiholo")
          t.flag = Flag::AntiHolo;
        else
          line.error(flag.col, "expected holo or antiholo");
        std::size_t i = 4;
        if (line.at(i, "weight").text != "weight") line.error(line.toks[i].col, "expected weight");
        t.weight = static_cast<int>(parse_int(line, line.at(i + 1, "weight value")));
        i += 2;
        if (line.at(i, "map").text == "designated") {
          t.designated = true;
          ++i;
        }
        const Token& m = line.at(i, "map");
        if (m.text != "map") line.error(m.col, "expected map");
        const Token& lit = line.at(i + 1, "map literal");
        std::string text = line.rest(i + 1);
        t.map = literal(line, lit.col, [&] { return parse_monomial_map(text); });
        pending.push_back({t, {from, to}});
      } else if (kw == "triple") {
        expect_count(line, 4);
        triples.push_back({line.toks[1].text, line.toks[2].text, line.toks[3].text});
      } else if (kw == "compact") {
        expect_count(line, 1);
        a->compact = true;
      } else {
        line.error("unknown surface statement '" + kw + "'");
      }
    }
    atlas_ = a;
    std::set<Dir> seen;
    for (auto& [t, ids] : pending) {
      std::string opath = path + ".overlap(" + ids.first + "," + ids.second + ")";
      t.from = a->chart_index(ids.first);
      t.to = a->chart_index(ids.second);
      if (t.from < 0) semantic(opath, "unknown chart '" + ids.first + "'");
      if (t.to < 0) semantic(opath, "unknown chart '" + ids.second + "'");
      if (!seen.insert({t.from, t.to}).second) semantic(opath, "duplicate overlap direction");
      a->overlaps.push_back(t);
    }
    for (const auto& [t, ids] : pending)
      if (!seen.count({t.to, t.from}))
        semantic(path + ".overlap(" + ids.first + "," + ids.second + ")",
                 "missing inverse direction " + ids.second + "->" + ids.first);
    for (const auto& tr : triples) {
      std::array<int, 3> idx{};
      for (int k = 0; k < 3; ++k) {
        idx[k] = a->chart_index(tr[k]);
        if (idx[k] < 0) semantic(path + ".triple", "unknown chart '" + tr[k] + "'");
      }
      a->triples.push_back(idx);
    }
    ValidationReport v = validate_atlas(*a);
    if (!v.ok) semantic(path, v.violations.front());
    ++k_;
  }

  void check_new_bundle(const Line& line, const std::string& name) const {
    if (d_.bundles.count(name)) line.error(line.toks[1].col, "duplicate bundle '" + name + "'");
  }

  void bundle() {
    const Line& head = lines_[k_];
    std::string name = head.at(1, "bundle name").text;
    check_new_bundle(head, name);
    std::string path = "bundle." + name;
    if (head.at(2, "rank or =").text == "=") {
      derived(head, name, path);
      ++k_;
      return;
    }
    if (head.toks[2].text != "rank") head.error(head.toks[2].col, "expected rank or =");
    expect_count(head, 4);
    BundleDecl decl;
    decl.name = name;
    decl.rank = static_cast<int>(parse_int(head, head.toks[3]));
    if (decl.rank <= 0) head.error(head.toks[3].col, "rank must be positive");
    Cocycle e(atlas_, decl.rank, name);
    for (;;) {
      const Line& line = next_body("bundle");
      const std::string& kw = line.toks.front().text;
      if (kw == "end") {
        expect_count(line, 1);
        break;
      }
      if (kw != "entry") line.error("unknown bundle statement '" + kw + "'");
      expect_count(line, 4);
      std::string epath = path + ".entry(" + line.toks[1].text + "," + line.toks[2].text + ")";
      int i = chart(line, line.toks[1], epath), j = chart(line, line.toks[2], epath);
      const Transition* t = atlas_->find(i, j);
      if (!t) semantic(epath, "no such overlap");
      HalfMat h = parse_half_matrix(line, line.toks[3], t->flag == Flag::AntiHolo ? Arg::ZBar : Arg::Z);
      std::size_t r = static_cast<std::size_t>(decl.rank);
      if (h.m.rows() != r || h.m.cols() != r)
        semantic(epath, "expected a " + std::to_string(r) + "x" + std::to_string(r) + " matrix");
      if (e.has({i, j})) semantic(epath, "duplicate entry");
      decl.entries[{line.toks[1].text, line.toks[2].text}] = h;
      e.set_source({i, j}, h);
    }
    for (const auto& t : atlas_->overlaps)
      if (!e.has({t.from, t.to}))
        semantic(path + ".entry(" + atlas_->charts[t.from].id + "," + atlas_->charts[t.to].id + ")", "missing entry");
    ValidationReport v = validate_cocycle(e);
    if (!v.ok) semantic(path, v.violations.front());
    d_.bundle_decls.push_back(decl);
    d_.bundles.emplace(name, std::move(e));
    ++k_;
  }

  const Cocycle& operand(const Line& line, std::size_t k, const std::string& path) const {
    const Token& t = line.at(k, "bundle name");
    auto it = d_.bundles.find(t.text);
    if (it == d_.bundles.end()) semantic(path, "unknown bundle '" + t.text + "'");
    return it->second;
  }

  void derived(const Line& line, const std::string& name, const std::string& path) {
    BundleDecl decl;
    decl.name = name;
    decl.op = line.at(3, "construction").text;
    for (std::size_t k = 4; k < line.toks.size(); ++k) decl.args.push_back(line.toks[k].text);
    const std::string& op = decl.op;
    auto arity = [&](std::size_t n) { expect_count(line, 4 + n); };
    try {
      Cocycle e;
      if (op == "dual") {
        arity(1);
        e = dual(operand(line, 4, path));
      } else if (op == "det") {
        arity(1);
        e = det(operand(line, 4, path));
      } else if (op == "tensor") {
        arity(2);
        e = tensor(operand(line, 4, path), operand(line, 5, path));
      } else if (op == "hom") {
        arity(2);
        e = hom(operand(line, 4, path), operand(line, 5, path));
      } else if (op == "sum") {
        if (line.toks.size() < 6) line.error(line.raw.size() + 1, "sum needs at least two bundles");
        std::vector<Cocycle> parts;
        for (std::size_t k = 4; k < line.toks.size(); ++k) parts.push_back(operand(line, k, path));
        e = direct_sum_all(parts);
      } else if (op == "tangent" || op == "cotangent" || op == "orientation") {
        arity(0);
        CanonicalBundles cb = canonical_bundles(atlas_);
        e = op == "tangent" ? cb.tangent : op == "cotangent" ? cb.cotangent : cb.orientation;
      } else if (op == "trivial") {
        arity(1);
        long r = parse_int(line, line.toks[4]);
        if (r <= 0) line.error(line.toks[4].col, "rank must be positive");
        e = trivial_bundle(atlas_, static_cast<int>(r));
      } else {
        line.error(line.toks[3].col, "unknown construction '" + op + "'");
      }
      e.set_name(name);
      decl.rank = e.rank();
      d_.bundle_decls.push_back(decl);
      d_.bundles.emplace(name, std::move(e));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      if (err.code() == ErrorCode::Semantic) throw;
      semantic(path, bare(err));
    }
  }

  void metric() {
    const Line& head = lines_[k_];
    MetricDecl decl;
    decl.name = head.at(1, "metric name").text;
    std::string path = "metric." + decl.name;
    if (d_.metric(decl.name)) head.error(head.toks[1].col, "duplicate metric '" + decl.name + "'");
    const Token& kind = head.at(2, "surface or bundle");
    if (kind.text == "surface") {
      expect_count(head, 3);
    } else if (kind.text == "bundle") {
      expect_count(head, 4);
      decl.bundle = head.toks[3].text;
      if (!d_.bundles.count(decl.bundle)) semantic(path, "unknown bundle '" + decl.bundle + "'");
    } else {
      head.error(kind.col, "expected surface or bundle");
    }
    std::vector<std::optional<SMat>> per(atlas_->charts.size());
    for (;;) {
      const Line& line = next_body("metric");
      const std::string& kw = line.toks.front().text;
      if (kw == "end") {
        expect_count(line, 1);
        break;
      }
      if (kw != "chart") line.error("unknown metric statement '" + kw + "'");
      expect_count(line, 3);
      std::string cpath = path + ".chart(" + line.toks[1].text + ")";
      int i = chart(line, line.toks[1], cpath);
      if (per[i]) semantic(cpath, "duplicate chart");
      per[i] = parse_smooth_matrix(line, line.toks[2]);
    }
    for (std::size_t i = 0; i < per.size(); ++i) {
      if (!per[i]) semantic(path + ".chart(" + atlas_->charts[i].id + ")", "missing");
      decl.metric.per_chart.push_back(*per[i]);
    }
    d_.metrics.push_back(std::move(decl));
    ++k_;
  }

  void op() {
    const Line& head = lines_[k_];
    OperatorDecl decl;
    expect_count(head, 6);
    decl.name = head.toks[1].text;
    std::string path = "operator." + decl.name;
    if (d_.op(decl.name)) head.error(head.toks[1].col, "duplicate operator '" + decl.name + "'");
    if (head.toks[2].text != "source") head.error(head.toks[2].col, "expected source");
    if (head.toks[4].text != "target") head.error(head.toks[4].col, "expected target");
    decl.source = head.toks[3].text;
    decl.target = head.toks[5].text;
    if (!d_.bundles.count(decl.source)) semantic(path, "unknown bundle '" + decl.source + "'");
    if (!d_.bundles.count(decl.target)) semantic(path, "unknown bundle '" + decl.target + "'");
    std::vector<std::optional<ChartOp>> per(atlas_->charts.size());
    for (;;) {
      const Line& line = next_body("operator");
      const std::string& kw = line.toks.front().text;
      if (kw == "end") {
        expect_count(line, 1);
        break;
      }
      if (kw != "chart") line.error("unknown operator statement '" + kw + "'");
      expect_count(line, 6);
      std::string cpath = path + ".chart(" + line.toks[1].text + ")";
      int i = chart(line, line.toks[1], cpath);
      if (per[i]) semantic(cpath, "duplicate chart");
      if (line.toks[2].text != "a") line.error(line.toks[2].col, "expected a");
      if (line.toks[4].text != "b") line.error(line.toks[4].col, "expected b");
      per[i] = ChartOp{parse_laurent_matrix(line, line.toks[3]), parse_laurent_matrix(line, line.toks[5])};
    }
    for (std::size_t i = 0; i < per.size(); ++i) {
      if (!per[i]) semantic(path + ".chart(" + atlas_->charts[i].id + ")", "missing");
      decl.per_chart.push_back(*per[i]);
    }
    d_.operators.push_back(std::move(decl));
    ++k_;
  }

  void config() {
    expect_count(lines_[k_], 1);
    for (;;) {
      const Line& line = next_body("config");
      const std::string& kw = line.toks.front().text;
      if (kw == "end") {
        expect_count(line, 1);
        break;
      }
      expect_count(line, 2);
      long v = parse_int(line, line.toks[1]);
      if (kw == "bound")
        d_.config.bound = static_cast<int>(v);
      else if (kw == "seed")
        d_.config.seed = static_cast<std::uint64_t>(v);
      else if (kw == "trials")
        d_.config.trials = static_cast<int>(v);
      else
        line.error("unknown config key '" + kw + "'");
    }
    ++k_;
  }

  std::vector<Line> lines_;
  std::size_t k_ = 0;
  std::shared_ptr<Atlas> atlas_;
  Descriptor d_;
};

}  // namespace

const Cocycle& Descriptor::bundle(const std::string& name) const {
  auto it = bundles.find(name);
  if (it == bundles.end()) fail(ErrorCode::Semantic, "bundle." + name + ": unknown bundle");
  return it->second;
}

const MetricDecl* Descriptor::metric(const std::string& name) const {
  for (const auto& m : metrics)
    if (m.name == name) return &m;
  return nullptr;
}

const OperatorDecl* Descriptor::op(const std::string& name) const {
  for (const auto& o : operators)
    if (o.name == name) return &o;
  return nullptr;
}

FirstOrderOp Descriptor::build_operator(const OperatorDecl& d) const {
  return FirstOrderOp{bundle(d.source), bundle(d.target), d.per_chart};
}

Descriptor parse_descriptor(std::string_view text) { return Parser(text).run(); }

std::string emit_descriptor(const Descriptor& d) {
  std::ostringstream out;
  const Atlas& a = *d.atlas;
  out << "surface " << a.name << "\n";
  for (const auto& c : a.charts) {
    if (c.kind == DomainKind::Disc)
      out << "  chart " << c.id << " disc " << rational_str(c.outer) << "\n";
    else
      out << "  chart " << c.id << " annulus " << rational_str(c.inner) << " " << rational_str(c.outer) << "\n";
  }
  for (const auto& t : a.overlaps) {
    out << "  overlap " << a.charts[t.from].id << " " << a.charts[t.to].id << " "
        << (t.flag == Flag::Holo ? "holo" : "antiholo") << " weight " << t.weight << (t.designated ? " designated" : "")
        << " map " << t.map.str() << "\n";
  }
  for (const auto& tr : a.triples)
    out << "  triple " << a.charts[tr[0]].id << " " << a.charts[tr[1]].id << " " << a.charts[tr[2]].id << "\n";
  if (a.compact) out << "  compact\n";
  out << "end\n";
  for (const auto& b : d.bundle_decls) {
    out << "\n";
    if (!b.op.empty()) {
      out << "bundle " << b.name << " = " << b.op;
      for (const auto& x : b.args) out << " " << x;
      out << "\n";
      continue;
    }
    out << "bundle " << b.name << " rank " << b.rank << "\n";
    for (const auto& [ids, h] : b.entries)
      out << "  entry " << ids.first << " " << ids.second << " " << h.m.str(h.arg == Arg::ZBar ? "zb" : "z") << "\n";
    out << "end\n";
  }
  for (const auto& m : d.metrics) {
    out << "\nmetric " << m.name << (m.bundle.empty() ? " surface" : " bundle " + m.bundle) << "\n";
    for (std::size_t i = 0; i < m.metric.per_chart.size(); ++i)
      out << "  chart " << a.charts[i].id << " " << m.metric.per_chart[i].str() << "\n";
    out << "end\n";
  }
  for (const auto& o : d.operators) {
    out << "\noperator " << o.name << " source " << o.source << " target " << o.target << "\n";
    for (std::size_t i = 0; i < o.per_chart.size(); ++i)
      out << "  chart " << a.charts[i].id << " a " << o.per_chart[i].a.str() << " b " << o.per_chart[i].b.str() << "\n";
    out << "end\n";
  }
  out << "\nconfig\n  bound " << d.config.bound << "\n  seed " << d.config.seed << "\n  trials " << d.config.trials
      << "\nend\n";
  return out.str();
}

bool same_descriptor(const Descriptor& x, const Descriptor& y) {
  const Atlas& a = *x.atlas;
  const Atlas& b = *y.atlas;
  if (a.name != b.name || a.compact != b.compact || a.triples != b.triples) return false;
  if (a.charts.size() != b.charts.size() || a.overlaps.size() != b.overlaps.size()) return false;
  for (std::size_t i = 0; i < a.charts.size(); ++i) {
    const Chart &p = a.charts[i], &q = b.charts[i];
    if (p.id != q.id || p.kind != q.kind || p.inner != q.inner || p.outer != q.outer) return false;
  }
  for (std::size_t i = 0; i < a.overlaps.size(); ++i) {
    const Transition &p = a.overlaps[i], &q = b.overlaps[i];
    if (p.from != q.from || p.to != q.to || !(p.map == q.map) || p.flag != q.flag || p.weight != q.weight ||
        p.designated != q.designated)
      return false;
  }
  if (x.bundles.size() != y.bundles.size()) return false;
  for (const auto& [name, e] : x.bundles) {
    auto it = y.bundles.find(name);
    if (it == y.bundles.end() || it->second.rank() != e.rank()) return false;
    for (const auto& t : a.overlaps) {
      const HalfMat &p = e.source({t.from, t.to}), &q = it->second.source({t.from, t.to});
      if (p.m != q.m || (p.arg != q.arg && !p.m.is_zero())) return false;
    }
  }
  if (x.metrics.size() != y.metrics.size() || x.operators.size() != y.operators.size()) return false;
  for (std::size_t k = 0; k < x.metrics.size(); ++k) {
    const MetricDecl &p = x.metrics[k], &q = y.metrics[k];
    if (p.name != q.name || p.bundle != q.bundle || p.metric.per_chart != q.metric.per_chart) return false;
  }
  for (std::size_t k = 0; k < x.operators.size(); ++k) {
    const OperatorDecl &p = x.operators[k], &q = y.operators[k];
    if (p.name != q.name || p.source != q.source || p.target != q.target) return false;
    for (std::size_t i = 0; i < p.per_chart.size(); ++i)
      if (p.per_chart[i].a != q.per_chart[i].a || p.per_chart[i].b != q.per_chart[i].b) return false;
  }
  return x.config.bound == y.config.bound && x.config.seed == y.config.seed && x.config.trials == y.config.trials;
}

}  // namespace klein::cli
