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

#include "klein/cli/commands.hpp"

#include <algorithm>
#include <sstream>

#include "klein/atiyah.hpp"
#include "klein/diffop.hpp"
#include "klein/sections.hpp"
#include "klein/smooth.hpp"

namespace klein::cli {

namespace {

constexpr const char* kNames[] = {"validate", "degree", "h0",      "endalg",  "remak",   "atiyah",
                                  "connect",  "pair",   "jets",    "chern",   "compare", "report"};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string dir_key(const Atlas& a, Dir d) { return a.charts[d.first].id + "->" + a.charts[d.second].id; }

std::string int_list(const std::vector<long>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

void add_family(Report& r, const Atlas& a, const std::string& prefix, const std::vector<LMat>& per_chart) {
  for (std::size_t i = 0; i < per_chart.size(); ++i) r.add(prefix + "." + a.charts[i].id, per_chart[i].str());
}

void add_smooth(Report& r, const Atlas& a, const std::string& prefix, const std::vector<SMat>& per_chart) {
  for (std::size_t i = 0; i < per_chart.size(); ++i) r.add(prefix + "." + a.charts[i].id, per_chart[i].str());
}

void add_cochain(Report& r, const Atlas& a, const std::string& prefix, const CechCochain& c) {
  for (const auto& [d, m] : c.overlap) r.add(prefix + "." + dir_key(a, d), m.str());
}

const Cocycle& selected_bundle(const Descriptor& d, const Selection& sel) {
  if (!sel.bundle.empty()) return d.bundle(sel.bundle);
  if (d.bundle_decls.empty()) fail(ErrorCode::Semantic, "descriptor declares no bundle");
  return d.bundle(d.bundle_decls.back().name);
}

const MetricDecl& selected_metric(const Descriptor& d, const Selection& sel, const std::string& bundle) {
  if (!sel.metric.empty()) {
    const MetricDecl* m = d.metric(sel.metric);
    if (!m) fail(ErrorCode::Semantic, "metric." + sel.metric + ": unknown metric");
    if (m->bundle != bundle) fail(ErrorCode::Semantic, "metric." + sel.metric + ": not a metric on " + bundle);
    return *m;
  }
  for (const auto& m : d.metrics)
    if (m.bundle == bundle) return m;
  fail(ErrorCode::Semantic, "bundle." + bundle + ": no metric declared");
}

const OperatorDecl* selected_operator(const Descriptor& d, const Selection& sel) {
  if (!sel.op.empty()) {
    const OperatorDecl* o = d.op(sel.op);
    if (!o) fail(ErrorCode::Semantic, "operator." + sel.op + ": unknown operator");
    return o;
  }
  return d.operators.empty() ? nullptr : &d.operators.front();
}

void fail_report(Report& r, ErrorCode code, const std::string& path, const ValidationReport& v) {
  r.add(path, "invalid");
  for (const auto& msg : v.violations) r.add(path + ".violation", msg);
  if (!r.error) r.error = code;
}

void run_validate(Report& r, const Descriptor& d) {
  const Atlas& a = *d.atlas;
  ValidationReport va = validate_atlas(a);
  if (va.ok)
    r.add("surface." + a.name, "ok");
  else
    fail_report(r, ErrorCode::InvalidAtlas, "surface." + a.name, va);
  for (const auto& b : d.bundle_decls) {
    ValidationReport v = validate_cocycle(d.bundle(b.name));
    if (v.ok)
      r.add("bundle." + b.name, "ok");
    else
      fail_report(r, ErrorCode::InvalidBundle, "bundle." + b.name, v);
  }
  for (const auto& m : d.metrics) {
    ValidationReport v = m.bundle.empty() ? check_metric(a, m.metric) : check_bundle_metric(d.bundle(m.bundle), m.metric);
    if (v.ok)
      r.add("metric." + m.name, "ok");
    else
      fail_report(r, ErrorCode::BadMetric, "metric." + m.name, v);
  }
  for (const auto& o : d.operators) {
    ValidationReport v = validate_operator(d.build_operator(o));
    if (v.ok)
      r.add("operator." + o.name, "ok");
    else
      fail_report(r, ErrorCode::InvalidOperator, "operator." + o.name, v);
  }
  r.add("verdict", r.error ? "invalid" : "valid");
}

void run_degree(Report& r, const Cocycle& e) {
  DegreeReport deg = degree(e);
  r.add("degree", std::to_string(deg.total));
  for (const auto& [dir, v] : deg.per_overlap) r.add("degree." + dir_key(e.atlas(), dir), std::to_string(v));
}

void run_h0(Report& r, const Cocycle& e, int bound) {
  int b = bound > 0 ? bound : auto_bound(e);
  auto basis = global_sections(e, b);
  r.add("bound", std::to_string(b));
  r.add("dim_real", std::to_string(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    add_family(r, e.atlas(), "section." + std::to_string(k), basis[k].per_chart);
}

void run_endalg(Report& r, const Cocycle& e, int bound) {
  EndAlgebra alg = end_algebra(e, bound);
  r.add("dim_real", std::to_string(alg.dim_real()));
  for (std::size_t k = 0; k < alg.basis.size(); ++k)
    add_family(r, e.atlas(), "basis." + std::to_string(k), alg.basis[k].per_chart);
}

void add_lambda(Report& r, const std::string& prefix, const Cocycle& f) {
  try {
    LambdaNilpotentReport lam = check_lambda_nilpotent(f);
    r.add(prefix + ".lambda_nilpotent", yes_no(lam.ok));
    for (const auto& entry : lam.entries)
      if (!entry.ok) r.add(prefix + ".lambda_witness", entry.witness);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Decomposable) throw;
    r.add(prefix + ".lambda_nilpotent", "decomposable");
  }
}

void run_remak(Report& r, const Cocycle& e, const SolverConfig& cfg) {
  RemakResult rem = remak_decompose(e, cfg.trials, cfg.seed);
  r.add("seed", std::to_string(rem.seed));
  r.add("split", yes_no(rem.split));
  r.add("factors", std::to_string(rem.factors.size()));
  for (std::size_t k = 0; k < rem.factors.size(); ++k) {
    std::string p = "factor." + std::to_string(k);
    r.add(p + ".rank", std::to_string(rem.factors[k].rank()));
    if (e.atlas().compact) r.add(p + ".degree", std::to_string(degree(rem.factors[k]).total));
    add_lambda(r, p, rem.factors[k]);
  }
  add_family(r, e.atlas(), "frame", rem.frames);
}

void run_atiyah(Report& r, const Cocycle& e) {
  CechCochain at = atiyah_cocycle(e);
  r.add("valued_in", at.valued_in);
  r.add("cocycle_law", yes_no(satisfies_cocycle_law(e, at)));
  add_cochain(r, e.atlas(), "theta", at);
}

void add_connection(Report& r, const Cocycle& e, const ConnectionResult& c) {
  r.add("verdict", verdict_name(c.verdict));
  r.add("bound", std::to_string(c.bound));
  if (c.verdict == Verdict::Exists) {
    r.add("transformation_law", yes_no(satisfies_transformation_law(e, c.forms)));
    add_family(r, e.atlas(), "form", c.forms);
  }
  if (c.certificate) r.add("certificate", c.certificate->value_2pii_units.str());
  if (c.certificate_phi) add_family(r, e.atlas(), "certificate.phi", c.certificate_phi->per_chart);
  if (c.verdict == Verdict::Unknown && !r.error) r.error = ErrorCode::BoundTooSmall;
}

void run_connect(Report& r, const Cocycle& e, int bound) { add_connection(r, e, solve_connection(e, bound)); }

void run_pair(Report& r, const Cocycle& e, int bound) {
  CechCochain at = atiyah_cocycle(e);
  PairingValue id = trace_pairing(e, at, identity_section(e));
  r.add("pairing.identity", id.value_2pii_units.str());
  r.add("residue_sum.identity", id.residue_sum.str());
  r.add("degree", std::to_string(degree(e).total));
  EndAlgebra alg = end_algebra(e, bound);
  for (std::size_t k = 0; k < alg.basis.size(); ++k)
    r.add("pairing.basis." + std::to_string(k), trace_pairing(e, at, alg.basis[k]).value_2pii_units.str());
}

void run_jets(Report& r, const Descriptor& d, const Cocycle& e, const Selection& sel, int bound) {
  JetBundle j = jet_cocycle(e);
  r.add("jet.rank", std::to_string(j.cocycle.rank()));
  CechCochain cls = jet_extension_class(e);
  add_cochain(r, e.atlas(), "jet_class", cls);
  auto witness = solve_coboundary(e, add(cls, atiyah_cocycle(e)), bound);
  r.add("class_plus_atiyah_exact", yes_no(witness.has_value()));
  if (witness) add_family(r, e.atlas(), "witness", *witness);
  if (const OperatorDecl* o = selected_operator(d, sel)) {
    FirstOrderOp p = d.build_operator(*o);
    ValidationReport v = validate_operator(p);
    r.add("operator", o->name);
    if (!v.ok) {
      fail_report(r, ErrorCode::InvalidOperator, "operator." + o->name, v);
      return;
    }
    add_family(r, e.atlas(), "symbol", symbol(p).per_chart);
    DerivativeCheck dc = is_derivative_endomorphism(p);
    r.add("derivative_endomorphism", yes_no(dc.yes));
    if (!dc.witness.empty()) r.add("derivative_witness", dc.witness);
    add_family(r, e.atlas(), "jet_morphism", jet_morphism(p).per_chart);
  }
}

SmoothConnection chern_for(Report& r, const Descriptor& d, const Cocycle& e, const Selection& sel) {
  const MetricDecl& m = selected_metric(d, sel, e.name());
  r.add("metric", m.name);
  ValidationReport v = check_bundle_metric(e, m.metric);
  if (!v.ok) {
    std::string msg = v.violations.empty() ? "metric does not glue" : v.violations.front();
    fail(ErrorCode::BadMetric, "metric." + m.name + ": " + msg);
  }
  return chern_connection(e, m.metric);
}

void run_chern(Report& r, const Descriptor& d, const Cocycle& e, const Selection& sel) {
  SmoothConnection c = chern_for(r, d, e, sel);
  r.add("compatible", yes_no(c.compatible));
  r.add("connection_glues", yes_no(check_connection(c).ok));
  add_smooth(r, e.atlas(), "a", c.a);
  CurvatureForms f = curvature(c);
  r.add("f20_zero", yes_no(std::all_of(f.f20.per_chart.begin(), f.f20.per_chart.end(), [](const SMat& x) { return x.is_zero(); })));
  r.add("f02_zero", yes_no(std::all_of(f.f02.per_chart.begin(), f.f02.per_chart.end(), [](const SMat& x) { return x.is_zero(); })));
  add_smooth(r, e.atlas(), "f11", f.f11.per_chart);
}

void run_compare(Report& r, const Descriptor& d, const Cocycle& e, const Selection& sel) {
  CompareReport c = cech_dolbeault_compare(chern_for(r, d, e, sel));
  r.add("dbar_closed", yes_no(c.dbar_closed));
  r.add("equals_minus_theta", yes_no(c.equals_minus_theta));
  r.add("exact", yes_no(c.exact));
  add_cochain(r, e.atlas(), "u", c.u);
  add_family(r, e.atlas(), "witness", c.witness);
}

void run_report(Report& r, const Cocycle& e, const SolverConfig& cfg) {
  CriterionReport c = connection_criterion(e, cfg.trials, cfg.seed);
  r.add("degree", std::to_string(degree(e).total));
  r.add("factors", std::to_string(c.remak.factors.size()));
  r.add("factor_degrees", int_list(c.factor_degrees));
  r.add("predicted", c.predicted_exists ? "Exists" : "NotExists");
  r.add("agree", yes_no(c.agree));
  add_connection(r, e, c.solver);
}

}  // namespace

std::optional<Command> command_from_name(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kNames); ++i)
    if (name == kNames[i]) return static_cast<Command>(i);
  return std::nullopt;
}

const char* command_name(Command c) { return kNames[static_cast<std::size_t>(c)]; }

std::vector<std::string> command_names() { return {std::begin(kNames), std::end(kNames)}; }

std::string Report::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return "";
}

int Report::exit_code() const { return error ? exit_status(*error) : 0; }

std::string Report::render(Format f) const {
  std::ostringstream out;
  const char* sep = f == Format::Machine ? "=" : ": ";
  out << "command" << sep << command << "\n";
  for (const auto& [k, v] : fields) out << k << sep << v << "\n";
  if (error) out << "error" << sep << code_name(*error) << "\n";
  return out.str();
}

Report error_report(const std::string& command, const Error& e) {
  Report r;
  r.command = command;
  r.add("message", e.what());
  r.error = e.code();
  return r;
}

Report run_command(Command cmd, const Descriptor& d, const Selection& sel) {
  Report r;
  r.command = command_name(cmd);
  r.add("degree_sign", std::to_string(kDegreeSign));
  r.add("pairing_sign", std::to_string(kPairingSign));
  try {
    if (cmd == Command::Validate) {
      run_validate(r, d);
      return r;
    }
    const Cocycle& e = selected_bundle(d, sel);
    r.add("bundle", e.name());
    r.add("rank", std::to_string(e.rank()));
    int bound = d.config.bound;
    switch (cmd) {
      case Command::Validate: break;
      case Command::Degree: run_degree(r, e); break;
      case Command::H0: run_h0(r, e, bound); break;
      case Command::EndAlg: run_endalg(r, e, bound); break;
      case Command::Remak: run_remak(r, e, d.config); break;
      case Command::Atiyah: run_atiyah(r, e); break;
      case Command::Connect: run_connect(r, e, bound); break;
      case Command::Pair: run_pair(r, e, bound); break;
      case Command::Jets: run_jets(r, d, e, sel, bound); break;
      case Command::Chern: run_chern(r, d, e, sel); break;
      case Command::Compare: run_compare(r, d, e, sel); break;
      case Command::Report: run_report(r, e, d.config); break;
    }
  } catch (const Error& err) {
    r.add("message", err.what());
    r.error = err.code();
  }
  return r;
}

}  // namespace klein::cli
