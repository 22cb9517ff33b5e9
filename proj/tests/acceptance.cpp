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

// Acceptance suite. Each criterion prints one PASS or FAIL line; the exit
// status is nonzero when any criterion fails. All checks are exact.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "klein/atiyah.hpp"
#include "klein/cli/descriptor.hpp"
#include "klein/diffop.hpp"
#include "klein/fixtures.hpp"
#include "klein/sections.hpp"
#include "klein/smooth.hpp"

using namespace klein;
using klein::cli::Descriptor;

namespace {

std::string g_fixture_dir = KLEIN_FIXTURE_DIR;

Descriptor load(const std::string& name) {
  std::ifstream in(g_fixture_dir + "/" + name);
  if (!in) throw std::runtime_error("cannot open fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return cli::parse_descriptor(ss.str());
}

std::string line_file(int n) { return n < 0 ? "sphere_line_m" + std::to_string(-n) + ".kd" : "sphere_line_" + std::to_string(n) + ".kd"; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

// Every bundle declared in any fixture file, tagged with its origin.
struct Fixtures {
  std::vector<Descriptor> files;
  std::vector<std::pair<std::string, const Cocycle*>> bundles;

  Fixtures() {
    for (int n = -3; n <= 3; ++n) files.push_back(load(line_file(n)));
    files.push_back(load("sphere.kd"));
    files.push_back(load("klein_bottle.kd"));
    for (const auto& d : files)
      for (const auto& [name, e] : d.bundles) bundles.emplace_back(d.atlas->name + "/" + e.name(), &e);
  }

  const Descriptor& sphere() const { return files[7]; }
  const Descriptor& klein_bottle() const { return files[8]; }
  const Cocycle& line(int n) const { return files[static_cast<std::size_t>(n + 3)].bundle("L"); }
};

bool all_zero(const std::vector<SMat>& ms) {
  for (const auto& m : ms)
    if (!m.is_zero()) return false;
  return true;
}

bool all_zero(const std::vector<LMat>& ms) {
  for (const auto& m : ms)
    if (!m.is_zero()) return false;
  return true;
}

bool is_nilpotent(const SectionFamily& phi) {
  SectionFamily p = phi;
  for (std::size_t k = 1; k < phi.per_chart.front().rows(); ++k) p = compose(p, phi);
  return all_zero(p.per_chart);
}

// --- criteria --------------------------------------------------------------

Outcome criterion1(const Fixtures& fx) {
  Outcome o;
  for (int n = -3; n <= 3; ++n) {
    ConnectionResult r = solve_connection(fx.line(n));
    std::string tag = "LINE(" + std::to_string(n) + ")";
    o.check((r.verdict == Verdict::Exists) == (n == 0), tag + " verdict " + verdict_name(r.verdict));
    if (n != 0) {
      o.check(r.verdict == Verdict::NotExists && r.certificate.has_value(), tag + " has no certificate");
      if (r.certificate)
        o.check(r.certificate->value_2pii_units == GaussianRational(n),
                tag + " certificate " + r.certificate->value_2pii_units.str());
    }
  }
  return o;
}

Outcome criterion2(const Fixtures& fx) {
  Outcome o;
  const Cocycle& e = fx.sphere().bundle("E");
  o.check(degree(e).total == 0, "LINE(1)+LINE(-1) degree is not 0");
  o.check(solve_connection(e).verdict == Verdict::NotExists, "LINE(1)+LINE(-1) admits a connection");
  o.check(solve_connection(fx.sphere().bundle("OO")).verdict == Verdict::Exists, "LINE(0)+LINE(0) has no connection");
  for (const auto& [name, b] : fx.bundles) {
    CriterionReport c = connection_criterion(*b);
    o.check(c.agree, name + " prediction and solver disagree");
  }
  return o;
}

Outcome criterion3(const Fixtures& fx) {
  Outcome o;
  for (const auto& [name, b] : fx.bundles) {
    PairingValue p = trace_pairing(*b, atiyah_cocycle(*b), identity_section(*b));
    o.check(p.value_2pii_units == GaussianRational(degree(*b).total), name + " pairing " + p.value_2pii_units.str());
  }
  const Cocycle& ext = fx.klein_bottle().bundle("EXT");
  EndAlgebra alg = end_algebra(ext);
  int nilpotents = 0;
  for (const auto& phi : alg.basis) {
    if (!is_nilpotent(phi)) continue;
    ++nilpotents;
    PairingValue p = trace_pairing(ext, atiyah_cocycle(ext), phi);
    o.check(p.value_2pii_units.is_zero(), "EXT nilpotent pairing " + p.value_2pii_units.str());
  }
  o.check(nilpotents > 0, "EXT has no nilpotent endomorphism");
  return o;
}

Outcome criterion4(const Fixtures& fx) {
  Outcome o;
  std::vector<const Cocycle*> targets;
  for (int n = -2; n <= 2; ++n) targets.push_back(&fx.line(n));
  targets.push_back(&fx.sphere().bundle("E"));
  targets.push_back(&fx.sphere().bundle("OO"));
  for (const Cocycle* e : targets) {
    CechCochain sum = add(jet_extension_class(*e), atiyah_cocycle(*e));
    auto tau = solve_coboundary(*e, sum);
    o.check(tau.has_value(), e->name() + " jet class plus Atiyah class is not exact");
    if (tau) o.check(coboundary(*e, *tau).overlap == sum.overlap, e->name() + " witness does not reproduce the sum");
  }
  return o;
}

Outcome criterion5(const Fixtures& fx) {
  Outcome o;
  for (int n = -3; n <= 3; ++n) {
    const Cocycle& e = fx.line(n);
    CompareReport c = cech_dolbeault_compare(chern_connection(e, fs_line_metric(e.atlas(), n)));
    std::string tag = "LINE(" + std::to_string(n) + ")";
    o.check(c.dbar_closed, tag + " u is not dbar-closed");
    o.check(c.exact, tag + " u + at(E) is not an exact holomorphic coboundary");
  }
  for (const auto& m : fx.sphere().metrics) {
    if (m.bundle.empty()) continue;
    CompareReport c = cech_dolbeault_compare(chern_connection(fx.sphere().bundle(m.bundle), m.metric));
    o.check(c.dbar_closed && c.exact, "metric " + m.name + " comparison fails");
  }
  return o;
}

Outcome criterion6(const Fixtures& fx) {
  Outcome o;
  std::size_t dim = global_sections(fx.sphere().bundle("O")).size();
  o.check(dim == 1, "real dimension of global sections of the trivial line is " + std::to_string(dim));
  std::size_t kb = global_sections(fx.klein_bottle().bundle("O")).size();
  o.check(kb == 1, "Klein bottle trivial line has real dimension " + std::to_string(kb));
  return o;
}

Outcome criterion7(const Fixtures& fx) {
  Outcome o;
  for (const auto& [name, b] : fx.bundles) {
    RemakResult rem = remak_decompose(*b);
    if (rem.split) continue;
    LambdaNilpotentReport rep = check_lambda_nilpotent(*b);
    for (const auto& entry : rep.entries)
      o.check(entry.ok, name + " basis element " + std::to_string(entry.index) + ": " + entry.witness);
  }
  return o;
}

SmoothConnection holomorphic_connection(const Cocycle& e, const std::vector<LMat>& forms) {
  SmoothConnection d{e, {}, {}, false};
  for (const auto& w : forms) {
    d.a.push_back(SMat::from_laurent(w));
    d.b.push_back(SMat(w.rows(), w.cols()));
  }
  return d;
}

Outcome criterion8(const Fixtures& fx) {
  Outcome o;
  std::mt19937_64 rng(20261016);
  // Solver output obeys the transformation law, and holomorphic connections are flat.
  for (const auto& [name, b] : fx.bundles) {
    ConnectionResult r = solve_connection(*b);
    if (r.verdict != Verdict::Exists) continue;
    o.check(satisfies_transformation_law(*b, r.forms), name + " solver forms violate the transformation law");
    CurvatureForms f = curvature(holomorphic_connection(*b, r.forms));
    o.check(all_zero(f.f11.per_chart), name + " holomorphic connection has curvature");
  }
  // Curvature gluing under random frame changes.
  std::vector<std::pair<const Cocycle*, DHermitianMetric>> metrized;
  for (const auto& m : fx.sphere().metrics)
    if (!m.bundle.empty()) metrized.emplace_back(&fx.sphere().bundle(m.bundle), m.metric);
  for (int n = -3; n <= 3; ++n) metrized.emplace_back(&fx.line(n), fs_line_metric(fx.line(n).atlas(), n));
  for (int k = 0; k < 100; ++k) {
    const auto& [e, h] = metrized[static_cast<std::size_t>(k) % metrized.size()];
    SmoothConnection d = chern_connection(*e, h);
    std::vector<LMat> frames = random_frames(e->atlas(), e->rank(), rng);
    SmoothConnection g = gauge(d, frames);
    CurvatureForms f = curvature(d);
    CurvatureForms fg = curvature(g);
    o.check(check_form_gluing(e->atlas(), fg.f11, &g.bundle).ok, e->name() + " gauged curvature does not glue");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      SMat p = SMat::from_laurent(frames[i]);
      o.check(fg.f11.per_chart[i] == p.inverse() * f.f11.per_chart[i] * p, e->name() + " curvature is not conjugated");
    }
    SmoothConnection c = chern_connection(g.bundle, gauge(h, frames));
    o.check(c.a == g.a, e->name() + " Chern connection does not commute with the frame change");
  }
  // Degree, pairing and verdicts are frame invariant.
  for (const auto& [name, b] : fx.bundles) {
    bool klein = b->atlas().name == "KLEIN_BOTTLE";
    long deg = degree(*b).total;
    Verdict v = solve_connection(*b).verdict;
    for (int t = 0; t < 2; ++t) {
      Cocycle f = frame_change(*b, random_frames(b->atlas(), b->rank(), rng, klein ? 0 : 1));
      o.check(degree(f).total == deg, name + " degree changed under a frame change");
      PairingValue p = trace_pairing(f, atiyah_cocycle(f), identity_section(f));
      o.check(p.value_2pii_units == GaussianRational(deg), name + " pairing changed under a frame change");
      o.check(solve_connection(f).verdict == v, name + " verdict changed under a frame change");
    }
  }
  return o;
}

SmoothFn random_fn(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<int> ex(0, 2);
  BiPoly num;
  for (int t = 0; t < 3; ++t)
    num.add_term(ex(rng), ex(rng), GaussianRational(Rational(coef(rng)), Rational(coef(rng))));
  BiPoly den = BiPoly(1) + BiPoly::monomial(1, 1, 1);
  return SmoothFn::from_parts(num, {{den, 3}});
}

Outcome criterion9(const Fixtures& fx) {
  Outcome o;
  const Descriptor& s = fx.sphere();
  const Atlas& a = *s.atlas;
  const DHermitianMetric& g = s.metric("g")->metric;
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    int p = k % 2, q = (k / 2) % 2;
    SmoothForm psi{p, q, FormValues::Scalar, (k / 4) % 2 == 1, {}};
    SMat c(1, 1);
    c(0, 0) = random_fn(rng);
    psi.per_chart = {c, SMat(1, 1)};
    psi.per_chart[1] = transport_form(a, nullptr, {0, 1}, psi);
    o.check(check_form_gluing(a, psi).ok, "random form does not glue");
    SmoothForm star = hodge_star(a, psi, g);
    o.check(star.twisted != psi.twisted, "star does not flip the twist");
    o.check(check_form_gluing(a, star).ok, "star output does not glue");
    SmoothForm lhs = conj_form(star);
    SmoothForm rhs = hodge_star(a, conj_form(psi), g);
    o.check(lhs.per_chart == rhs.per_chart, "star does not commute with conjugation");
    if (q == 0) {
      o.check(all_zero(dbar(dbar(psi)).per_chart), "dbar squared is nonzero");
      const SmoothFn& f = c(0, 0);
      o.check(f.del_z().del_zbar() == f.del_zbar().del_z(), "mixed partials disagree");
    }
  }
  std::mt19937_64 frng(11);
  for (const auto& m : s.metrics) {
    if (m.bundle.empty()) continue;
    SmoothConnection d = chern_connection(s.bundle(m.bundle), m.metric);
    for (const auto& conn : {d, gauge(d, random_frames(a, d.bundle.rank(), frng))}) {
      o.check(conn.compatible, m.name + " Chern connection is not compatible");
      CurvatureForms f = curvature(conn);
      o.check(all_zero(f.f02.per_chart), m.name + " curvature has a (0,2) part");
      o.check(all_zero(dbar(f.f11).per_chart), m.name + " dbar of curvature is nonzero");
    }
  }
  return o;
}

GaussianRational nonzero_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coef(-4, 4);
  std::uniform_int_distribution<long> den(1, 5);
  for (;;) {
    Rational re(coef(rng), den(rng));
    re.canonicalize();
    GaussianRational c(re, Rational(coef(rng)));
    if (!c.is_zero()) return c;
  }
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

Outcome criterion10(const Fixtures& fx) {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> ex(-2, 2);
  const Descriptor& s = fx.sphere();
  int detected = 0;
  for (int k = 0; k < 100; ++k) {
    int kind = k % 3;
    if (kind == 0) {
      const Cocycle& e = *pick(fx.bundles, rng).second;
      if (validate_cocycle(e).ok == false) {
        o.check(false, e.name() + " fixture is already invalid");
        continue;
      }
      Cocycle bad = e;
      Dir d = pick(e.directions(), rng);
      HalfMat h = e.source(d);
      std::size_t r = std::uniform_int_distribution<std::size_t>(0, h.m.rows() - 1)(rng);
      std::size_t c = std::uniform_int_distribution<std::size_t>(0, h.m.cols() - 1)(rng);
      h.m(r, c) += LaurentPoly::monomial(nonzero_scalar(rng), ex(rng));
      bad.set_source(d, h);
      if (!validate_cocycle(bad).ok) ++detected;
    } else if (kind == 1) {
      const auto& m = pick(s.metrics, rng);
      DHermitianMetric bad = m.metric;
      std::size_t i = std::uniform_int_distribution<std::size_t>(0, bad.per_chart.size() - 1)(rng);
      SMat& mat = bad.per_chart[i];
      std::size_t r = std::uniform_int_distribution<std::size_t>(0, mat.rows() - 1)(rng);
      std::size_t c = std::uniform_int_distribution<std::size_t>(0, mat.cols() - 1)(rng);
      mat(r, c) += SmoothFn(BiPoly::monomial(nonzero_scalar(rng), ex(rng) + 2, ex(rng) + 2));
      bool ok = m.bundle.empty() ? check_metric(*s.atlas, bad).ok : check_bundle_metric(s.bundle(m.bundle), bad).ok;
      if (!ok) ++detected;
    } else {
      const auto& decl = pick(s.operators, rng);
      FirstOrderOp p = s.build_operator(decl);
      std::size_t i = std::uniform_int_distribution<std::size_t>(0, p.per_chart.size() - 1)(rng);
      LMat& m = (k / 3) % 2 ? p.per_chart[i].a : p.per_chart[i].b;
      std::size_t r = std::uniform_int_distribution<std::size_t>(0, m.rows() - 1)(rng);
      std::size_t c = std::uniform_int_distribution<std::size_t>(0, m.cols() - 1)(rng);
      m(r, c) += LaurentPoly::monomial(nonzero_scalar(rng), ex(rng));
      if (!validate_operator(p).ok) ++detected;
    }
  }
  o.check(detected == 100, std::to_string(detected) + "/100 mutations detected");
  if (o.pass) o.detail = "100/100 mutations detected";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_fixture_dir = argv[1];
  auto start = std::chrono::steady_clock::now();
  const Fixtures fx;
  const std::vector<std::pair<const char*, std::function<Outcome(const Fixtures&)>>> criteria = {
      {"connection exists iff degree 0", criterion1},
      {"indecomposable factors refine the criterion", criterion2},
      {"residue pairing equals degree", criterion3},
      {"jet class cancels the Atiyah class", criterion4},
      {"Chern cochain matches the Atiyah class", criterion5},
      {"global functions are real constants", criterion6},
      {"endomorphisms are real scalar plus nilpotent", criterion7},
      {"transformation laws and frame invariance", criterion8},
      {"Hodge and Dolbeault identities", criterion9},
      {"single-coefficient corruption is detected", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second(fx);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::cout << "criterion " << (i + 1) << ": " << (out.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
    if (!out.detail.empty()) std::cout << " (" << out.detail << ")";
    std::cout << std::endl;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "acceptance: " << (criteria.size() - failures) << "/" << criteria.size() << " passed in " << secs << "s"
            << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
