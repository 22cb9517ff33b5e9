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

#include <benchmark/benchmark.h>

#include <random>

#include "klein/atiyah.hpp"
#include "klein/bundle.hpp"
#include "klein/fixtures.hpp"
#include "klein/sections.hpp"
#include "klein/smooth.hpp"

namespace {

using namespace klein;

void BM_GlobalSectionsLine(benchmark::State& state) {
  Cocycle e = fixtures::line(fixtures::sphere_twist(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(global_sections(e));
}
BENCHMARK(BM_GlobalSectionsLine)->DenseRange(0, 6, 2);

void BM_EndAlgebraSum(benchmark::State& state) {
  AtlasPtr s = fixtures::sphere_twist();
  int n = static_cast<int>(state.range(0));
  Cocycle e = direct_sum(fixtures::line(s, n), fixtures::line(s, -n));
  for (auto _ : state) benchmark::DoNotOptimize(end_algebra(e));
}
BENCHMARK(BM_EndAlgebraSum)->DenseRange(1, 3);

void BM_SolveConnectionLine(benchmark::State& state) {
  Cocycle e = fixtures::line(fixtures::sphere_twist(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_connection(e));
}
BENCHMARK(BM_SolveConnectionLine)->DenseRange(-3, 3, 3);

void BM_SolveConnectionFramedExtension(benchmark::State& state) {
  AtlasPtr k = fixtures::klein_bottle();
  std::mt19937_64 rng(1);
  Cocycle e = frame_change(fixtures::unipotent_extension(k), random_frames(*k, 2, rng, 0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_connection(e));
}
BENCHMARK(BM_SolveConnectionFramedExtension);

void BM_RemakSum(benchmark::State& state) {
  AtlasPtr s = fixtures::sphere_twist();
  Cocycle e = direct_sum(fixtures::line(s, 1), fixtures::line(s, -1));
  for (auto _ : state) benchmark::DoNotOptimize(remak_decompose(e));
}
BENCHMARK(BM_RemakSum);

void BM_ChernCurvature(benchmark::State& state) {
  AtlasPtr s = fixtures::sphere_twist();
  int n = static_cast<int>(state.range(0));
  Cocycle e = fixtures::line(s, n);
  DHermitianMetric h = fs_line_metric(*s, n);
  for (auto _ : state) benchmark::DoNotOptimize(curvature(chern_connection(e, h)));
}
BENCHMARK(BM_ChernCurvature)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
