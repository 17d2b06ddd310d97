// Copyright 2026 The fvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Timings for the hot paths: gate metrics, sector construction, VQE, the
// Monte Carlo potential fit and the model-space extrapolation.

#include <benchmark/benchmark.h>

#include "fvqe/nuclear.hpp"
#include "fvqe/potential.hpp"
#include "fvqe/qfp.hpp"
#include "fvqe/schwinger.hpp"
#include "fvqe/vqe.hpp"

namespace {

using namespace fvqe;

SectorProblem standard_sector(const char* charges) {
    ChargeConfig c = ChargeConfig::parse(charges);
    const StudyConfiguration& s = study_configuration(c);
    LatticeSpec spec;
    spec.lambda = s.lambda;
    return build_sector(spec, c, s.sector);
}

void BM_HadamardMetrics(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hadamard_metrics(0.8283));
}
BENCHMARK(BM_HadamardMetrics);

void BM_BuildSector(benchmark::State& state) {
    const char* names[] = {"vac", "0,3", "0,4,1"};
    const char* name = names[state.range(0)];
    for (auto _ : state) benchmark::DoNotOptimize(standard_sector(name));
    state.SetLabel(name);
}
BENCHMARK(BM_BuildSector)->DenseRange(0, 2);

void BM_Census(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& s : study_configurations()) {
            LatticeSpec spec;
            spec.lambda = s.lambda;
            benchmark::DoNotOptimize(build_sector(spec, s.charges, s.sector));
        }
    }
}
BENCHMARK(BM_Census)->Unit(benchmark::kMillisecond);

void BM_Vqe(benchmark::State& state) {
    const char* names[] = {"vac", "0,3", "0,4,1"};
    const char* name = names[state.range(0)];
    HermitianOperator h(standard_sector(name).projected.dense());
    VqeConfig c;
    c.max_iter = 150;
    for (auto _ : state) benchmark::DoNotOptimize(vqe_minimize(h, NoiseModel{0.01, 0.0, 3}, c));
    state.SetLabel(name);
}
BENCHMARK(BM_Vqe)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_ExponentialFit(benchmark::State& state) {
    std::vector<FitPoint> pts = {{1.0, {-1.4756, 0.0, 0.015}}, {3.0, {-0.2606, 0.0, 0.003}}};
    FitOptions o;
    o.samples = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fit_exponential(pts, 8, Channel::opposite, o));
}
BENCHMARK(BM_ExponentialFit)->Arg(0)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EftMatch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(match_eft(3.75, 0.937, 4.5));
}
BENCHMARK(BM_EftMatch)->Unit(benchmark::kMillisecond);

void BM_Extrapolate(benchmark::State& state) {
    ExtrapolationOptions o;
    o.threshold = -2.2246;
    o.replicas = static_cast<int>(state.range(0));
    std::vector<ExtrapolationPoint> pts;
    const double sys[] = {0.001, 0.005, 0.01};
    int i = 0;
    for (double l : {7.5, 9.0, 10.5}) {
        double e = extrapolation_curve(l, -8.5, 30.0, o);
        pts.push_back({l, {e, 0.0, sys[i++] * std::abs(e)}});
    }
    for (auto _ : state) benchmark::DoNotOptimize(extrapolate(pts, o));
}
BENCHMARK(BM_Extrapolate)->Arg(0)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
