// Copyright 2026 The EPSM Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "epsm/pipeline.hpp"
#include "epsm/sensor_sim.hpp"
#include "epsm/synthetic.hpp"

namespace {

const std::vector<epsm::Scenario>& corpus() {
  static const std::vector<epsm::Scenario> c = [] {
    std::vector<epsm::Scenario> out;
    for (auto& s : epsm::make_synthetic_corpus(42, 20)) {
      out.push_back(epsm::simulate_scenario(s, *s.sensor));
    }
    return out;
  }();
  return c;
}

const epsm::VehicleSeverityModel& model() {
  static const auto m = epsm::load_severity_model(epsm::default_severity_model_path());
  return m;
}

void BM_EvaluateSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsm::evaluate_corpus_serial(corpus(), model()));
  }
}
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);

void BM_EvaluateParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsm::evaluate_corpus_parallel(corpus(), model(), threads));
  }
}
BENCHMARK(BM_EvaluateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SimulateSerial(benchmark::State& state) {
  const auto& s = corpus().front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsm::simulate_scenario(s, epsm::SensorConfig{}));
  }
}
BENCHMARK(BM_SimulateSerial)->Unit(benchmark::kMillisecond);

void BM_SimulateParallel(benchmark::State& state) {
  const auto& s = corpus().front();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        epsm::simulate_scenario(s, epsm::SensorConfig{}, epsm::Execution::parallel(threads)));
  }
}
BENCHMARK(BM_SimulateParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
