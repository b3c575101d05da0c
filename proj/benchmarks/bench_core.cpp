// Copyright 2026 The qdistill authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "qdistill/detector.hpp"
#include "qdistill/elements.hpp"
#include "qdistill/noise.hpp"
#include "qdistill/po_equivalence.hpp"
#include "qdistill/protocol.hpp"

namespace {

using namespace qdistill;

DensityOperator make_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_dual_rail_state(rng);
}

void BM_LiftUnitary(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const SingleParticleUnitary u = polarization_rotations(sample_haar_su2(rng), sample_haar_su2(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lift_unitary(u));
  }
}
BENCHMARK(BM_LiftUnitary);

void BM_ApplyUnitary(benchmark::State& state) {
  const DensityOperator rho = make_state(2);
  const TwoPhotonUnitary bs = lift_unitary(make_element(ElementSpec::beam_splitter()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_unitary(rho, bs));
  }
}
BENCHMARK(BM_ApplyUnitary);

void BM_MeasureParity(benchmark::State& state) {
  const TwoPhotonUnitary bs = lift_unitary(make_element(ElementSpec::beam_splitter()));
  const DensityOperator rho = apply_unitary(make_state(3), bs);
  const DetectorSpec detector{Spatial::L, 0.05, 0.02};
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_parity(rho, detector));
  }
}
BENCHMARK(BM_MeasureParity);

void BM_Depolarize(benchmark::State& state) {
  const DensityOperator rho = make_state(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(depolarize(rho));
  }
}
BENCHMARK(BM_Depolarize);

void BM_DepolarizeMonteCarlo(benchmark::State& state) {
  const DensityOperator rho = make_state(5);
  std::mt19937_64 rng(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(depolarize_mc(rho, rng));
  }
}
BENCHMARK(BM_DepolarizeMonteCarlo);

void BM_Concurrence(benchmark::State& state) {
  const DensityOperator rho = make_state(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polarization_concurrence(rho));
  }
}
BENCHMARK(BM_Concurrence);

void BM_RunExact(benchmark::State& state) {
  ProtocolConfig config;
  config.variant = Variant::Depolarizing;
  config.iterations = static_cast<int>(state.range(0));
  config.seed = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_exact(config));
  }
}
BENCHMARK(BM_RunExact)->Arg(1)->Arg(5)->Arg(20);

void BM_RunTrajectories(benchmark::State& state) {
  ProtocolConfig config;
  config.variant = Variant::Depolarizing;
  config.mode = RunMode::MonteCarlo;
  config.iterations = 5;
  config.trajectories = static_cast<int>(state.range(0));
  config.seed = 9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trajectories(config));
  }
}
BENCHMARK(BM_RunTrajectories)->Arg(100)->Arg(1000);

void BM_FindPath(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_po_path(CanonicalTag::OneMinusLR, CanonicalTag::TwoPlusLR));
  }
}
BENCHMARK(BM_FindPath);

void BM_FindBridge(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_bridge_path(CanonicalTag::OneMinusLR, CanonicalTag::UMinusNO));
  }
}
BENCHMARK(BM_FindBridge);

}  // namespace

BENCHMARK_MAIN();
