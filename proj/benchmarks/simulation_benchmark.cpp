// Copyright 2026 The wsnsim Authors
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


#include <vector>

#include <benchmark/benchmark.h>

#include "wsnsim/clustering.hpp"
#include "wsnsim/net_model.hpp"
#include "wsnsim/protocol.hpp"

namespace wsnsim {
namespace {

std::vector<SensorNode> field(std::int32_t n) {
    NetworkConfig c;
    c.n = n;
    c.rng_seed = 12345;
    return deploy(c);
}

void BM_SeedHeads(benchmark::State& state) {
    const auto nodes = field(static_cast<std::int32_t>(state.range(0)));
    const auto mode = static_cast<WeightMode>(state.range(1));
    const auto k = static_cast<std::int32_t>(nodes.size() / 10);
    const auto ctx = cold_start_context(nodes, 16.0);
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(seed_heads(nodes, k, mode, ctx, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes.size()) * k);
}
BENCHMARK(BM_SeedHeads)
    ->ArgsProduct({{100, 400, 1600},
                   {static_cast<int>(WeightMode::PlainD2), static_cast<int>(WeightMode::CombinedPc)}});

void BM_AssignMembers(benchmark::State& state) {
    const auto nodes = field(static_cast<std::int32_t>(state.range(0)));
    const auto ctx = cold_start_context(nodes, 16.0);
    Rng rng(2);
    const auto heads = seed_heads(nodes, static_cast<std::int32_t>(nodes.size() / 10),
                                  WeightMode::CombinedPc, ctx, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assign_members(nodes, heads, 16.0, WeightMode::CombinedPc, ctx));
    }
}
BENCHMARK(BM_AssignMembers)->Arg(100)->Arg(400)->Arg(1600);

// One round on a fresh field; the simulator is rebuilt outside the timer.
void BM_Round(benchmark::State& state) {
    const auto& protocol = protocol_matrix()[static_cast<std::size_t>(state.range(0))];
    NetworkConfig c;
    c.rng_seed = 3;
    for (auto _ : state) {
        state.PauseTiming();
        Simulator sim(c, protocol);
        state.ResumeTiming();
        benchmark::DoNotOptimize(sim.step());
    }
    state.SetLabel(protocol.name);
}
BENCHMARK(BM_Round)->DenseRange(0, 8);

void BM_FullRun(benchmark::State& state) {
    const auto& protocol = protocol_matrix()[static_cast<std::size_t>(state.range(0))];
    NetworkConfig c;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_simulation(c, protocol, ++seed));
    }
    state.SetLabel(protocol.name);
}
BENCHMARK(BM_FullRun)->Arg(0)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace wsnsim

BENCHMARK_MAIN();
