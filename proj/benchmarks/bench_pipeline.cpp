#include <benchmark/benchmark.h>

#include <random>

#include "cogmap/curation.hpp"
#include "cogmap/diagram.hpp"
#include "cogmap/ingest.hpp"
#include "cogmap/resolve.hpp"
#include "cogmap/rules.hpp"

#ifndef COGMAP_FIXTURES_DIR
#define COGMAP_FIXTURES_DIR "fixtures"
#endif

namespace {

using namespace cogmap;

std::string fixture(const char* name) {
    return std::string(COGMAP_FIXTURES_DIR) + "/urban_blight/" + name;
}

const CorpusBundle& corpus() {
    static CorpusBundle bundle = load_corpus(fixture("map.csv"), fixture("relations.csv"));
    return bundle;
}

const CurationSpec& baseline_spec() {
    static CurationSpec spec = parse_curation(read_file(fixture("baseline.cdsl")));
    return spec;
}

// Sparse random digraph with ~2 out-edges per node; keeps cycle counts sane
// as n grows.
CausalDiagram sparse_diagram(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CausalDiagram diagram;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        std::string name = "N" + std::to_string(i);
        names.push_back(name);
        diagram.variables[name] = CausalVariable{name, {{"a", {name + "_e"}}}};
    }
    std::size_t provenance = 0;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 2; ++k) {
            int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            if (j == i) continue;
            diagram = add_edge(std::move(diagram),
                               {names[i], names[j], EdgeKind::VariableCausal, {provenance++}});
        }
    }
    return diagram;
}

void BM_ParseCuration(benchmark::State& state) {
    std::string text = read_file(fixture("baseline.cdsl"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_curation(text));
    }
}
BENCHMARK(BM_ParseCuration);

void BM_BuildDiagram(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_diagram(corpus(), baseline_spec()));
    }
}
BENCHMARK(BM_BuildDiagram);

void BM_NearDuplicates(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(near_duplicates(corpus().entities, 0.5));
    }
}
BENCHMARK(BM_NearDuplicates);

void BM_FindCycles(benchmark::State& state) {
    CausalDiagram diagram = sparse_diagram(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_cycles(diagram));
    }
}
BENCHMARK(BM_FindCycles)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_CheckAll(benchmark::State& state) {
    CausalDiagram diagram = build_diagram(corpus(), baseline_spec()).diagram;
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_all(corpus(), baseline_spec(), diagram));
    }
}
BENCHMARK(BM_CheckAll);

}  // namespace

BENCHMARK_MAIN();
