// Compares the OpenMP kernels against their serial references on seeded
// corpora. The interesting output is the ratio between the *_serial and the
// parallel variant of the same kernel at the same corpus size.

#include "pou/batch.hpp"
#include "pou/sampling.hpp"
#include "pou/suites.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

namespace {

std::vector<pou::ProbVector> corpus(std::int64_t size) {
    std::vector<pou::ProbVector> points;
    points.reserve(static_cast<std::size_t>(size));
    for (std::int64_t i = 0; i < size; ++i) {
        pou::suites::CaseRng rng(99, static_cast<std::uint64_t>(i));
        points.push_back(pou::suites::random_prob_vector(rng, 8, 6));
    }
    return points;
}

pou::MetricSample line_sample(std::int64_t size) {
    std::vector<pou::PointId> ids;
    std::vector<pou::Rational> dense(static_cast<std::size_t>(size * size));
    for (std::int64_t i = 0; i < size; ++i) {
        ids.push_back("p" + std::to_string(i));
        for (std::int64_t j = 0; j < size; ++j) {
            dense[static_cast<std::size_t>(i * size + j)] =
                pou::Rational(i > j ? i - j : j - i);
        }
    }
    return pou::MetricSample(std::move(ids), std::move(dense));
}

pou::IndexedCover interval_cover(const pou::MetricSample& sample, std::int64_t width) {
    std::map<pou::VertexLabel, std::set<pou::PointId>> sets;
    const auto n = static_cast<std::int64_t>(sample.size());
    for (std::int64_t start = 0; start < n; start += width / 2 + 1) {
        std::set<pou::PointId> members;
        for (std::int64_t i = start; i < std::min(n, start + width); ++i) {
            members.insert(sample.ids()[static_cast<std::size_t>(i)]);
        }
        sets.emplace("u" + std::to_string(start), std::move(members));
    }
    return pou::IndexedCover(std::move(sets));
}

void bm_derive_all(benchmark::State& state) {
    const auto points = corpus(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pou::batch::derive_all(points));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_derive_all_serial(benchmark::State& state) {
    const auto points = corpus(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pou::batch::derive_all_serial(points));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_pairwise(benchmark::State& state) {
    const auto points = corpus(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pou::batch::pairwise_derivative_distances(points));
    }
}

void bm_pairwise_serial(benchmark::State& state) {
    const auto points = corpus(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            pou::batch::pairwise_derivative_distances_serial(points));
    }
}

void bm_distance_pou(benchmark::State& state) {
    const auto sample = line_sample(state.range(0));
    const auto cover = interval_cover(sample, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pou::distance_pou(sample, cover));
    }
}

void bm_distance_pou_serial(benchmark::State& state) {
    const auto sample = line_sample(state.range(0));
    const auto cover = interval_cover(sample, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pou::distance_pou_serial(sample, cover));
    }
}

} // namespace

BENCHMARK(bm_derive_all)->Arg(1000)->Arg(10000);
BENCHMARK(bm_derive_all_serial)->Arg(1000)->Arg(10000);
BENCHMARK(bm_pairwise)->Arg(200)->Arg(400);
BENCHMARK(bm_pairwise_serial)->Arg(200)->Arg(400);
BENCHMARK(bm_distance_pou)->Arg(64)->Arg(128);
BENCHMARK(bm_distance_pou_serial)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
