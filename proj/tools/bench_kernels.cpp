// Compares the serial reference kernels against the OpenMP variants.
#include "spz/kernels.hpp"
#include "spz/sparse_poly_zonotope.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

spz::Matrix randomMatrix(spz::Index rows, spz::Index cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    spz::Matrix m(rows, cols);
    for (spz::Index i = 0; i < rows; ++i)
        for (spz::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

struct QuadCase {
    spz::Matrix Ghat;
    std::vector<spz::Matrix> Qs;
};

QuadCase makeQuadCase(spz::Index dim, spz::Index gens) {
    std::mt19937_64 rng(7);
    QuadCase testCase;
    testCase.Ghat = randomMatrix(dim, gens, rng);
    for (spz::Index i = 0; i < dim; ++i) testCase.Qs.push_back(randomMatrix(dim, dim, rng));
    return testCase;
}

void quadMapSerial(benchmark::State& state) {
    const auto testCase = makeQuadCase(state.range(0), state.range(1));
    for (auto _ : state) {
        auto out = spz::kernels::quadMapGeneratorsSerial(testCase.Ghat, testCase.Qs);
        benchmark::DoNotOptimize(out.data());
    }
}

void quadMapParallel(benchmark::State& state) {
    const auto testCase = makeQuadCase(state.range(0), state.range(1));
    for (auto _ : state) {
        auto out = spz::kernels::quadMapGeneratorsParallel(testCase.Ghat, testCase.Qs);
        benchmark::DoNotOptimize(out.data());
    }
}

void exponentSumsSerial(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(0, 4);
    spz::ExponentMatrix E(state.range(0), state.range(1));
    for (spz::Index i = 0; i < E.rows(); ++i)
        for (spz::Index j = 0; j < E.cols(); ++j) E(i, j) = dist(rng);
    for (auto _ : state) {
        auto out = spz::kernels::exponentPairSumsSerial(E);
        benchmark::DoNotOptimize(out.data());
    }
}

void exponentSumsParallel(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(0, 4);
    spz::ExponentMatrix E(state.range(0), state.range(1));
    for (spz::Index i = 0; i < E.rows(); ++i)
        for (spz::Index j = 0; j < E.cols(); ++j) E(i, j) = dist(rng);
    for (auto _ : state) {
        auto out = spz::kernels::exponentPairSumsParallel(E);
        benchmark::DoNotOptimize(out.data());
    }
}

spz::SparsePolyZonotope makeEvalCase(spz::Index dim) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> expDist(0, 3);
    const spz::Index h = 4 * dim, q = 2 * dim, p = dim;
    spz::ExponentMatrix E(p, h);
    for (spz::Index i = 0; i < p; ++i)
        for (spz::Index j = 0; j < h; ++j) E(i, j) = expDist(rng);
    return {randomMatrix(dim, h, rng), randomMatrix(dim, q, rng), E, spz::uniqueID(p)};
}

void evaluateBatchSerial(benchmark::State& state) {
    const auto pz = makeEvalCase(state.range(0));
    std::mt19937_64 rng(17);
    const spz::Index samples = 20000;
    const spz::Matrix alphas = randomMatrix(pz.numFactors(), samples, rng);
    const spz::Matrix betas = randomMatrix(pz.numIndependent(), samples, rng);
    for (auto _ : state) {
        auto out = spz::kernels::evaluateBatchSerial(pz, alphas, betas);
        benchmark::DoNotOptimize(out.data());
    }
}

void evaluateBatchParallel(benchmark::State& state) {
    const auto pz = makeEvalCase(state.range(0));
    std::mt19937_64 rng(17);
    const spz::Index samples = 20000;
    const spz::Matrix alphas = randomMatrix(pz.numFactors(), samples, rng);
    const spz::Matrix betas = randomMatrix(pz.numIndependent(), samples, rng);
    for (auto _ : state) {
        auto out = spz::kernels::evaluateBatchParallel(pz, alphas, betas);
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(quadMapSerial)->Args({4, 40})->Args({12, 120})->Args({24, 240})->Unit(benchmark::kMillisecond);
BENCHMARK(quadMapParallel)->Args({4, 40})->Args({12, 120})->Args({24, 240})->Unit(benchmark::kMillisecond);
BENCHMARK(exponentSumsSerial)->Args({10, 100})->Args({50, 240})->Unit(benchmark::kMillisecond);
BENCHMARK(exponentSumsParallel)->Args({10, 100})->Args({50, 240})->Unit(benchmark::kMillisecond);
BENCHMARK(evaluateBatchSerial)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(evaluateBatchParallel)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
