#pragma once

#include "spz/sparse_poly_zonotope.hpp"
#include "spz/types.hpp"

#include <vector>

namespace spz::kernels {

/// Whether the OpenMP kernel variants are used by default. Compiled-in OpenMP
/// support can be disabled at runtime with the environment variable
/// SPZ_SERIAL=1.
bool parallelEnabled();
int maxThreads();

// ---------------------------------------------------------------------------
// Quadratic-map generator blocks.
//
// Given Ghat (d x h) and matrices Q_1..Q_m (d x d), the result is the m x h^2
// matrix with entry (i, j*h + l) = Ghat(:,j)^T Q_i Ghat(:,l). Each output
// element is written by exactly one thread, so results are identical for any
// thread count.
// ---------------------------------------------------------------------------
Matrix quadMapGeneratorsSerial(const Matrix& Ghat, const std::vector<Matrix>& Qs);
Matrix quadMapGeneratorsParallel(const Matrix& Ghat, const std::vector<Matrix>& Qs);
Matrix quadMapGenerators(const Matrix& Ghat, const std::vector<Matrix>& Qs);

// ---------------------------------------------------------------------------
// Pairwise exponent sums: column j*h + l of the result is E(:,j) + E(:,l).
// ---------------------------------------------------------------------------
ExponentMatrix exponentPairSumsSerial(const ExponentMatrix& E);
ExponentMatrix exponentPairSumsParallel(const ExponentMatrix& E);
ExponentMatrix exponentPairSums(const ExponentMatrix& E);

// ---------------------------------------------------------------------------
// Batch point evaluation: alphas is p x N, betas is q x N; the result is the
// n x N matrix of set points, one column per sample.
// ---------------------------------------------------------------------------
Matrix evaluateBatchSerial(const SparsePolyZonotope& pz, const Matrix& alphas, const Matrix& betas);
Matrix evaluateBatchParallel(const SparsePolyZonotope& pz, const Matrix& alphas,
                             const Matrix& betas);
Matrix evaluateBatch(const SparsePolyZonotope& pz, const Matrix& alphas, const Matrix& betas);

}  // namespace spz::kernels
