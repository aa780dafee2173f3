#pragma once

#include "spz/convert.hpp"
#include "spz/dynamics.hpp"
#include "spz/interval.hpp"
#include "spz/polytope.hpp"
#include "spz/sparse_poly_zonotope.hpp"
#include "spz/zonotope.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace spz::test {

using Rng = std::mt19937_64;

Matrix randomMatrix(Index rows, Index cols, Rng& rng, double scale = 2.0);
ExponentMatrix randomExponents(Index p, Index h, Rng& rng, std::int64_t maxExp = 4);

struct RandomSetOptions {
    Index maxDim = 5;
    Index maxDependent = 8;
    Index maxIndependent = 8;
    Index maxFactors = 4;
    std::int64_t maxExponent = 4;
    bool allowEmptyIndependent = true;
};

SparsePolyZonotope randomSet(Rng& rng, const RandomSetOptions& opts = {});
SparsePolyZonotope randomSet(Rng& rng, Index dim, const RandomSetOptions& opts = {});

/// Factor assignment shared across sets via identifier values.
using Assignment = std::map<std::int64_t, double>;
Assignment sampleAssignment(const IdVector& ids, Rng& rng);
void extendAssignment(Assignment& assignment, const IdVector& ids, Rng& rng);
Vector alphaFor(const SparsePolyZonotope& pz, const Assignment& assignment);
Vector sampleBeta(const SparsePolyZonotope& pz, Rng& rng);
Vector evalAssigned(const SparsePolyZonotope& pz, const Assignment& assignment,
                    const Vector& beta);

enum class Containment { Inside, Unknown, Outside };

/// Zonotope membership by projected-gradient least squares with box
/// constraints; falls back to the interval hull, which is sound for
/// rejection.
Containment zonotopeMembership(const Zonotope& z, const Vector& x, double tol);

/// Membership of a point in an SPZ given values for a subset of its factors.
/// Columns over known factors are evaluated exactly; columns that are linear
/// in a single otherwise-unused unknown factor act as zonotope generators.
/// Any other unknown-factor pattern reports Unknown.
Containment spzMembership(const SparsePolyZonotope& pz, const Assignment& known,
                          const Vector& point, double tol);

/// Polytope membership: exact for one and two dimensions, direction-sampled
/// (sound for rejection) above.
Containment polytopeMembership(const Polytope& p, const Vector& x, double tol, Rng& rng);

/// Range of a univariate polynomial sum_i g_i a^E(0,i) over [-1,1] by dense
/// grid evaluation.
Interval gridRange1D(const RowVector& g, const ExponentMatrix& E, Index gridPoints = 200001);

/// Interval hull of sampled points of a set (sampling-based inner bound).
IntervalVector sampledHull(const SparsePolyZonotope& pz, Index samples, Rng& rng);

/// Linear system x' = Ax + u with identity input matrix, as a parsed model.
NonlinearSystem linearSystem(const Matrix& A, bool withInputs);

/// Central finite differences of f, its Jacobian blocks and Hessians.
DerivativeBundle finiteDifferences(const NonlinearSystem& sys, const Vector& z, double h = 1e-4);

}  // namespace spz::test
