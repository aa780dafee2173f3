#pragma once

#include "spz/sparse_poly_zonotope.hpp"
#include "spz/zonotope.hpp"

#include <vector>

namespace spz {

/// Matrices Q_1..Q_m of a quadratic map x_i = s^T Q_i s.
using QuadForm = std::vector<Matrix>;

/// Left multiplication M (x) PZ = <MG, MGI, E, id>. Exact.
SparsePolyZonotope linearMap(const Matrix& M, const SparsePolyZonotope& pz);

/// Minkowski sum of two SPZs; all factor dependencies are dropped (fresh ids).
SparsePolyZonotope minkowskiSum(const SparsePolyZonotope& pz1, const SparsePolyZonotope& pz2);

/// Minkowski sum with a zonotope: center becomes a constant column, the
/// zonotope generators join the independent part. Keeps the identifiers.
SparsePolyZonotope minkowskiSum(const SparsePolyZonotope& pz, const Zonotope& z);

/// Translation by a constant vector (Minkowski sum with a point).
SparsePolyZonotope translate(const SparsePolyZonotope& pz, const Vector& v);

/// Exact addition: merges identifier vectors first so shared dependent
/// factors stay aligned, then concatenates and compacts.
SparsePolyZonotope exactAdd(const SparsePolyZonotope& pz1, const SparsePolyZonotope& pz2);

/// Cartesian product of two SPZs (fresh ids) / of an SPZ and a zonotope
/// (identifiers of the first operand are kept).
SparsePolyZonotope cartesianProduct(const SparsePolyZonotope& pz1, const SparsePolyZonotope& pz2);
SparsePolyZonotope cartesianProduct(const SparsePolyZonotope& pz, const Zonotope& z);

/// Exact quadratic map of an SPZ without independent generators.
SparsePolyZonotope quadMapDependent(const SparsePolyZonotope& pz, const QuadForm& Qs);

/// Quadratic map of a general SPZ. Independent generators are lifted to
/// dependent form with fresh factors; monomials that involve the lifted
/// factors are enclosed by a zonotope, everything else stays exact.
SparsePolyZonotope quadMap(const SparsePolyZonotope& pz, const QuadForm& Qs);

/// Exact convex hull of two SPZs without independent generators (the mixing
/// parameter becomes an additional dependent factor; all ids are fresh).
SparsePolyZonotope convHullDependent(const SparsePolyZonotope& pz1,
                                     const SparsePolyZonotope& pz2);

/// Enclosure of the convex hull of two general SPZs: dependent parts hulled
/// exactly, independent parts by the zonotope convex-hull formula.
SparsePolyZonotope convHull(const SparsePolyZonotope& pz1, const SparsePolyZonotope& pz2);

}  // namespace spz
