#pragma once

#include "spz/interval.hpp"
#include "spz/polytope.hpp"
#include "spz/sparse_poly_zonotope.hpp"
#include "spz/taylor_model.hpp"
#include "spz/zonotope.hpp"

#include <vector>

namespace spz {

/// Directional bound: sup of d^T x over the set is at most `bound`.
struct SupportValue {
    Vector direction;
    double bound;
};

/// Exact SPZ representation of a zonotope: G = [c Gz], E = [0 I], fresh ids.
SparsePolyZonotope fromZonotope(const Zonotope& z);

/// Exact SPZ representation of a box (midpoint/radius zonotope).
SparsePolyZonotope fromInterval(const IntervalVector& box);

/// Exact SPZ representation of the convex hull of the polytope vertices,
/// built by folding the vertex list with the dependent-part convex hull.
/// Generator count grows exponentially in the vertex count; beyond
/// `vertexWarnCap` a warning is printed to stderr.
SparsePolyZonotope fromPolytope(const Polytope& p, Index vertexWarnCap = 12);

/// Exact SPZ representation of the set defined by a Taylor model over its
/// box domain; the domain is substituted by affine images of [-1,1] factors.
SparsePolyZonotope fromTaylorModel(const TaylorModel& tm);

/// Enclosing zonotope. Monomials with exclusively even exponents are enclosed
/// by [0,1] instead of [-1,1], which halves their contribution.
Zonotope zonoEnclose(const SparsePolyZonotope& pz);

/// Enclosing polytope. Columns with exponents above one are first enclosed by
/// a zonotope; the remaining multilinear part is evaluated at all 2^p sign
/// assignments and combined with the box corners of the zonotope part.
/// Throws when the binary part has more than `factorCap` factors.
Polytope polyEnclose(const SparsePolyZonotope& pz, Index factorCap = 16);

/// Sound interval enclosure of sum_i (prod_k alpha_k^E(k,i)) g_i over the unit
/// box, by interval arithmetic per monomial. Strategy point for tighter range
/// bounding methods.
Interval rangeBound(const RowVector& g, const ExponentMatrix& E);

/// Upper bound on the support function max d^T x over the set.
SupportValue supportFunction(const SparsePolyZonotope& pz, const Vector& d);

/// Axis-aligned enclosure from support evaluations along +/- axis directions.
IntervalVector intervalEnclose(const SparsePolyZonotope& pz);

/// Halfspace bounds d_i^T x <= s_i for each template direction.
std::vector<SupportValue> templatePolyhedron(const SparsePolyZonotope& pz,
                                             const std::vector<Vector>& directions);

}  // namespace spz
