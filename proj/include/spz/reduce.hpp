#pragma once

#include "spz/sparse_poly_zonotope.hpp"
#include "spz/zonotope.hpp"

namespace spz {

enum class ZonotopeReduction {
    Girard,               // box the smallest generators
    PrincipalComponents,  // rotate into principal axes, then box (order 1)
};

/// Zonotope order reduction. The output encloses the input and has order at
/// most `rho`. PrincipalComponents ignores `rho` and always returns a full
/// box in the rotated frame (order <= 1).
Zonotope reduceZonotope(const Zonotope& z, double rho,
                        ZonotopeReduction method = ZonotopeReduction::Girard);

/// Order reduction of an SPZ to order at most rhoD (requires
/// rhoD >= 1 + 1/n). The smallest generators of [G GI] by Euclidean norm are
/// enclosed by an order-1 zonotope; ties at the selection threshold are all
/// reduced. A set whose order already satisfies the bound is returned
/// unchanged.
SparsePolyZonotope reduce(const SparsePolyZonotope& pz, double rhoD);

/// Ratio of the interval-hull volume of the independent part to that of the
/// zonotope enclosure of the dependent part. Dimensions degenerate in both
/// parts are excluded symmetrically; a degenerate denominator with live
/// numerator yields +infinity (which forces a restructure).
double volRatio(const SparsePolyZonotope& pz);

/// Replaces all independent generators by fresh dependent factors (after a
/// principal-component order-1 reduction), so later quadratic maps retain
/// dependency information. If the factor count would exceed pD, factors are
/// pruned first, most recently introduced first.
SparsePolyZonotope restructure(const SparsePolyZonotope& pz, Index pD);

}  // namespace spz
