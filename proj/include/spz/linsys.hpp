#pragma once

#include "spz/interval.hpp"
#include "spz/sparse_poly_zonotope.hpp"
#include "spz/zonotope.hpp"

namespace spz {

/// Verified flow operators of x' = Ax over one time step: truncated series
/// with interval remainders.
struct LinearFlow {
    double dt = 0.0;
    int eta = 0;
    Matrix expPoint;          // truncated series for e^{A dt}
    double expRemainder = 0;  // entrywise bound on the truncation error
    IntervalMatrix expm;      // e^{A dt} enclosure (expPoint +/- remainder)
    IntervalMatrix gamma;     // integral of e^{As} over [0, dt]
    IntervalMatrix curvature; // F: e^{As} deviation from the linear interpolation, s in [0, dt]
    IntervalMatrix flowHull;  // encloses { e^{As} : s in [0, dt] }
    Matrix gammaChordDeviation;  // entrywise bound on |Gamma(s) - (s/dt) Gamma(dt)|
};

/// Builds the flow operators with series order eta. Requires
/// ||A||_inf * dt < eta + 2; otherwise the series tail bound diverges and an
/// exception asks for a smaller time step.
LinearFlow flowOperators(const Matrix& A, double dt, int eta);

/// Sound image of an SPZ under an interval matrix: the center matrix is
/// applied exactly, the radius times the interval hull is appended as
/// independent generators.
SparsePolyZonotope intervalMatMulSet(const IntervalMatrix& M, const SparsePolyZonotope& pz);

/// Enclosure of all input solutions { integral of e^{A(dt-s)} v(s) ds | v(s)
/// in V }: gamma applied to the center of V plus a box bound on the
/// time-varying deviation. Returns an SPZ with independent generators only.
SparsePolyZonotope inputReach(const LinearFlow& flow, const IntervalVector& V);
SparsePolyZonotope inputReach(const LinearFlow& flow, const SparsePolyZonotope& V);

/// Zonotope form of inputReach for interval-valued inputs.
Zonotope inputReachZono(const LinearFlow& flow, const IntervalVector& V);

/// Interval matrix applied to a zonotope.
Zonotope intervalMatMulZono(const IntervalMatrix& M, const Zonotope& z);

}  // namespace spz
