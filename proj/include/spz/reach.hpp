#pragma once

#include "spz/dynamics.hpp"
#include "spz/interval.hpp"
#include "spz/linsys.hpp"
#include "spz/sparse_poly_zonotope.hpp"
#include "spz/zonotope.hpp"

#include <vector>

namespace spz {

struct ReachConfig {
    double dt = 0.01;
    double tF = 1.0;
    double lambda = 0.1;   // enlargement factor for the abstraction-error loop
    double rhoD = 50.0;    // maximum zonotope order
    double muD = 0.01;     // volume ratio that triggers restructuring
    Index pD = 50;         // maximum dependent factor count after restructure
    int eta = 6;           // exponential series order
    int maxFixedPointIterations = 10;
};

struct StepRecord {
    double tStart = 0.0;
    double tEnd = 0.0;
    SparsePolyZonotope timePoint;     // R(t_{s+1})
    SparsePolyZonotope timeInterval;  // R(tau_s)
    int fixedPointIterations = 0;
    double volumeRatio = 0.0;
    bool restructured = false;
};

struct ReachResult {
    std::vector<StepRecord> steps;
    int restructureCount = 0;
    long totalFixedPointIterations = 0;
};

/// Interval scaled about its center by (1 + lambda); contains the input.
IntervalVector enlarge(const IntervalVector& psi, double lambda);

/// Interval enclosure of the third-order Lagrange remainder of the dynamics
/// over the interval hull of R(tau_s) x U, displaced about z*.
IntervalVector lagrangeRemainder(const SparsePolyZonotope& Rtau, const NonlinearSystem& sys,
                                 const IntervalVector& U, const Vector& zstar);

/// Abstraction inputs caused by in-step variation: the linear input image
/// B U^d plus the interval of the quadratic cross terms between the base set
/// and the in-step drift.
IntervalVector varInputs(const Zonotope& Zz, const Zonotope& RzDelta,
                         const IntervalVector& Udelta, const Matrix& B,
                         const std::vector<Matrix>& hessians);

/// Propagation to the next time point:
/// e^{A dt} R(t_s)  boxplus  Gamma V(t_s)  oplus  inputReach(V^d + L).
/// The exact addition keeps the factors shared between R and V aligned.
SparsePolyZonotope post(const SparsePolyZonotope& Rts, const LinearFlow& flow,
                        const SparsePolyZonotope& Vts, const IntervalVector& Vdelta,
                        const IntervalVector& L);

/// Zonotope enclosure of the in-step drift { x(t) - x(t_s) : t in [t_s,
/// t_s + dt] } under x' = Ax + v, v in psiBar.
Zonotope postDelta(const SparsePolyZonotope& Rts, const IntervalVector& psiBar,
                   const LinearFlow& flow);

/// Conservative-polynomialization reachability over [0, tF]: per step the
/// dynamics are abstracted by a second-order Taylor expansion whose error set
/// is validated by an enlargement fixed point, the reachable set is
/// propagated through the linearized flow with exact addition, reduced to the
/// configured order and restructured when the independent part dominates.
ReachResult reachAnalyze(const NonlinearSystem& sys, const SparsePolyZonotope& X0,
                         const IntervalVector& U, const ReachConfig& cfg);

}  // namespace spz
