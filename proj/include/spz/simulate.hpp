#pragma once

#include "spz/dynamics.hpp"
#include "spz/reach.hpp"
#include "spz/sparse_poly_zonotope.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace spz {

/// One numerically integrated trajectory: states at the accepted solver steps.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
};

/// Integrates x' = f(x, u) with the Dormand-Prince 5(4) pair and adaptive
/// step control. The input is held constant within each segment of length
/// `segmentDt`; `inputs` supplies one input vector per segment. Every
/// accepted solver step is reported through `observer(segment, t, x)`.
void integrateOde(const NonlinearSystem& sys, const Vector& x0,
                  const std::vector<Vector>& inputs, double segmentDt, double tolerance,
                  const std::function<void(long, double, const Vector&)>& observer);

/// Convenience wrapper collecting the trajectory points.
Trajectory simulateTrajectory(const NonlinearSystem& sys, const Vector& x0,
                              const std::vector<Vector>& inputs, double segmentDt,
                              double tolerance);

struct OracleConfig {
    int trajectories = 100;
    double rkTolerance = 1e-10;
    double slack = 1e-9;
    std::uint64_t seed = 20251;
};

struct OracleReport {
    long pointsChecked = 0;
    long violations = 0;
    double worstExcess = 0.0;  // largest distance outside a hull, 0 when clean
};

/// Master soundness check: random initial points from X0 and piecewise
/// constant inputs from U are integrated with tight tolerance; every accepted
/// solver state within time interval tau_s must lie in the interval hull of
/// R(tau_s). Trajectories are independent, so the batch is parallelized.
OracleReport simulationOracle(const NonlinearSystem& sys, const SparsePolyZonotope& X0,
                              const IntervalVector& U, const ReachResult& result,
                              double dt, const OracleConfig& cfg);

}  // namespace spz
