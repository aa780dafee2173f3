#include "spz/simulate.hpp"

#include "spz/convert.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spz {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

void integrateOde(const NonlinearSystem& sys, const Vector& x0,
                  const std::vector<Vector>& inputs, double segmentDt, double tolerance,
                  const std::function<void(long, double, const Vector&)>& observer) {
    const Index n = sys.numStates();
    const Index m = sys.numInputs();
    if (x0.size() != n) throw std::invalid_argument("integrateOde: initial state dimension");
    for (const Vector& u : inputs)
        if (u.size() != m) throw std::invalid_argument("integrateOde: input dimension");

    Vector z(n + m);
    const auto rhs = [&](const Vector& x, const Vector& u) {
        z.head(n) = x;
        if (m > 0) z.tail(m) = u;
        return sys.eval(z);
    };

    Vector x = x0;
    for (std::size_t seg = 0; seg < inputs.size(); ++seg) {
        const Vector& u = inputs[seg];
        const double tEnd = segmentDt;
        double t = 0.0;
        double hStep = segmentDt / 16.0;
        Vector k1 = rhs(x, u);

        while (t < tEnd) {
            hStep = std::min(hStep, tEnd - t);
            const Vector k2 = rhs(x + hStep * (a21 * k1), u);
            const Vector k3 = rhs(x + hStep * (a31 * k1 + a32 * k2), u);
            const Vector k4 = rhs(x + hStep * (a41 * k1 + a42 * k2 + a43 * k3), u);
            const Vector k5 = rhs(x + hStep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), u);
            const Vector k6 =
                rhs(x + hStep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), u);
            const Vector next = x + hStep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vector k7 = rhs(next, u);
            const Vector err =
                hStep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double scale = 1.0 + x.cwiseAbs().maxCoeff();
            const double errNorm = err.cwiseAbs().maxCoeff() / scale;
            if (errNorm <= tolerance) {
                t += hStep;
                x = next;
                k1 = k7;  // FSAL
                observer(static_cast<long>(seg), t, x);
            }
            const double exponent = 0.2;
            double factor = errNorm > 0.0 ? 0.9 * std::pow(tolerance / errNorm, exponent) : 5.0;
            factor = std::clamp(factor, 0.2, 5.0);
            hStep *= factor;
            if (hStep < 1e-14 * segmentDt)
                throw std::runtime_error("integrateOde: step size underflow");
        }
    }
}

Trajectory simulateTrajectory(const NonlinearSystem& sys, const Vector& x0,
                              const std::vector<Vector>& inputs, double segmentDt,
                              double tolerance) {
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    integrateOde(sys, x0, inputs, segmentDt, tolerance,
                 [&](long seg, double tLocal, const Vector& x) {
                     traj.times.push_back(static_cast<double>(seg) * segmentDt + tLocal);
                     traj.states.push_back(x);
                 });
    return traj;
}

OracleReport simulationOracle(const NonlinearSystem& sys, const SparsePolyZonotope& X0,
                              const IntervalVector& U, const ReachResult& result, double dt,
                              const OracleConfig& cfg) {
    const Index m = sys.numInputs();
    const long steps = static_cast<long>(result.steps.size());

    std::vector<IntervalVector> hulls;
    hulls.reserve(result.steps.size());
    for (const StepRecord& record : result.steps)
        hulls.push_back(intervalEnclose(record.timeInterval));

    OracleReport report;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int traj = 0; traj < cfg.trajectories; ++traj) {
        // Per-trajectory generator: reproducible regardless of thread count.
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(traj));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);

        Vector alpha(X0.numFactors()), beta(X0.numIndependent());
        for (Index i = 0; i < alpha.size(); ++i) alpha(i) = unit(rng);
        for (Index i = 0; i < beta.size(); ++i) beta(i) = unit(rng);
        const Vector x0 = X0.evaluate(alpha, beta);

        std::vector<Vector> inputs(static_cast<std::size_t>(steps));
        for (auto& u : inputs) {
            u.resize(m);
            for (Index j = 0; j < m; ++j)
                u(j) = U.mid()(j) + unit(rng) * U.rad()(j);
        }

        long localChecked = 0, localViolations = 0;
        double localWorst = 0.0;
        const auto observe = [&](long seg, double, const Vector& x) {
            if (seg >= steps) return;
            const IntervalVector& hull = hulls[static_cast<std::size_t>(seg)];
            ++localChecked;
            double excess = 0.0;
            for (Index i = 0; i < x.size(); ++i) {
                const double scale = 1.0 + std::max(std::abs(hull.lower()(i)), std::abs(hull.upper()(i)));
                excess = std::max(excess, (hull.lower()(i) - x(i)) / scale);
                excess = std::max(excess, (x(i) - hull.upper()(i)) / scale);
            }
            if (excess > cfg.slack) {
                ++localViolations;
                localWorst = std::max(localWorst, excess);
            }
        };
        integrateOde(sys, x0, inputs, dt, cfg.rkTolerance, observe);

#ifdef _OPENMP
#pragma omp critical
#endif
        {
            report.pointsChecked += localChecked;
            report.violations += localViolations;
            report.worstExcess = std::max(report.worstExcess, localWorst);
        }
    }
    return report;
}

}  // namespace spz
