#include "spz/reach.hpp"

#include "spz/convert.hpp"
#include "spz/ops.hpp"
#include "spz/reduce.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spz {

IntervalVector enlarge(const IntervalVector& psi, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("enlarge: factor must be positive");
    return IntervalVector::fromCenterRadius(psi.mid(), (1.0 + lambda) * psi.rad());
}

IntervalVector lagrangeRemainder(const SparsePolyZonotope& Rtau, const NonlinearSystem& sys,
                                 const IntervalVector& U, const Vector& zstar) {
    const IntervalVector box = intervalEnclose(Rtau).stack(U);
    return sys.lagrangeRemainder(box, zstar);
}

IntervalVector varInputs(const Zonotope& Zz, const Zonotope& RzDelta,
                         const IntervalVector& Udelta, const Matrix& B,
                         const std::vector<Matrix>& hessians) {
    const Index n = RzDelta.dim();
    const Index m = Udelta.size();
    if (Zz.dim() != n + m) throw std::invalid_argument("varInputs: base set dimension mismatch");

    const IntervalVector a = Zz.intervalHull();
    const IntervalVector b = RzDelta.intervalHull().stack(Udelta);

    Vector lo(n), hi(n);
    for (Index i = 0; i < n; ++i) {
        Interval sum{0.0, 0.0};
        for (Index j = 0; j < m; ++j) sum += Interval{B(i, j)} * Udelta(j);

        const Matrix& D = hessians[static_cast<std::size_t>(i)];
        Interval quad{0.0, 0.0};
        for (Index j = 0; j < n + m; ++j)
            for (Index k = 0; k < n + m; ++k) {
                const double d = D(j, k);
                if (d == 0.0) continue;
                const Interval bb = j == k ? b(j).square() : b(j) * b(k);
                quad += d * (a(j) * b(k) + b(j) * a(k) + bb);
            }
        sum += 0.5 * quad;
        lo(i) = sum.lo;
        hi(i) = sum.hi;
    }
    return {lo, hi};
}

SparsePolyZonotope post(const SparsePolyZonotope& Rts, const LinearFlow& flow,
                        const SparsePolyZonotope& Vts, const IntervalVector& Vdelta,
                        const IntervalVector& L) {
    const SparsePolyZonotope f1 = intervalMatMulSet(flow.expm, Rts);
    const SparsePolyZonotope f2 = intervalMatMulSet(flow.gamma, Vts);
    const SparsePolyZonotope combined = exactAdd(f1, f2);
    return minkowskiSum(combined, inputReachZono(flow, Vdelta + L));
}

Zonotope postDelta(const SparsePolyZonotope& Rts, const IntervalVector& psiBar,
                   const LinearFlow& flow) {
    const Index n = Rts.dim();
    const Zonotope Z = zonoEnclose(Rts);

    // e^{As} = I + (s/dt)(W - I) + curvature for s in [0, dt]: the state part
    // of the drift lies in hull(0, (W - I) Z) + curvature * Z.
    const Zonotope interp =
        Z.linearMap(flow.expPoint - Matrix::Identity(n, n)).hullWithOrigin();
    const Zonotope bend = intervalMatMulZono(flow.curvature, Z);

    // Partial integrals of the constant input component trace the segment
    // Gamma(s) v_c, enclosed by conv(0, Gamma(dt) v_c) plus the chord
    // deviation; the time-varying component is bounded through the flow hull.
    const Vector vc = psiBar.mid();
    const Vector constDrift = flow.gamma.mid() * vc;
    const Vector inputRadius = flow.dt * (flow.flowHull.magnitude() * psiBar.rad()) +
                               flow.gammaChordDeviation * vc.cwiseAbs() +
                               flow.gamma.rad() * vc.cwiseAbs();

    Matrix G(n, interp.numGenerators() + bend.numGenerators() + 1 + n);
    G << interp.generators(), bend.generators(), 0.5 * constDrift,
        Matrix(inputRadius.asDiagonal());
    return {interp.center() + bend.center() + 0.5 * constDrift, std::move(G)};
}

ReachResult reachAnalyze(const NonlinearSystem& sys, const SparsePolyZonotope& X0,
                         const IntervalVector& U, const ReachConfig& cfg) {
    const Index n = sys.numStates();
    const Index m = sys.numInputs();
    if (X0.dim() != n) throw std::invalid_argument("reachAnalyze: initial set dimension mismatch");
    if (U.size() != m) throw std::invalid_argument("reachAnalyze: input set dimension mismatch");
    if (cfg.dt <= 0.0 || cfg.tF <= 0.0) throw std::invalid_argument("reachAnalyze: bad time settings");
    const double stepsReal = cfg.tF / cfg.dt;
    const long steps = std::lround(stepsReal);
    if (steps < 1 || std::abs(stepsReal - static_cast<double>(steps)) > 1e-9)
        throw std::invalid_argument("reachAnalyze: horizon must be a positive multiple of dt");
    if (cfg.lambda <= 0.0) throw std::invalid_argument("reachAnalyze: lambda must be positive");
    if (cfg.rhoD < 1.0 + 1.0 / static_cast<double>(n))
        throw std::invalid_argument("reachAnalyze: rhoD must be at least 1 + 1/n");

    ReachResult result;
    result.steps.reserve(static_cast<std::size_t>(steps));

    SparsePolyZonotope R = X0;
    IntervalVector psi(n);  // Psi(tau_0) = {0}
    const Vector ustar = U.mid();
    const IntervalVector Udelta = U + Vector(-ustar);

    for (long s = 0; s < steps; ++s) {
        const IntervalVector hullR = intervalEnclose(R);
        const Vector xstar = hullR.mid();
        Vector zstar(n + m);
        zstar << xstar, ustar;

        const DerivativeBundle taylor = sys.taylorCoefficients(zstar);
        const LinearFlow flow = flowOperators(taylor.A, cfg.dt, cfg.eta);

        const SparsePolyZonotope Rd = translate(R, -xstar);

        // V(t_s) = {w - A x*} + (1/2) sq(D, R^d x U_s), with U_s = {0}.
        std::vector<Matrix> halfD;
        halfD.reserve(taylor.hessians.size());
        for (const Matrix& H : taylor.hessians) halfD.push_back(0.5 * H);
        const SparsePolyZonotope quadInput =
            m > 0 ? cartesianProduct(Rd, Zonotope(Vector::Zero(m))) : Rd;
        // The quadratic map multiplies the generator count; its remainder part
        // is cut back right away, well before the order bound applies to R.
        const SparsePolyZonotope V = translate(
            reduce(quadMap(quadInput, halfD), 2.0 * cfg.rhoD), taylor.value - taylor.A * xstar);
        const IntervalVector hullV = intervalEnclose(V);

        const Zonotope Zd = zonoEnclose(Rd);
        const Zonotope Zz = m > 0 ? Zd.cartesianProduct(Zonotope(Vector::Zero(m))) : Zd;

        int iterations = 0;
        Zonotope RzDelta(Vector::Zero(n));
        IntervalVector Vdelta(n), L(n);
        while (true) {
            ++iterations;
            const IntervalVector psiBar = enlarge(psi, cfg.lambda);
            RzDelta = postDelta(R, psiBar, flow);
            Vdelta = varInputs(Zz, RzDelta, Udelta, taylor.B, taylor.hessians);
            const IntervalVector hullTau = IntervalVector::hull(hullR, hullR + RzDelta.intervalHull());
            L = sys.lagrangeRemainder(hullTau.stack(U), zstar);
            psi = hullV + Vdelta + L;
            if (psiBar.contains(psi)) break;
            if (iterations >= cfg.maxFixedPointIterations)
                throw std::runtime_error(
                    "reachAnalyze: abstraction-error fixed point did not settle within " +
                    std::to_string(cfg.maxFixedPointIterations) +
                    " iterations (step " + std::to_string(s) + "); try a smaller dt");
        }
        result.totalFixedPointIterations += iterations;

        const SparsePolyZonotope Rtau = minkowskiSum(R, RzDelta);

        SparsePolyZonotope Rnext = post(R, flow, V, Vdelta, L);
        Rnext = reduce(Rnext, cfg.rhoD);
        const double ratio = volRatio(Rnext);
        bool restructured = false;
        if (ratio > cfg.muD) {
            Rnext = restructure(Rnext, cfg.pD);
            restructured = true;
            ++result.restructureCount;
        }

        StepRecord record{static_cast<double>(s) * cfg.dt,
                          static_cast<double>(s + 1) * cfg.dt,
                          Rnext,
                          Rtau,
                          iterations,
                          ratio,
                          restructured};
        result.steps.push_back(std::move(record));
        R = std::move(Rnext);
    }
    return result;
}

}  // namespace spz
