#include "spz/linsys.hpp"

#include "spz/convert.hpp"
#include "spz/ops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spz {

LinearFlow flowOperators(const Matrix& A, double dt, int eta) {
    if (A.rows() != A.cols()) throw std::invalid_argument("flowOperators: A must be square");
    if (dt <= 0.0) throw std::invalid_argument("flowOperators: time step must be positive");
    if (eta < 2) throw std::invalid_argument("flowOperators: series order must be at least 2");

    const Index n = A.rows();
    const double theta = A.cwiseAbs().rowwise().sum().maxCoeff() * dt;  // ||A dt||_inf
    if (theta >= static_cast<double>(eta) + 2.0)
        throw std::runtime_error(
            "flowOperators: ||A dt|| too large for the series tail bound; use a smaller time step");

    // Tail of the exponential series: sum_{i>eta} theta^i / i! bounded by the
    // geometric majorant theta^(eta+1)/(eta+1)! * 1/(1 - theta/(eta+2)).
    // The extra pad covers floating-point roundoff of the series summation,
    // which dominates the tail once theta is small.
    double leading = 1.0;
    for (int i = 1; i <= eta + 1; ++i) leading *= theta / static_cast<double>(i);
    const double fpPad = theta == 0.0 ? 0.0
                                      : 4.0 * static_cast<double>(eta + 2) *
                                            std::numeric_limits<double>::epsilon() * std::exp(theta);
    const double epsilon =
        leading / (1.0 - theta / (static_cast<double>(eta) + 2.0)) + fpPad;

    LinearFlow flow;
    flow.dt = dt;
    flow.eta = eta;

    Matrix power = Matrix::Identity(n, n);  // A^i dt^i / i!
    Matrix expPoint = Matrix::Identity(n, n);
    Matrix gammaPoint = dt * Matrix::Identity(n, n);
    Matrix gammaChord = Matrix::Zero(n, n);
    IntervalMatrix curvature(Matrix::Zero(n, n));
    IntervalMatrix hull(Matrix::Identity(n, n));

    for (int i = 1; i <= eta; ++i) {
        power = power * A * (dt / static_cast<double>(i));
        expPoint += power;
        gammaPoint += power * (dt / static_cast<double>(i + 1));
        // max of u - u^{i+1} over [0,1] scales the chord deviation of Gamma
        const double ustar = std::pow(static_cast<double>(i + 1), -1.0 / static_cast<double>(i));
        const double hstar = ustar * (1.0 - detail::ipow(ustar, i));
        gammaChord += hstar * (dt / static_cast<double>(i + 1)) * power.cwiseAbs();
        hull += IntervalMatrix::scale({0.0, 1.0}, power);
        if (i >= 2) {
            // range of (s^i - s dt^(i-1)) / dt^i over s in [0, dt]; the dt^i
            // cancels against the dt^i stored in `power`
            const double iDouble = static_cast<double>(i);
            const double low = std::pow(iDouble, -iDouble / (iDouble - 1.0)) -
                               std::pow(iDouble, -1.0 / (iDouble - 1.0));
            curvature += IntervalMatrix::scale({low, 0.0}, power);
        }
    }

    const Matrix remainder = Matrix::Constant(n, n, epsilon);
    flow.expPoint = expPoint;
    flow.expRemainder = epsilon;
    flow.expm = IntervalMatrix::fromCenterRadius(expPoint, remainder);
    flow.gamma = IntervalMatrix::fromCenterRadius(gammaPoint, remainder * dt);
    flow.curvature = curvature + IntervalMatrix::fromCenterRadius(Matrix::Zero(n, n), remainder);
    flow.flowHull = hull + IntervalMatrix::fromCenterRadius(Matrix::Zero(n, n), remainder);
    flow.gammaChordDeviation = gammaChord + 2.0 * dt * remainder;
    return flow;
}

SparsePolyZonotope intervalMatMulSet(const IntervalMatrix& M, const SparsePolyZonotope& pz) {
    if (M.cols() != pz.dim()) throw std::invalid_argument("intervalMatMulSet: shape mismatch");
    const SparsePolyZonotope mapped = linearMap(M.mid(), pz);
    const Matrix radius = M.rad();
    if (radius.isZero(0.0)) return mapped;

    const IntervalVector hull = intervalEnclose(pz);
    const Vector bound = radius * hull.magnitude();
    std::vector<Index> active;
    for (Index i = 0; i < bound.size(); ++i)
        if (bound(i) != 0.0) active.push_back(i);
    Matrix extra = Matrix::Zero(M.rows(), static_cast<Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j)
        extra(active[j], static_cast<Index>(j)) = bound(active[j]);

    Matrix GI(M.rows(), mapped.numIndependent() + extra.cols());
    GI << mapped.independentGenerators(), extra;
    return {mapped.generators(), std::move(GI), mapped.exponents(), mapped.ids()};
}

Zonotope intervalMatMulZono(const IntervalMatrix& M, const Zonotope& z) {
    if (M.cols() != z.dim()) throw std::invalid_argument("intervalMatMulZono: shape mismatch");
    const Matrix center = M.mid();
    const Matrix radius = M.rad();
    const Vector bound = radius * z.intervalHull().magnitude();

    std::vector<Index> active;
    for (Index i = 0; i < bound.size(); ++i)
        if (bound(i) != 0.0) active.push_back(i);
    Matrix G(M.rows(), z.numGenerators() + static_cast<Index>(active.size()));
    G.leftCols(z.numGenerators()) = center * z.generators();
    G.rightCols(static_cast<Index>(active.size())).setZero();
    for (std::size_t j = 0; j < active.size(); ++j)
        G(active[j], z.numGenerators() + static_cast<Index>(j)) = bound(active[j]);
    return {center * z.center(), std::move(G)};
}

Zonotope inputReachZono(const LinearFlow& flow, const IntervalVector& V) {
    const Vector vc = V.mid();
    const Vector vr = V.rad();

    // Constant component through gamma, time-varying deviation through the
    // flow hull: |integral e^{A(dt-s)} w(s) ds| <= dt * |e^{A[0,dt]}| * rad.
    const Vector center = flow.gamma.mid() * vc;
    const Vector radius =
        flow.gamma.rad() * vc.cwiseAbs() + flow.dt * (flow.flowHull.magnitude() * vr);

    std::vector<Index> active;
    for (Index i = 0; i < radius.size(); ++i)
        if (radius(i) != 0.0) active.push_back(i);
    Matrix G = Matrix::Zero(center.size(), static_cast<Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j)
        G(active[j], static_cast<Index>(j)) = radius(active[j]);
    return {center, std::move(G)};
}

SparsePolyZonotope inputReach(const LinearFlow& flow, const IntervalVector& V) {
    const Zonotope z = inputReachZono(flow, V);
    return {z.center(), z.generators(), ExponentMatrix(0, 1), IdVector{}};
}

SparsePolyZonotope inputReach(const LinearFlow& flow, const SparsePolyZonotope& V) {
    return inputReach(flow, intervalEnclose(V));
}

}  // namespace spz
