#include "support.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace spz::test {

Matrix randomMatrix(Index rows, Index cols, Rng& rng, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

ExponentMatrix randomExponents(Index p, Index h, Rng& rng, std::int64_t maxExp) {
    std::uniform_int_distribution<std::int64_t> dist(0, maxExp);
    ExponentMatrix E(p, h);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < h; ++j) E(i, j) = dist(rng);
    return E;
}

SparsePolyZonotope randomSet(Rng& rng, const RandomSetOptions& opts) {
    std::uniform_int_distribution<Index> dimDist(1, opts.maxDim);
    return randomSet(rng, dimDist(rng), opts);
}

SparsePolyZonotope randomSet(Rng& rng, Index dim, const RandomSetOptions& opts) {
    std::uniform_int_distribution<Index> hDist(1, opts.maxDependent);
    std::uniform_int_distribution<Index> qDist(0, opts.maxIndependent);
    std::uniform_int_distribution<Index> pDist(0, opts.maxFactors);

    const Index h = hDist(rng);
    const Index q = opts.allowEmptyIndependent ? qDist(rng) : std::max<Index>(1, qDist(rng));
    const Index p = pDist(rng);
    return {randomMatrix(dim, h, rng), randomMatrix(dim, q, rng),
            randomExponents(p, h, rng, opts.maxExponent), uniqueID(p)};
}

Assignment sampleAssignment(const IdVector& ids, Rng& rng) {
    Assignment assignment;
    extendAssignment(assignment, ids, rng);
    return assignment;
}

void extendAssignment(Assignment& assignment, const IdVector& ids, Rng& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::int64_t id : ids)
        if (!assignment.count(id)) assignment.emplace(id, unit(rng));
}

Vector alphaFor(const SparsePolyZonotope& pz, const Assignment& assignment) {
    Vector alpha(pz.numFactors());
    for (Index i = 0; i < pz.numFactors(); ++i)
        alpha(i) = assignment.at(pz.ids()[static_cast<std::size_t>(i)]);
    return alpha;
}

Vector sampleBeta(const SparsePolyZonotope& pz, Rng& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vector beta(pz.numIndependent());
    for (Index i = 0; i < beta.size(); ++i) beta(i) = unit(rng);
    return beta;
}

Vector evalAssigned(const SparsePolyZonotope& pz, const Assignment& assignment,
                    const Vector& beta) {
    return pz.evaluate(alphaFor(pz, assignment), beta);
}

Containment zonotopeMembership(const Zonotope& z, const Vector& x, double tol) {
    const Vector b = x - z.center();
    const double scale = 1.0 + x.cwiseAbs().maxCoeff();
    if (z.numGenerators() == 0)
        return b.cwiseAbs().maxCoeff() <= tol * scale ? Containment::Inside
                                                      : Containment::Outside;

    const Matrix& G = z.generators();
    Eigen::JacobiSVD<Matrix> svd(G);
    const double sigma = svd.singularValues()(0);
    const double step = sigma > 0.0 ? 1.0 / (sigma * sigma) : 0.0;

    Vector xi = Vector::Zero(G.cols());
    for (int iter = 0; iter < 500; ++iter) {
        const Vector residual = G * xi - b;
        if (residual.cwiseAbs().maxCoeff() <= tol * scale) return Containment::Inside;
        xi -= step * (G.transpose() * residual);
        xi = xi.cwiseMax(-1.0).cwiseMin(1.0);
    }
    if ((G * xi - b).cwiseAbs().maxCoeff() <= tol * scale) return Containment::Inside;

    // Interval-hull fallback: outside the hull is definitely outside.
    if (!z.intervalHull().contains(x, tol * scale)) return Containment::Outside;
    return Containment::Unknown;
}

Containment spzMembership(const SparsePolyZonotope& pz, const Assignment& known,
                          const Vector& point, double tol) {
    const Index p = pz.numFactors();
    std::vector<bool> isKnown(static_cast<std::size_t>(p), false);
    for (Index i = 0; i < p; ++i)
        isKnown[static_cast<std::size_t>(i)] = known.count(pz.ids()[static_cast<std::size_t>(i)]) > 0;

    Vector dependent = Vector::Zero(pz.dim());
    std::vector<Vector> freeGenerators;
    std::vector<Index> linearFactorUse(static_cast<std::size_t>(p), 0);
    for (Index col = 0; col < pz.numDependent(); ++col)
        for (Index r = 0; r < p; ++r)
            if (!isKnown[static_cast<std::size_t>(r)] && pz.exponents()(r, col) != 0)
                ++linearFactorUse[static_cast<std::size_t>(r)];

    for (Index col = 0; col < pz.numDependent(); ++col) {
        double knownPart = 1.0;
        Index unknownFactor = -1;
        bool unknownOk = true;
        for (Index r = 0; r < p; ++r) {
            const std::int64_t e = pz.exponents()(r, col);
            if (e == 0) continue;
            if (isKnown[static_cast<std::size_t>(r)]) {
                knownPart *= detail::ipow(known.at(pz.ids()[static_cast<std::size_t>(r)]), e);
            } else if (unknownFactor < 0 && e == 1 &&
                       linearFactorUse[static_cast<std::size_t>(r)] == 1) {
                unknownFactor = r;
            } else {
                unknownOk = false;
            }
        }
        if (!unknownOk) return Containment::Unknown;
        if (unknownFactor >= 0) freeGenerators.push_back(knownPart * pz.generators().col(col));
        else dependent += knownPart * pz.generators().col(col);
    }

    Matrix G(pz.dim(), static_cast<Index>(freeGenerators.size()) + pz.numIndependent());
    for (std::size_t j = 0; j < freeGenerators.size(); ++j)
        G.col(static_cast<Index>(j)) = freeGenerators[j];
    if (pz.numIndependent() > 0) G.rightCols(pz.numIndependent()) = pz.independentGenerators();
    return zonotopeMembership(Zonotope(dependent, std::move(G)), point, tol);
}

Containment polytopeMembership(const Polytope& p, const Vector& x, double tol, Rng& rng) {
    const double scale = 1.0 + x.cwiseAbs().maxCoeff();
    if (p.dim() == 1) {
        const IntervalVector hull = p.intervalHull();
        return hull.contains(x, tol * scale) ? Containment::Inside : Containment::Outside;
    }
    if (p.dim() == 2) {
        std::vector<Vector> hull = convexHull2D(p.vertices());
        if (hull.size() == 1)
            return (x - hull.front()).cwiseAbs().maxCoeff() <= tol * scale ? Containment::Inside
                                                                           : Containment::Outside;
        if (hull.size() == 2) {
            // Degenerate segment: distance via projection.
            const Vector d = hull[1] - hull[0];
            const double len2 = d.squaredNorm();
            const double t = std::clamp((x - hull[0]).dot(d) / len2, 0.0, 1.0);
            const Vector nearest = hull[0] + t * d;
            return (x - nearest).norm() <= tol * scale ? Containment::Inside
                                                       : Containment::Outside;
        }
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Vector& a = hull[i];
            const Vector& b = hull[(i + 1) % hull.size()];
            const double cross =
                (b(0) - a(0)) * (x(1) - a(1)) - (b(1) - a(1)) * (x(0) - a(0));
            if (cross < -tol * scale * (b - a).norm()) return Containment::Outside;
        }
        return Containment::Inside;
    }

    // Sampled support directions: sound for rejection only.
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Vector d(p.dim());
        for (Index i = 0; i < d.size(); ++i) d(i) = gauss(rng);
        if (d.norm() == 0.0) continue;
        d.normalize();
        double best = -std::numeric_limits<double>::infinity();
        for (const Vector& v : p.vertices()) best = std::max(best, d.dot(v));
        if (d.dot(x) > best + tol * scale) return Containment::Outside;
    }
    return Containment::Unknown;
}

Interval gridRange1D(const RowVector& g, const ExponentMatrix& E, Index gridPoints) {
    if (E.rows() > 1) throw std::invalid_argument("gridRange1D: univariate polynomials only");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Index s = 0; s < gridPoints; ++s) {
        const double a = -1.0 + 2.0 * static_cast<double>(s) / static_cast<double>(gridPoints - 1);
        double value = 0.0;
        for (Index i = 0; i < g.cols(); ++i)
            value += g(i) * (E.rows() == 1 ? detail::ipow(a, E(0, i)) : 1.0);
        lo = std::min(lo, value);
        hi = std::max(hi, value);
    }
    return {lo, hi};
}

IntervalVector sampledHull(const SparsePolyZonotope& pz, Index samples, Rng& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vector lo = Vector::Constant(pz.dim(), std::numeric_limits<double>::infinity());
    Vector hi = -lo;
    Vector alpha(pz.numFactors()), beta(pz.numIndependent());
    for (Index s = 0; s < samples; ++s) {
        for (Index i = 0; i < alpha.size(); ++i) alpha(i) = unit(rng);
        for (Index i = 0; i < beta.size(); ++i) beta(i) = unit(rng);
        const Vector x = pz.evaluate(alpha, beta);
        lo = lo.cwiseMin(x);
        hi = hi.cwiseMax(x);
    }
    return {lo, hi};
}

NonlinearSystem linearSystem(const Matrix& A, bool withInputs) {
    const Index n = A.rows();
    std::ostringstream model;
    model << std::setprecision(17);
    model << "system linear\nstates";
    for (Index i = 0; i < n; ++i) model << " x" << i + 1;
    model << "\n";
    if (withInputs) {
        model << "inputs";
        for (Index i = 0; i < n; ++i) model << " u" << i + 1;
        model << "\n";
    }
    model << "dynamics\n";
    for (Index i = 0; i < n; ++i) {
        model << "x" << i + 1 << "' = 0";
        for (Index j = 0; j < n; ++j) model << " + " << A(i, j) << " * x" << j + 1;
        if (withInputs) model << " + u" << i + 1;
        model << "\n";
    }
    return parseModel(model.str());
}

DerivativeBundle finiteDifferences(const NonlinearSystem& sys, const Vector& z, double h) {
    const Index n = sys.numStates(), m = sys.numInputs();
    DerivativeBundle out;
    out.value = sys.eval(z);
    out.A = Matrix::Zero(n, n);
    out.B = Matrix::Zero(n, m);
    out.hessians.assign(static_cast<std::size_t>(n), Matrix::Zero(n + m, n + m));

    for (Index j = 0; j < n + m; ++j) {
        Vector zp = z, zm = z;
        zp(j) += h;
        zm(j) -= h;
        const Vector grad = (sys.eval(zp) - sys.eval(zm)) / (2 * h);
        for (Index i = 0; i < n; ++i) {
            if (j < n) out.A(i, j) = grad(i);
            else out.B(i, j - n) = grad(i);
        }
    }
    for (Index j = 0; j < n + m; ++j)
        for (Index k = 0; k < n + m; ++k) {
            Vector zpp = z, zpm = z, zmp = z, zmm = z;
            zpp(j) += h;
            zpp(k) += h;
            zpm(j) += h;
            zpm(k) -= h;
            zmp(j) -= h;
            zmp(k) += h;
            zmm(j) -= h;
            zmm(k) -= h;
            const Vector second =
                (sys.eval(zpp) - sys.eval(zpm) - sys.eval(zmp) + sys.eval(zmm)) / (4 * h * h);
            for (Index i = 0; i < n; ++i) out.hessians[static_cast<std::size_t>(i)](j, k) = second(i);
        }
    return out;
}

}  // namespace spz::test
