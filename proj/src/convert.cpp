#include "spz/convert.hpp"

#include "spz/ops.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <stdexcept>

namespace spz {

namespace {

enum class MonomialClass { Zero, Even, General };

MonomialClass classify(const ExponentMatrix& E, Index col) {
    bool allZero = true;
    bool allEven = true;
    for (Index r = 0; r < E.rows(); ++r) {
        const std::int64_t e = E(r, col);
        if (e != 0) allZero = false;
        if (e % 2 != 0) allEven = false;
    }
    if (allZero) return MonomialClass::Zero;
    return allEven ? MonomialClass::Even : MonomialClass::General;
}

}  // namespace

SparsePolyZonotope fromZonotope(const Zonotope& z) {
    const Index n = z.dim();
    const Index l = z.numGenerators();
    Matrix G(n, l + 1);
    G.col(0) = z.center();
    if (l > 0) G.rightCols(l) = z.generators();
    ExponentMatrix E = ExponentMatrix::Zero(l, l + 1);
    E.rightCols(l) = ExponentMatrix::Identity(l, l);
    return {std::move(G), Matrix(n, 0), std::move(E), uniqueID(l)};
}

SparsePolyZonotope fromInterval(const IntervalVector& box) {
    const Vector r = box.rad();
    std::vector<Index> active;
    for (Index i = 0; i < box.size(); ++i)
        if (r(i) != 0.0) active.push_back(i);
    Matrix G = Matrix::Zero(box.size(), static_cast<Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) G(active[j], static_cast<Index>(j)) = r(active[j]);
    return fromZonotope(Zonotope(box.mid(), std::move(G)));
}

SparsePolyZonotope fromPolytope(const Polytope& p, Index vertexWarnCap) {
    if (p.numVertices() > vertexWarnCap)
        std::cerr << "fromPolytope: " << p.numVertices()
                  << " vertices; generator count grows exponentially, consider reducing\n";

    SparsePolyZonotope result = SparsePolyZonotope(
        p.vertices().front(), Matrix(p.dim(), 0), ExponentMatrix::Zero(1, 1), uniqueID(1));
    for (std::size_t i = 1; i < p.vertices().size(); ++i) {
        const SparsePolyZonotope vertex(p.vertices()[i], Matrix(p.dim(), 0),
                                        ExponentMatrix::Zero(1, 1), uniqueID(1));
        result = convHullDependent(result, vertex);
    }
    return result;
}

SparsePolyZonotope fromTaylorModel(const TaylorModel& tm) {
    const Index n = tm.outputDim();
    const Index s = tm.domainDim();
    const Vector dc = tm.domain().mid();
    const Vector dr = tm.domain().rad();

    // Expand each polynomial with the substitution delta_k(a) = dc_k + dr_k * a.
    // Terms are accumulated per exponent column; the per-dimension results are
    // assembled block-diagonally afterwards.
    struct Term {
        ExponentVector exponent;
        double coefficient;
    };
    std::vector<std::vector<Term>> expanded(static_cast<std::size_t>(n));

    for (Index i = 0; i < n; ++i) {
        const TaylorPolynomial& poly = tm.polynomials()[static_cast<std::size_t>(i)];
        for (Index j = 0; j < poly.coefficients.cols(); ++j) {
            std::vector<Term> terms{{ExponentVector::Zero(s), poly.coefficients(j)}};
            for (Index k = 0; k < s; ++k) {
                const std::int64_t e = poly.exponents(k, j);
                if (e == 0) continue;
                // (dc + dr*a)^e  =  sum_t C(e,t) dc^(e-t) dr^t a^t
                std::vector<double> univariate(static_cast<std::size_t>(e) + 1);
                double binom = 1.0;
                for (std::int64_t t = 0; t <= e; ++t) {
                    if (t > 0) binom = binom * static_cast<double>(e - t + 1) / static_cast<double>(t);
                    univariate[static_cast<std::size_t>(t)] =
                        binom * detail::ipow(dc(k), e - t) * detail::ipow(dr(k), t);
                }
                std::vector<Term> next;
                next.reserve(terms.size() * univariate.size());
                for (const Term& term : terms)
                    for (std::int64_t t = 0; t <= e; ++t) {
                        if (univariate[static_cast<std::size_t>(t)] == 0.0) continue;
                        Term combined = term;
                        combined.exponent(k) += t;
                        combined.coefficient *= univariate[static_cast<std::size_t>(t)];
                        next.push_back(std::move(combined));
                    }
                terms = std::move(next);
            }
            auto& out = expanded[static_cast<std::size_t>(i)];
            out.insert(out.end(), terms.begin(), terms.end());
        }
    }

    Index totalTerms = 0;
    for (const auto& terms : expanded) totalTerms += static_cast<Index>(terms.size());

    Matrix G(n, totalTerms + 1);
    ExponentMatrix E = ExponentMatrix::Zero(s, totalTerms + 1);
    G.col(0) = tm.remainder().mid();
    Index col = 1;
    for (Index i = 0; i < n; ++i) {
        for (const Term& term : expanded[static_cast<std::size_t>(i)]) {
            G.col(col).setZero();
            G(i, col) = term.coefficient;
            E.col(col) = term.exponent;
            ++col;
        }
    }

    const Vector remainderRadius = tm.remainder().rad();
    std::vector<Index> active;
    for (Index i = 0; i < n; ++i)
        if (remainderRadius(i) != 0.0) active.push_back(i);
    Matrix GI = Matrix::Zero(n, static_cast<Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j)
        GI(active[j], static_cast<Index>(j)) = remainderRadius(active[j]);

    return compact({std::move(G), std::move(GI), std::move(E), uniqueID(s)});
}

Zonotope zonoEnclose(const SparsePolyZonotope& pz) {
    const Index n = pz.dim();
    Vector center = Vector::Zero(n);
    std::vector<Index> evenCols, generalCols;
    for (Index i = 0; i < pz.numDependent(); ++i) {
        switch (classify(pz.exponents(), i)) {
            case MonomialClass::Zero: center += pz.generators().col(i); break;
            case MonomialClass::Even:
                center += 0.5 * pz.generators().col(i);
                evenCols.push_back(i);
                break;
            case MonomialClass::General: generalCols.push_back(i); break;
        }
    }

    Matrix G(n, static_cast<Index>(evenCols.size() + generalCols.size()) + pz.numIndependent());
    Index col = 0;
    for (Index i : evenCols) G.col(col++) = 0.5 * pz.generators().col(i);
    for (Index i : generalCols) G.col(col++) = pz.generators().col(i);
    if (pz.numIndependent() > 0) G.rightCols(pz.numIndependent()) = pz.independentGenerators();
    return {std::move(center), std::move(G)};
}

Polytope polyEnclose(const SparsePolyZonotope& pz, Index factorCap) {
    const Index n = pz.dim();
    const Index p = pz.numFactors();
    if (p > factorCap)
        throw std::runtime_error(
            "polyEnclose: too many dependent factors for sign enumeration; reduce the set first");

    std::vector<Index> overOne, binary;
    for (Index i = 0; i < pz.numDependent(); ++i) {
        bool high = false;
        for (Index r = 0; r < p; ++r) high = high || pz.exponents()(r, i) > 1;
        (high ? overOne : binary).push_back(i);
    }

    // Zonotope part: higher-order columns enclosed, plus the independent part.
    Vector cz = Vector::Zero(n);
    Matrix Gz(n, 0);
    if (!overOne.empty()) {
        Matrix Gh(n, static_cast<Index>(overOne.size()));
        ExponentMatrix Eh(p, static_cast<Index>(overOne.size()));
        for (std::size_t j = 0; j < overOne.size(); ++j) {
            Gh.col(static_cast<Index>(j)) = pz.generators().col(overOne[j]);
            Eh.col(static_cast<Index>(j)) = pz.exponents().col(overOne[j]);
        }
        const Zonotope z = zonoEnclose({std::move(Gh), Matrix(n, 0), std::move(Eh), pz.ids()});
        cz = z.center();
        Gz = z.generators();
    }
    Matrix Gbox(n, Gz.cols() + pz.numIndependent());
    Gbox << pz.independentGenerators(), Gz;

    // Dependent multilinear part at all sign assignments.
    std::vector<Vector> dependentPoints;
    const std::size_t assignments = std::size_t{1} << static_cast<std::size_t>(p);
    dependentPoints.reserve(assignments);
    for (std::size_t mask = 0; mask < assignments; ++mask) {
        Vector point = Vector::Zero(n);
        for (Index i : binary) {
            double sign = 1.0;
            for (Index r = 0; r < p; ++r)
                if (pz.exponents()(r, i) == 1 && !(mask & (std::size_t{1} << r))) sign = -sign;
            point += sign * pz.generators().col(i);
        }
        dependentPoints.push_back(std::move(point));
    }

    // Box corners of the zonotope part around cz.
    const Vector radius = Gbox.cols() > 0 ? Vector(Gbox.cwiseAbs().rowwise().sum())
                                          : Vector(Vector::Zero(n));
    std::vector<Vector> corners;
    if (radius.isZero(0.0)) {
        corners.push_back(cz);
    } else {
        const std::size_t total = std::size_t{1} << static_cast<std::size_t>(n);
        corners.reserve(total);
        for (std::size_t mask = 0; mask < total; ++mask) {
            Vector corner = cz;
            for (Index d = 0; d < n; ++d)
                corner(d) += (mask & (std::size_t{1} << d)) ? radius(d) : -radius(d);
            corners.push_back(std::move(corner));
        }
    }

    std::vector<Vector> candidates;
    candidates.reserve(dependentPoints.size() * corners.size());
    for (const Vector& dp : dependentPoints)
        for (const Vector& corner : corners) candidates.push_back(dp + corner);

    if (n == 2) {
        std::vector<Vector> hull = convexHull2D(std::move(candidates));
        return Polytope(std::move(hull));
    }
    if (n == 1) {
        double lo = candidates.front()(0), hi = lo;
        for (const Vector& c : candidates) {
            lo = std::min(lo, c(0));
            hi = std::max(hi, c(0));
        }
        std::vector<Vector> ends{Vector::Constant(1, lo), Vector::Constant(1, hi)};
        if (lo == hi) ends.pop_back();
        return Polytope(std::move(ends));
    }
    return Polytope(std::move(candidates));
}

Interval rangeBound(const RowVector& g, const ExponentMatrix& E) {
    if (E.cols() != g.cols()) throw std::invalid_argument("rangeBound: shape mismatch");
    Interval sum{0.0, 0.0};
    for (Index i = 0; i < g.cols(); ++i) {
        Interval monomial{1.0, 1.0};
        switch (classify(E, i)) {
            case MonomialClass::Zero: break;
            case MonomialClass::Even: monomial = {0.0, 1.0}; break;
            case MonomialClass::General: monomial = {-1.0, 1.0}; break;
        }
        sum += monomial * Interval{g(i)};
    }
    return sum;
}

SupportValue supportFunction(const SparsePolyZonotope& pz, const Vector& d) {
    const SparsePolyZonotope projected = linearMap(d.transpose(), pz);
    const Interval dep = rangeBound(projected.generators().row(0), projected.exponents());
    double indep = 0.0;
    for (Index j = 0; j < projected.numIndependent(); ++j)
        indep += std::abs(projected.independentGenerators()(0, j));
    return {d, dep.hi + indep};
}

IntervalVector intervalEnclose(const SparsePolyZonotope& pz) {
    const Index n = pz.dim();
    Vector lo(n), hi(n);
    for (Index i = 0; i < n; ++i) {
        Vector d = Vector::Zero(n);
        d(i) = 1.0;
        hi(i) = supportFunction(pz, d).bound;
        d(i) = -1.0;
        lo(i) = -supportFunction(pz, d).bound;
    }
    return {lo, hi};
}

std::vector<SupportValue> templatePolyhedron(const SparsePolyZonotope& pz,
                                             const std::vector<Vector>& directions) {
    if (directions.empty()) throw std::invalid_argument("templatePolyhedron: no directions");
    std::vector<SupportValue> bounds;
    bounds.reserve(directions.size());
    for (const Vector& d : directions) bounds.push_back(supportFunction(pz, d));
    return bounds;
}

}  // namespace spz
