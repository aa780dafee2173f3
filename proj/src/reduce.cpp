#include "spz/reduce.hpp"

#include "spz/convert.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spz {

namespace {

Zonotope reduceGirard(const Zonotope& z, double rho) {
    const Index n = z.dim();
    const Index l = z.numGenerators();
    if (static_cast<double>(l) <= rho * static_cast<double>(n)) return z;

    const Index keep = std::max<Index>(
        0, static_cast<Index>(std::floor(rho * static_cast<double>(n))) - n);

    // Girard's metric: generators with small ||g||_1 - ||g||_inf are boxed.
    std::vector<Index> order(static_cast<std::size_t>(l));
    std::iota(order.begin(), order.end(), Index{0});
    Vector metric(l);
    for (Index i = 0; i < l; ++i)
        metric(i) = z.generators().col(i).lpNorm<1>() - z.generators().col(i).lpNorm<Eigen::Infinity>();
    std::stable_sort(order.begin(), order.end(),
                     [&metric](Index a, Index b) { return metric(a) < metric(b); });

    Matrix kept(n, keep);
    for (Index i = 0; i < keep; ++i)
        kept.col(i) = z.generators().col(order[static_cast<std::size_t>(l - keep + i)]);

    Vector boxRadius = Vector::Zero(n);
    for (Index i = 0; i < l - keep; ++i)
        boxRadius += z.generators().col(order[static_cast<std::size_t>(i)]).cwiseAbs();

    std::vector<Index> active;
    for (Index i = 0; i < n; ++i)
        if (boxRadius(i) != 0.0) active.push_back(i);

    Matrix G(n, keep + static_cast<Index>(active.size()));
    G.leftCols(keep) = kept;
    G.rightCols(static_cast<Index>(active.size())).setZero();
    for (std::size_t j = 0; j < active.size(); ++j)
        G(active[j], keep + static_cast<Index>(j)) = boxRadius(active[j]);
    return {z.center(), std::move(G)};
}

Zonotope reducePrincipalComponents(const Zonotope& z) {
    if (z.numGenerators() == 0) return z;
    // Principal directions of the generator cloud, then a box in that frame.
    Eigen::JacobiSVD<Matrix> svd(z.generators(), Eigen::ComputeFullU);
    const Matrix U = svd.matrixU();
    const Matrix rotated = U.transpose() * z.generators();
    const Vector radius = rotated.cwiseAbs().rowwise().sum();

    std::vector<Index> active;
    for (Index i = 0; i < z.dim(); ++i)
        if (radius(i) != 0.0) active.push_back(i);
    Matrix G(z.dim(), static_cast<Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j)
        G.col(static_cast<Index>(j)) = radius(active[j]) * U.col(active[j]);
    return {z.center(), std::move(G)};
}

}  // namespace

Zonotope reduceZonotope(const Zonotope& z, double rho, ZonotopeReduction method) {
    if (rho < 1.0) throw std::invalid_argument("reduceZonotope: order must be at least 1");
    switch (method) {
        case ZonotopeReduction::Girard: return reduceGirard(z, rho);
        case ZonotopeReduction::PrincipalComponents: return reducePrincipalComponents(z);
    }
    throw std::logic_error("reduceZonotope: unknown method");
}

SparsePolyZonotope reduce(const SparsePolyZonotope& pz, double rhoD) {
    const Index n = pz.dim();
    if (rhoD < 1.0 + 1.0 / static_cast<double>(n))
        throw std::invalid_argument("reduce: desired order must be at least 1 + 1/n");

    const Index h = pz.numDependent();
    const Index q = pz.numIndependent();
    if (static_cast<double>(h + q) <= rhoD * static_cast<double>(n)) return pz;

    const double raw = std::ceil(static_cast<double>(h + q) - static_cast<double>(n) * (rhoD - 1.0) + 1.0);
    const Index a = std::max<Index>(0, std::min<Index>(h + q, static_cast<Index>(raw)));
    if (a == 0) return pz;

    Vector norms(h + q);
    for (Index i = 0; i < h; ++i) norms(i) = pz.generators().col(i).norm();
    for (Index j = 0; j < q; ++j) norms(h + j) = pz.independentGenerators().col(j).norm();

    std::vector<Index> order(static_cast<std::size_t>(h + q));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&norms](Index x, Index y) { return norms(x) < norms(y); });
    const double threshold = norms(order[static_cast<std::size_t>(a - 1)]);

    std::vector<Index> depKeep, indepKeep;
    // The selected generators are zonotope-enclosed and boxed to order one in
    // a single accumulation pass: monomials with exclusively even exponents
    // contribute half their generator to the center.
    Vector cz = Vector::Zero(n);
    Vector boxRadius = Vector::Zero(n);
    const auto columnClass = [&pz](Index i) {  // 0 zero, 1 even, 2 general
        bool allZero = true, allEven = true;
        for (Index r = 0; r < pz.numFactors(); ++r) {
            const std::int64_t e = pz.exponents()(r, i);
            if (e != 0) allZero = false;
            if (e % 2 != 0) allEven = false;
        }
        return allZero ? 0 : (allEven ? 1 : 2);
    };
    for (Index i = 0; i < h; ++i) {
        if (norms(i) > threshold) {
            depKeep.push_back(i);
            continue;
        }
        switch (columnClass(i)) {
            case 0: cz += pz.generators().col(i); break;
            case 1:
                cz += 0.5 * pz.generators().col(i);
                boxRadius += 0.5 * pz.generators().col(i).cwiseAbs();
                break;
            default: boxRadius += pz.generators().col(i).cwiseAbs();
        }
    }
    for (Index j = 0; j < q; ++j) {
        if (norms(h + j) > threshold) indepKeep.push_back(j);
        else boxRadius += pz.independentGenerators().col(j).cwiseAbs();
    }

    Matrix G(n, static_cast<Index>(depKeep.size()) + 1);
    ExponentMatrix E = ExponentMatrix::Zero(pz.numFactors(), static_cast<Index>(depKeep.size()) + 1);
    G.col(0) = cz;
    for (std::size_t c = 0; c < depKeep.size(); ++c) {
        G.col(static_cast<Index>(c) + 1) = pz.generators().col(depKeep[c]);
        E.col(static_cast<Index>(c) + 1) = pz.exponents().col(depKeep[c]);
    }
    std::vector<Index> boxDims;
    for (Index i = 0; i < n; ++i)
        if (boxRadius(i) != 0.0) boxDims.push_back(i);
    Matrix GI = Matrix::Zero(n, static_cast<Index>(indepKeep.size() + boxDims.size()));
    for (std::size_t c = 0; c < indepKeep.size(); ++c)
        GI.col(static_cast<Index>(c)) = pz.independentGenerators().col(indepKeep[c]);
    for (std::size_t c = 0; c < boxDims.size(); ++c)
        GI(boxDims[c], static_cast<Index>(indepKeep.size() + c)) = boxRadius(boxDims[c]);

    return normalize({std::move(G), std::move(GI), std::move(E), pz.ids()});
}

double volRatio(const SparsePolyZonotope& pz) {
    if (pz.numIndependent() == 0) return 0.0;

    const Vector num = pz.independentGenerators().cwiseAbs().rowwise().sum();
    const Zonotope depEnclosure = zonoEnclose(
        {pz.generators(), Matrix(pz.dim(), 0), pz.exponents(), pz.ids()});
    const Vector den = depEnclosure.intervalHull().rad();

    double ratio = 1.0;
    bool anyDim = false;
    for (Index i = 0; i < pz.dim(); ++i) {
        if (den(i) == 0.0 && num(i) == 0.0) continue;  // degenerate in both parts
        if (den(i) == 0.0) return std::numeric_limits<double>::infinity();
        ratio *= num(i) / den(i);
        anyDim = true;
    }
    return anyDim ? ratio : 0.0;
}

SparsePolyZonotope restructure(const SparsePolyZonotope& pzIn, Index pD) {
    SparsePolyZonotope pz = pzIn;
    const Index n = pz.dim();
    if (pD < n) throw std::invalid_argument("restructure: factor bound below ambient dimension");
    // Pruning moves columns into the zonotope part, so the lift at the end
    // adds up to n fresh factors whenever pruning or a non-empty independent
    // part makes it run.
    const Index newFactors = (pz.numIndependent() > 0 || pz.numFactors() > pD) ? n : 0;

    if (pz.numFactors() + newFactors > pD) {
        // Prune dependent factors, most recently introduced first, by moving
        // every column that touches a pruned factor into the zonotope part.
        const Index removeCount =
            std::min<Index>(pz.numFactors(), pz.numFactors() + newFactors - pD);
        std::vector<Index> rows(static_cast<std::size_t>(pz.numFactors()));
        std::iota(rows.begin(), rows.end(), Index{0});
        std::stable_sort(rows.begin(), rows.end(), [&pz](Index x, Index y) {
            return pz.ids()[static_cast<std::size_t>(x)] > pz.ids()[static_cast<std::size_t>(y)];
        });
        std::vector<bool> removed(static_cast<std::size_t>(pz.numFactors()), false);
        for (Index r = 0; r < removeCount; ++r) removed[static_cast<std::size_t>(rows[static_cast<std::size_t>(r)])] = true;

        std::vector<Index> affected, untouched;
        for (Index i = 0; i < pz.numDependent(); ++i) {
            bool touches = false;
            for (Index r = 0; r < pz.numFactors(); ++r)
                touches = touches || (removed[static_cast<std::size_t>(r)] && pz.exponents()(r, i) != 0);
            (touches ? affected : untouched).push_back(i);
        }

        Matrix Ga(n, static_cast<Index>(affected.size()));
        ExponentMatrix Ea(pz.numFactors(), static_cast<Index>(affected.size()));
        for (std::size_t c = 0; c < affected.size(); ++c) {
            Ga.col(static_cast<Index>(c)) = pz.generators().col(affected[c]);
            Ea.col(static_cast<Index>(c)) = pz.exponents().col(affected[c]);
        }
        const Zonotope moved = zonoEnclose({std::move(Ga), Matrix(n, 0), std::move(Ea), pz.ids()});

        std::vector<Index> keptRows;
        for (Index r = 0; r < pz.numFactors(); ++r)
            if (!removed[static_cast<std::size_t>(r)]) keptRows.push_back(r);

        Matrix G(n, static_cast<Index>(untouched.size()) + 1);
        ExponentMatrix E = ExponentMatrix::Zero(static_cast<Index>(keptRows.size()),
                                                static_cast<Index>(untouched.size()) + 1);
        G.col(0) = moved.center();
        IdVector id;
        for (Index r : keptRows) id.push_back(pz.ids()[static_cast<std::size_t>(r)]);
        for (std::size_t c = 0; c < untouched.size(); ++c) {
            G.col(static_cast<Index>(c) + 1) = pz.generators().col(untouched[c]);
            for (std::size_t r = 0; r < keptRows.size(); ++r)
                E(static_cast<Index>(r), static_cast<Index>(c) + 1) =
                    pz.exponents()(keptRows[r], untouched[c]);
        }
        Matrix GI(n, pz.numIndependent() + moved.numGenerators());
        GI << pz.independentGenerators(), moved.generators();
        pz = SparsePolyZonotope(std::move(G), std::move(GI), std::move(E), std::move(id));
    }

    if (pz.numIndependent() == 0) return normalize(pz);

    const Zonotope zred = reduceZonotope(Zonotope(Vector::Zero(n), pz.independentGenerators()),
                                         1.0, ZonotopeReduction::PrincipalComponents);
    const Index k = zred.numGenerators();

    Matrix G(n, pz.numDependent() + k + 1);
    G.col(0) = zred.center();
    G.middleCols(1, pz.numDependent()) = pz.generators();
    if (k > 0) G.rightCols(k) = zred.generators();

    ExponentMatrix E = ExponentMatrix::Zero(pz.numFactors() + k, pz.numDependent() + k + 1);
    E.block(0, 1, pz.numFactors(), pz.numDependent()) = pz.exponents();
    E.bottomRightCorner(k, k) = ExponentMatrix::Identity(k, k);

    IdVector id = pz.ids();
    const IdVector fresh = uniqueID(k);
    id.insert(id.end(), fresh.begin(), fresh.end());

    return normalize({std::move(G), Matrix(n, 0), std::move(E), std::move(id)});
}

}  // namespace spz
