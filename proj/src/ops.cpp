#include "spz/ops.hpp"

#include "spz/convert.hpp"
#include "spz/kernels.hpp"

#include <stdexcept>

namespace spz {

SparsePolyZonotope linearMap(const Matrix& M, const SparsePolyZonotope& pz) {
    if (M.cols() != pz.dim()) throw std::invalid_argument("linearMap: dimension mismatch");
    return {M * pz.generators(), M * pz.independentGenerators(), pz.exponents(), pz.ids()};
}

SparsePolyZonotope minkowskiSum(const SparsePolyZonotope& pz1, const SparsePolyZonotope& pz2) {
    if (pz1.dim() != pz2.dim()) throw std::invalid_argument("minkowskiSum: dimension mismatch");
    const Index h1 = pz1.numDependent(), h2 = pz2.numDependent();
    const Index p1 = pz1.numFactors(), p2 = pz2.numFactors();

    Matrix G(pz1.dim(), h1 + h2);
    G << pz1.generators(), pz2.generators();
    Matrix GI(pz1.dim(), pz1.numIndependent() + pz2.numIndependent());
    GI << pz1.independentGenerators(), pz2.independentGenerators();
    ExponentMatrix E = ExponentMatrix::Zero(p1 + p2, h1 + h2);
    E.topLeftCorner(p1, h1) = pz1.exponents();
    E.bottomRightCorner(p2, h2) = pz2.exponents();
    return {std::move(G), std::move(GI), std::move(E), uniqueID(p1 + p2)};
}

SparsePolyZonotope minkowskiSum(const SparsePolyZonotope& pz, const Zonotope& z) {
    if (pz.dim() != z.dim()) throw std::invalid_argument("minkowskiSum: dimension mismatch");
    Matrix G(pz.dim(), pz.numDependent() + 1);
    G << z.center(), pz.generators();
    Matrix GI(pz.dim(), pz.numIndependent() + z.numGenerators());
    GI << pz.independentGenerators(), z.generators();
    ExponentMatrix E = ExponentMatrix::Zero(pz.numFactors(), pz.numDependent() + 1);
    E.rightCols(pz.numDependent()) = pz.exponents();
    return {std::move(G), std::move(GI), std::move(E), pz.ids()};
}

SparsePolyZonotope translate(const SparsePolyZonotope& pz, const Vector& v) {
    return minkowskiSum(pz, Zonotope(v));
}

SparsePolyZonotope exactAdd(const SparsePolyZonotope& pz1, const SparsePolyZonotope& pz2) {
    if (pz1.dim() != pz2.dim()) throw std::invalid_argument("exactAdd: dimension mismatch");
    const auto [a, b] = mergeID(pz1, pz2);

    Matrix G(a.dim(), a.numDependent() + b.numDependent());
    G << a.generators(), b.generators();
    Matrix GI(a.dim(), a.numIndependent() + b.numIndependent());
    GI << a.independentGenerators(), b.independentGenerators();
    ExponentMatrix E(a.numFactors(), a.numDependent() + b.numDependent());
    E << a.exponents(), b.exponents();
    return compact({std::move(G), std::move(GI), std::move(E), a.ids()});
}

SparsePolyZonotope cartesianProduct(const SparsePolyZonotope& pz1,
                                    const SparsePolyZonotope& pz2) {
    const Index n = pz1.dim(), m = pz2.dim();
    const Index h1 = pz1.numDependent(), h2 = pz2.numDependent();
    const Index p1 = pz1.numFactors(), p2 = pz2.numFactors();

    Matrix G = Matrix::Zero(n + m, h1 + h2);
    G.topLeftCorner(n, h1) = pz1.generators();
    G.bottomRightCorner(m, h2) = pz2.generators();
    Matrix GI = Matrix::Zero(n + m, pz1.numIndependent() + pz2.numIndependent());
    GI.topLeftCorner(n, pz1.numIndependent()) = pz1.independentGenerators();
    GI.bottomRightCorner(m, pz2.numIndependent()) = pz2.independentGenerators();
    ExponentMatrix E = ExponentMatrix::Zero(p1 + p2, h1 + h2);
    E.topLeftCorner(p1, h1) = pz1.exponents();
    E.bottomRightCorner(p2, h2) = pz2.exponents();
    return {std::move(G), std::move(GI), std::move(E), uniqueID(p1 + p2)};
}

SparsePolyZonotope cartesianProduct(const SparsePolyZonotope& pz, const Zonotope& z) {
    const Index n = pz.dim(), m = z.dim();
    const Index h = pz.numDependent();

    Matrix G = Matrix::Zero(n + m, h + 1);
    G.block(n, 0, m, 1) = z.center();
    G.topRightCorner(n, h) = pz.generators();
    Matrix GI = Matrix::Zero(n + m, pz.numIndependent() + z.numGenerators());
    GI.topLeftCorner(n, pz.numIndependent()) = pz.independentGenerators();
    GI.bottomRightCorner(m, z.numGenerators()) = z.generators();
    ExponentMatrix E = ExponentMatrix::Zero(pz.numFactors(), h + 1);
    E.rightCols(h) = pz.exponents();
    return {std::move(G), std::move(GI), std::move(E), pz.ids()};
}

SparsePolyZonotope quadMapDependent(const SparsePolyZonotope& pz, const QuadForm& Qs) {
    if (pz.numIndependent() > 0)
        throw std::invalid_argument("quadMapDependent: independent generators must be empty");
    if (Qs.empty()) throw std::invalid_argument("quadMapDependent: no quadratic forms");
    for (const Matrix& Q : Qs)
        if (Q.rows() != pz.dim() || Q.cols() != pz.dim())
            throw std::invalid_argument("quadMapDependent: Q dimension mismatch");

    const Matrix G = kernels::quadMapGenerators(pz.generators(), Qs);
    ExponentMatrix E = kernels::exponentPairSums(pz.exponents());
    return compact({G, Matrix(static_cast<Index>(Qs.size()), 0), std::move(E), pz.ids()});
}

SparsePolyZonotope quadMap(const SparsePolyZonotope& pzIn, const QuadForm& Qs) {
    if (Qs.empty()) throw std::invalid_argument("quadMap: no quadratic forms");
    for (const Matrix& Q : Qs)
        if (Q.rows() != pzIn.dim() || Q.cols() != pzIn.dim())
            throw std::invalid_argument("quadMap: Q dimension mismatch");
    if (pzIn.numIndependent() == 0) return quadMapDependent(pzIn, Qs);

    // Compacting the dependent part first makes the monomial bookkeeping below
    // exact (no two dependent columns share an exponent vector).
    const SparsePolyZonotope pz = compact(pzIn);
    const Index n = pz.dim();
    const Index h = pz.numDependent();
    const Index q = pz.numIndependent();
    const Index m = static_cast<Index>(Qs.size());
    const Matrix& G = pz.generators();
    const Matrix& GI = pz.independentGenerators();

    // Lifting the independent generators to dependent form with fresh factors
    // and applying the dependent quadratic map splits the h+q pair columns
    // into three groups: dependent x dependent pairs keep only original
    // factors and stay dependent; every pair touching a lifted factor is
    // enclosed by a zonotope. Pairs with identical monomials are summed the
    // way compact would.
    std::vector<Matrix> QSym;
    QSym.reserve(Qs.size());
    for (const Matrix& Q : Qs) QSym.push_back(Q + Q.transpose());

    // Dependent-by-dependent block.
    Matrix Gdd(m, h * h);
    ExponentMatrix Edd(pz.numFactors(), h * h);
    if (h > 0) {
        Gdd = kernels::quadMapGenerators(G, Qs);
        Edd = kernels::exponentPairSums(pz.exponents());
    }

    // Zonotope enclosure of the remainder: squares of lifted factors have an
    // all-even monomial, every other pair evaluates to [-1,1]. One product
    // per output dimension covers all mixed and cross pairs.
    Vector cz = Vector::Zero(m);
    Matrix Gz(m, q + h * q + q * (q - 1) / 2);
    std::vector<Matrix> mixed(static_cast<std::size_t>(m));   // h x q
    std::vector<Matrix> cross(static_cast<std::size_t>(m));   // q x q, symmetric
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (Index i = 0; i < m; ++i) {
        const Matrix& S = QSym[static_cast<std::size_t>(i)];
        Index nnz = 0;
        for (Index r = 0; r < S.rows() && nnz <= n; ++r)
            for (Index c = 0; c < S.cols(); ++c)
                if (S(r, c) != 0.0) ++nnz;
        Matrix& mix = mixed[static_cast<std::size_t>(i)];
        Matrix& crs = cross[static_cast<std::size_t>(i)];
        if (nnz <= n / 2) {  // nearly empty form: rank-one accumulation
            mix = Matrix::Zero(h, q);
            crs = Matrix::Zero(q, q);
            for (Index r = 0; r < S.rows(); ++r)
                for (Index c = 0; c < S.cols(); ++c) {
                    if (S(r, c) == 0.0) continue;
                    mix.noalias() += S(r, c) * (G.row(r).transpose() * GI.row(c));
                    crs.noalias() += S(r, c) * (GI.row(r).transpose() * GI.row(c));
                }
        } else {
            const Matrix QSymGI = S * GI;
            mix = G.transpose() * QSymGI;
            crs = GI.transpose() * QSymGI;
        }
    }
    Index col = 0;
    for (Index j = 0; j < q; ++j) {  // beta_j^2 terms
        Vector g(m);
        for (Index i = 0; i < m; ++i) g(i) = 0.5 * cross[static_cast<std::size_t>(i)](j, j);
        cz += 0.5 * g;
        Gz.col(col++) = 0.5 * g;
    }
    for (Index j = 0; j < h; ++j)  // alpha-monomial times beta_l cross terms
        for (Index l = 0; l < q; ++l) {
            for (Index i = 0; i < m; ++i)
                Gz(i, col) = mixed[static_cast<std::size_t>(i)](j, l);
            ++col;
        }
    for (Index j = 0; j < q; ++j)  // beta_j beta_l cross terms
        for (Index l = j + 1; l < q; ++l) {
            for (Index i = 0; i < m; ++i)
                Gz(i, col) = cross[static_cast<std::size_t>(i)](j, l);
            ++col;
        }

    Matrix Gout(m, h * h + 1);
    Gout.col(0) = cz;
    if (h > 0) Gout.rightCols(h * h) = Gdd;
    ExponentMatrix Eout = ExponentMatrix::Zero(pz.numFactors(), h * h + 1);
    if (h > 0) Eout.rightCols(h * h) = Edd;

    auto [Gc, Ec] = compactColumns(Gout, Eout);
    return {std::move(Gc), std::move(Gz), std::move(Ec), pz.ids()};
}

SparsePolyZonotope convHullDependent(const SparsePolyZonotope& pz1,
                                     const SparsePolyZonotope& pz2) {
    if (pz1.dim() != pz2.dim())
        throw std::invalid_argument("convHullDependent: dimension mismatch");
    if (pz1.numIndependent() > 0 || pz2.numIndependent() > 0)
        throw std::invalid_argument("convHullDependent: independent generators must be empty");

    const Index n = pz1.dim();
    const Index h1 = pz1.numDependent(), h2 = pz2.numDependent();
    const Index p1 = pz1.numFactors(), p2 = pz2.numFactors();

    Matrix G(n, 2 * (h1 + h2));
    G << 0.5 * pz1.generators(), 0.5 * pz1.generators(), 0.5 * pz2.generators(),
        -0.5 * pz2.generators();

    ExponentMatrix E = ExponentMatrix::Zero(p1 + p2 + 1, 2 * (h1 + h2));
    E.block(0, 0, p1, h1) = pz1.exponents();
    E.block(0, h1, p1, h1) = pz1.exponents();
    E.block(p1, 2 * h1, p2, h2) = pz2.exponents();
    E.block(p1, 2 * h1 + h2, p2, h2) = pz2.exponents();
    E.block(p1 + p2, h1, 1, h1).setOnes();               // lambda row on the second pz1 block
    E.block(p1 + p2, 2 * h1 + h2, 1, h2).setOnes();      // and on the negated pz2 block

    return {std::move(G), Matrix(n, 0), std::move(E), uniqueID(p1 + p2 + 1)};
}

SparsePolyZonotope convHull(const SparsePolyZonotope& pz1, const SparsePolyZonotope& pz2) {
    if (pz1.dim() != pz2.dim()) throw std::invalid_argument("convHull: dimension mismatch");
    const Index n = pz1.dim();

    const SparsePolyZonotope dep = convHullDependent(
        {pz1.generators(), Matrix(n, 0), pz1.exponents(), pz1.ids()},
        {pz2.generators(), Matrix(n, 0), pz2.exponents(), pz2.ids()});

    // Convex hull of the two centred independent zonotopes.
    const Matrix& A = pz1.independentGenerators();
    const Matrix& B = pz2.independentGenerators();
    const bool firstLarger = A.cols() >= B.cols();
    const Matrix& big = firstLarger ? A : B;
    const Matrix& small = firstLarger ? B : A;
    const Index qs = small.cols();
    Matrix GI(n, big.cols() + qs);
    GI << 0.5 * (big.leftCols(qs) + small), 0.5 * (big.leftCols(qs) - small),
        big.rightCols(big.cols() - qs);

    return {dep.generators(), std::move(GI), dep.exponents(), dep.ids()};
}

}  // namespace spz
