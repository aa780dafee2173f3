#include "spz/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spz::kernels {

bool parallelEnabled() {
#ifdef _OPENMP
    static const bool enabled = [] {
        const char* flag = std::getenv("SPZ_SERIAL");
        return flag == nullptr || flag[0] == '0';
    }();
    return enabled;
#else
    return false;
#endif
}

int maxThreads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Matrix quadMapGeneratorsSerial(const Matrix& Ghat, const std::vector<Matrix>& Qs) {
    const Index d = Ghat.rows();
    const Index h = Ghat.cols();
    const Index m = static_cast<Index>(Qs.size());
    Matrix out(m, h * h);
    for (Index i = 0; i < m; ++i) {
        const Matrix& Q = Qs[static_cast<std::size_t>(i)];
        for (Index j = 0; j < h; ++j)
            for (Index l = 0; l < h; ++l) {
                double acc = 0.0;
                for (Index r = 0; r < d; ++r) {
                    double row = 0.0;
                    for (Index c = 0; c < d; ++c) row += Q(r, c) * Ghat(c, l);
                    acc += Ghat(r, j) * row;
                }
                out(i, j * h + l) = acc;
            }
    }
    return out;
}

Matrix quadMapGeneratorsParallel(const Matrix& Ghat, const std::vector<Matrix>& Qs) {
    const Index d = Ghat.rows();
    const Index h = Ghat.cols();
    const Index m = static_cast<Index>(Qs.size());
    Matrix out(m, h * h);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (Index i = 0; i < m; ++i) {
        const Matrix& Q = Qs[static_cast<std::size_t>(i)];
        Index nnz = 0;
        for (Index r = 0; r < d && nnz <= d; ++r)
            for (Index c = 0; c < d; ++c)
                if (Q(r, c) != 0.0) ++nnz;
        Matrix block(h, h);
        if (nnz <= d / 2) {
            // Nearly empty quadratic form: rank-one updates beat the product.
            block.setZero();
            for (Index r = 0; r < d; ++r)
                for (Index c = 0; c < d; ++c)
                    if (Q(r, c) != 0.0)
                        block.noalias() += Q(r, c) * (Ghat.row(r).transpose() * Ghat.row(c));
        } else {
            // Reuse Q_i * Ghat for the whole block of row i.
            const Matrix QG = Q * Ghat;
            block.noalias() = Ghat.transpose() * QG;  // entry (j,l)
        }
        for (Index j = 0; j < h; ++j)
            out.block(i, j * h, 1, h) = block.row(j);
    }
    return out;
}

Matrix quadMapGenerators(const Matrix& Ghat, const std::vector<Matrix>& Qs) {
    for (const Matrix& Q : Qs)
        if (Q.rows() != Ghat.rows() || Q.cols() != Ghat.rows())
            throw std::invalid_argument("quadMapGenerators: Q shape mismatch");
    return parallelEnabled() ? quadMapGeneratorsParallel(Ghat, Qs)
                             : quadMapGeneratorsSerial(Ghat, Qs);
}

ExponentMatrix exponentPairSumsSerial(const ExponentMatrix& E) {
    const Index p = E.rows();
    const Index h = E.cols();
    ExponentMatrix out(p, h * h);
    for (Index j = 0; j < h; ++j)
        for (Index l = 0; l < h; ++l)
            for (Index r = 0; r < p; ++r) out(r, j * h + l) = E(r, j) + E(r, l);
    return out;
}

ExponentMatrix exponentPairSumsParallel(const ExponentMatrix& E) {
    const Index p = E.rows();
    const Index h = E.cols();
    ExponentMatrix out(p, h * h);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (Index j = 0; j < h; ++j) {
        const ExponentVector base = E.col(j);
        for (Index l = 0; l < h; ++l) out.col(j * h + l) = base + E.col(l);
    }
    return out;
}

ExponentMatrix exponentPairSums(const ExponentMatrix& E) {
    return parallelEnabled() ? exponentPairSumsParallel(E) : exponentPairSumsSerial(E);
}

namespace {

Matrix evaluateBatchImpl(const SparsePolyZonotope& pz, const Matrix& alphas, const Matrix& betas,
                         bool parallel) {
    if (alphas.rows() != pz.numFactors() || betas.rows() != pz.numIndependent() ||
        alphas.cols() != betas.cols())
        throw std::invalid_argument("evaluateBatch: sample shape mismatch");
    const Index count = alphas.cols();
    Matrix out(pz.dim(), count);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
    (void)parallel;
#endif
    for (Index s = 0; s < count; ++s) out.col(s) = pz.evaluate(alphas.col(s), betas.col(s));
    return out;
}

}  // namespace

Matrix evaluateBatchSerial(const SparsePolyZonotope& pz, const Matrix& alphas,
                           const Matrix& betas) {
    return evaluateBatchImpl(pz, alphas, betas, false);
}

Matrix evaluateBatchParallel(const SparsePolyZonotope& pz, const Matrix& alphas,
                             const Matrix& betas) {
    return evaluateBatchImpl(pz, alphas, betas, true);
}

Matrix evaluateBatch(const SparsePolyZonotope& pz, const Matrix& alphas, const Matrix& betas) {
    return evaluateBatchImpl(pz, alphas, betas, parallelEnabled());
}

}  // namespace spz::kernels
