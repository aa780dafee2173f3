#pragma once

#include "spz/types.hpp"

#include <atomic>
#include <cstdint>
#include <utility>

namespace spz {

/**
 * Sparse polynomial zonotope <G, GI, E, id>.
 *
 * The set consists of all points
 *     sum_i (prod_k alpha_k^E(k,i)) G(:,i) + sum_j beta_j GI(:,j)
 * with alpha_k, beta_j in [-1,1]. G holds the dependent generators (n x h),
 * GI the independent generators (n x q, possibly empty), E the exponent
 * matrix (p x h) and id the p distinct positive factor identifiers.
 *
 * Values are immutable after construction and safe to share across threads.
 */
class SparsePolyZonotope {
public:
    SparsePolyZonotope(Matrix G, Matrix GI, ExponentMatrix E, IdVector id);

    /// Degenerate single-point set {c}.
    static SparsePolyZonotope point(const Vector& c);

    Index dim() const { return G_.rows(); }
    Index numDependent() const { return G_.cols(); }        // h
    Index numIndependent() const { return GI_.cols(); }     // q
    Index numFactors() const { return static_cast<Index>(id_.size()); }  // p

    /// Order rho = (h + q) / n.
    double order() const {
        return static_cast<double>(numDependent() + numIndependent()) / static_cast<double>(dim());
    }

    const Matrix& generators() const { return G_; }
    const Matrix& independentGenerators() const { return GI_; }
    const ExponentMatrix& exponents() const { return E_; }
    const IdVector& ids() const { return id_; }

    /// Point of the set for a concrete factor assignment (Eq. of the definition).
    Vector evaluate(const Vector& alpha, const Vector& beta) const;

private:
    Matrix G_;
    Matrix GI_;
    ExponentMatrix E_;
    IdVector id_;
};

/// Fresh-identifier source. Emitted values are strictly increasing, so every
/// identifier is unique within the process. Increment is atomic.
class IdGenerator {
public:
    IdVector uniqueID(Index m);

    /// Restart numbering from 1. Only meant for process-like isolation in
    /// tests and demo output generation; never call mid-computation.
    void reset() { next_.store(1); }

    static IdGenerator& global();

private:
    std::atomic<std::int64_t> next_{1};
};

/// uniqueID(m) on the process-wide generator.
IdVector uniqueID(Index m);

/// Adjusts two SPZs to a common identifier vector without changing either set.
/// The shared vector is [id1, entries of id2 not in id1]; exponent matrices are
/// padded with zero rows / reordered accordingly.
std::pair<SparsePolyZonotope, SparsePolyZonotope> mergeID(const SparsePolyZonotope& pz1,
                                                          const SparsePolyZonotope& pz2);

/// Compressed representation: monomials with identical variable part are
/// summed. Exponent columns are sorted lexicographically ascending, so the
/// output is deterministic. Zero generators produced by cancellation are kept.
SparsePolyZonotope compact(const SparsePolyZonotope& pz);

/// Matrix-level form of compact: merges duplicate exponent columns of (G, E).
std::pair<Matrix, ExponentMatrix> compactColumns(const Matrix& G, const ExponentMatrix& E);

/// Drops all-zero generator columns (dependent and independent) and all-zero
/// exponent rows together with their identifiers. Setwise identity.
SparsePolyZonotope normalize(const SparsePolyZonotope& pz);

/// Number of generators a dense degree-mu polynomial zonotope with p dependent
/// factors stores: binomial(mu + p, p).
std::uint64_t denseGeneratorCount(int mu, int p);

}  // namespace spz
