#include "spz/sparse_poly_zonotope.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace spz {

namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 31;

// Lexicographic comparison of exponent columns, row 0 first.
bool columnLess(const ExponentMatrix& E, Index a, Index b) {
    for (Index r = 0; r < E.rows(); ++r) {
        if (E(r, a) != E(r, b)) return E(r, a) < E(r, b);
    }
    return false;
}

bool columnEqual(const ExponentMatrix& E, Index a, Index b) {
    for (Index r = 0; r < E.rows(); ++r)
        if (E(r, a) != E(r, b)) return false;
    return true;
}

}  // namespace

SparsePolyZonotope::SparsePolyZonotope(Matrix G, Matrix GI, ExponentMatrix E, IdVector id)
    : G_(std::move(G)), GI_(std::move(GI)), E_(std::move(E)), id_(std::move(id)) {
    if (G_.rows() == 0) throw std::invalid_argument("SparsePolyZonotope: ambient dimension is zero");
    if (E_.cols() != G_.cols())
        throw std::invalid_argument("SparsePolyZonotope: E must have as many columns as G");
    if (static_cast<Index>(id_.size()) != E_.rows())
        throw std::invalid_argument("SparsePolyZonotope: id length must equal rows of E");
    if (GI_.cols() > 0 && GI_.rows() != G_.rows())
        throw std::invalid_argument("SparsePolyZonotope: GI row count mismatch");
    if (GI_.cols() == 0 && GI_.rows() != G_.rows()) GI_.resize(G_.rows(), 0);

    for (Index i = 0; i < E_.rows(); ++i)
        for (Index j = 0; j < E_.cols(); ++j) {
            if (E_(i, j) < 0) throw std::invalid_argument("SparsePolyZonotope: negative exponent");
            if (E_(i, j) > kMaxExponent)
                throw std::invalid_argument("SparsePolyZonotope: exponent exceeds 2^31");
        }

    std::unordered_set<std::int64_t> seen;
    for (std::int64_t v : id_) {
        if (v <= 0) throw std::invalid_argument("SparsePolyZonotope: identifiers must be positive");
        if (!seen.insert(v).second)
            throw std::invalid_argument("SparsePolyZonotope: duplicate identifier");
    }
}

SparsePolyZonotope SparsePolyZonotope::point(const Vector& c) {
    Matrix G = c;
    return {std::move(G), Matrix(c.size(), 0), ExponentMatrix(0, 1), IdVector{}};
}

Vector SparsePolyZonotope::evaluate(const Vector& alpha, const Vector& beta) const {
    if (alpha.size() != numFactors())
        throw std::invalid_argument("evaluate: alpha length must equal factor count");
    if (beta.size() != numIndependent())
        throw std::invalid_argument("evaluate: beta length must equal independent generator count");

    Vector result = Vector::Zero(dim());
    for (Index i = 0; i < numDependent(); ++i) {
        double monomial = 1.0;
        for (Index k = 0; k < numFactors(); ++k) monomial *= detail::ipow(alpha(k), E_(k, i));
        result += monomial * G_.col(i);
    }
    for (Index j = 0; j < numIndependent(); ++j) result += beta(j) * GI_.col(j);
    return result;
}

IdVector IdGenerator::uniqueID(Index m) {
    if (m < 0) throw std::invalid_argument("uniqueID: negative count");
    const std::int64_t first = next_.fetch_add(m);
    IdVector out(static_cast<std::size_t>(m));
    std::iota(out.begin(), out.end(), first);
    return out;
}

IdGenerator& IdGenerator::global() {
    static IdGenerator instance;
    return instance;
}

IdVector uniqueID(Index m) { return IdGenerator::global().uniqueID(m); }

std::pair<SparsePolyZonotope, SparsePolyZonotope> mergeID(const SparsePolyZonotope& pz1,
                                                          const SparsePolyZonotope& pz2) {
    const IdVector& id1 = pz1.ids();
    const IdVector& id2 = pz2.ids();

    IdVector merged = id1;
    for (std::int64_t v : id2)
        if (std::find(id1.begin(), id1.end(), v) == id1.end()) merged.push_back(v);

    const Index a = static_cast<Index>(merged.size());

    ExponentMatrix E1 = ExponentMatrix::Zero(a, pz1.numDependent());
    E1.topRows(pz1.numFactors()) = pz1.exponents();

    ExponentMatrix E2 = ExponentMatrix::Zero(a, pz2.numDependent());
    for (Index i = 0; i < a; ++i) {
        const auto it = std::find(id2.begin(), id2.end(), merged[static_cast<std::size_t>(i)]);
        if (it != id2.end()) E2.row(i) = pz2.exponents().row(it - id2.begin());
    }

    return {SparsePolyZonotope(pz1.generators(), pz1.independentGenerators(), std::move(E1), merged),
            SparsePolyZonotope(pz2.generators(), pz2.independentGenerators(), std::move(E2), merged)};
}

std::pair<Matrix, ExponentMatrix> compactColumns(const Matrix& G, const ExponentMatrix& E) {
    const Index h = G.cols();
    std::vector<Index> perm(static_cast<std::size_t>(h));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&E](Index a, Index b) { return columnLess(E, a, b); });

    // Merge runs of identical neighbours.
    std::vector<Index> heads;
    std::vector<std::vector<Index>> groups;
    for (Index pos = 0; pos < h; ++pos) {
        const Index col = perm[static_cast<std::size_t>(pos)];
        if (!heads.empty() && columnEqual(E, heads.back(), col)) {
            groups.back().push_back(col);
        } else {
            heads.push_back(col);
            groups.push_back({col});
        }
    }

    const Index k = static_cast<Index>(heads.size());
    Matrix Gk(G.rows(), k);
    ExponentMatrix Ek(E.rows(), k);
    for (Index j = 0; j < k; ++j) {
        Ek.col(j) = E.col(heads[static_cast<std::size_t>(j)]);
        Vector sum = Vector::Zero(G.rows());
        for (Index col : groups[static_cast<std::size_t>(j)]) sum += G.col(col);
        Gk.col(j) = sum;
    }
    return {std::move(Gk), std::move(Ek)};
}

SparsePolyZonotope compact(const SparsePolyZonotope& pz) {
    auto [G, E] = compactColumns(pz.generators(), pz.exponents());
    return {std::move(G), pz.independentGenerators(), std::move(E), pz.ids()};
}

SparsePolyZonotope normalize(const SparsePolyZonotope& pz) {
    std::vector<Index> keepCols;
    for (Index i = 0; i < pz.numDependent(); ++i)
        if (!pz.generators().col(i).isZero(0.0)) keepCols.push_back(i);

    std::vector<Index> keepIndep;
    for (Index j = 0; j < pz.numIndependent(); ++j)
        if (!pz.independentGenerators().col(j).isZero(0.0)) keepIndep.push_back(j);

    std::vector<Index> keepRows;
    for (Index r = 0; r < pz.numFactors(); ++r) {
        bool used = false;
        for (Index i : keepCols) used = used || pz.exponents()(r, i) != 0;
        if (used) keepRows.push_back(r);
    }

    Matrix G(pz.dim(), static_cast<Index>(keepCols.size()));
    ExponentMatrix E(static_cast<Index>(keepRows.size()), static_cast<Index>(keepCols.size()));
    IdVector id;
    id.reserve(keepRows.size());
    for (Index r : keepRows) id.push_back(pz.ids()[static_cast<std::size_t>(r)]);
    for (std::size_t c = 0; c < keepCols.size(); ++c) {
        G.col(static_cast<Index>(c)) = pz.generators().col(keepCols[c]);
        for (std::size_t r = 0; r < keepRows.size(); ++r)
            E(static_cast<Index>(r), static_cast<Index>(c)) = pz.exponents()(keepRows[r], keepCols[c]);
    }

    Matrix GI(pz.dim(), static_cast<Index>(keepIndep.size()));
    for (std::size_t j = 0; j < keepIndep.size(); ++j)
        GI.col(static_cast<Index>(j)) = pz.independentGenerators().col(keepIndep[j]);

    return {std::move(G), std::move(GI), std::move(E), std::move(id)};
}

std::uint64_t denseGeneratorCount(int mu, int p) {
    if (mu < 0 || p < 0) throw std::invalid_argument("denseGeneratorCount: negative argument");
    // binomial(mu + p, p) with intermediate division to stay in 64 bits
    std::uint64_t result = 1;
    const std::uint64_t n = static_cast<std::uint64_t>(mu) + static_cast<std::uint64_t>(p);
    const std::uint64_t k = std::min<std::uint64_t>(p, n - static_cast<std::uint64_t>(p));
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (result > (~std::uint64_t{0}) / (n - k + i))
            throw std::overflow_error("denseGeneratorCount: overflow");
        result = result * (n - k + i) / i;
    }
    return result;
}

}  // namespace spz
