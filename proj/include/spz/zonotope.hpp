#pragma once

#include "spz/interval.hpp"
#include "spz/types.hpp"

#include <stdexcept>
#include <utility>

namespace spz {

/// Zonotope <c, G>: { c + sum_i alpha_i G(:,i) | alpha_i in [-1,1] }.
class Zonotope {
public:
    Zonotope(Vector c, Matrix G) : c_(std::move(c)), G_(std::move(G)) {
        if (G_.cols() > 0 && G_.rows() != c_.size())
            throw std::invalid_argument("Zonotope: generator row count mismatch");
        if (G_.cols() == 0 && G_.rows() != c_.size()) G_.resize(c_.size(), 0);
    }
    explicit Zonotope(Vector c) : Zonotope(std::move(c), Matrix()) {}

    Index dim() const { return c_.size(); }
    Index numGenerators() const { return G_.cols(); }
    double order() const { return static_cast<double>(G_.cols()) / static_cast<double>(dim()); }

    const Vector& center() const { return c_; }
    const Matrix& generators() const { return G_; }

    IntervalVector intervalHull() const {
        const Vector r = G_.cols() > 0 ? Vector(G_.cwiseAbs().rowwise().sum()) : Vector(Vector::Zero(dim()));
        return IntervalVector::fromCenterRadius(c_, r);
    }

    Zonotope linearMap(const Matrix& M) const {
        if (M.cols() != dim()) throw std::invalid_argument("Zonotope::linearMap: shape mismatch");
        return {M * c_, M * G_};
    }

    Zonotope minkowskiSum(const Zonotope& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("Zonotope::minkowskiSum: dimension mismatch");
        Matrix G(dim(), G_.cols() + o.G_.cols());
        G << G_, o.G_;
        return {c_ + o.c_, std::move(G)};
    }

    Zonotope cartesianProduct(const Zonotope& o) const {
        Vector c(dim() + o.dim());
        c << c_, o.c_;
        Matrix G = Matrix::Zero(dim() + o.dim(), G_.cols() + o.G_.cols());
        G.topLeftCorner(dim(), G_.cols()) = G_;
        G.bottomRightCorner(o.dim(), o.G_.cols()) = o.G_;
        return {std::move(c), std::move(G)};
    }

    /// Enclosure of conv(this, {0}): <c/2, [G, c/2]>.
    Zonotope hullWithOrigin() const {
        Matrix G(dim(), G_.cols() + 1);
        G << G_, 0.5 * c_;
        return {0.5 * c_, std::move(G)};
    }

    Vector evaluate(const Vector& alpha) const {
        if (alpha.size() != G_.cols()) throw std::invalid_argument("Zonotope::evaluate: size mismatch");
        return c_ + G_ * alpha;
    }

private:
    Vector c_;
    Matrix G_;
};

}  // namespace spz
