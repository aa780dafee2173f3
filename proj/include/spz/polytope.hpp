#pragma once

#include "spz/interval.hpp"
#include "spz/types.hpp"

#include <stdexcept>
#include <vector>

namespace spz {

/// Polytope in vertex representation. Redundant vertices are permitted; for
/// dimensions above two the vertex list is generally kept unpruned.
class Polytope {
public:
    explicit Polytope(std::vector<Vector> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.empty()) throw std::invalid_argument("Polytope: needs at least one vertex");
        for (const Vector& v : vertices_)
            if (v.size() != vertices_.front().size())
                throw std::invalid_argument("Polytope: vertex dimension mismatch");
    }

    Index dim() const { return vertices_.front().size(); }
    Index numVertices() const { return static_cast<Index>(vertices_.size()); }
    const std::vector<Vector>& vertices() const { return vertices_; }

    IntervalVector intervalHull() const {
        Vector lo = vertices_.front(), hi = vertices_.front();
        for (const Vector& v : vertices_) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        return {lo, hi};
    }

private:
    std::vector<Vector> vertices_;
};

/// Convex hull of a 2-D point cloud (monotone chain), counter-clockwise, no
/// repeated endpoint. Collinear input degenerates to its extreme segment.
std::vector<Vector> convexHull2D(std::vector<Vector> points);

}  // namespace spz
