#include "spz/polytope.hpp"

#include <algorithm>

namespace spz {

std::vector<Vector> convexHull2D(std::vector<Vector> points) {
    if (points.empty()) return points;
    if (points.front().size() != 2)
        throw std::invalid_argument("convexHull2D: points must be two-dimensional");

    std::sort(points.begin(), points.end(), [](const Vector& a, const Vector& b) {
        return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vector& a, const Vector& b) { return a == b; }),
                 points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    const auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
        return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
    };

    std::vector<Vector> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper hull
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace spz
