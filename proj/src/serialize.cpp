#include "spz/serialize.hpp"

#include "spz/convert.hpp"
#include "spz/kernels.hpp"
#include "spz/ops.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace spz {

namespace {

nlohmann::json matrixToJson(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json exponentsToJson(const ExponentMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json pointsToJson(const std::vector<Vector>& points) {
    nlohmann::json out = nlohmann::json::array();
    for (const Vector& p : points) {
        nlohmann::json entry = nlohmann::json::array();
        for (Index i = 0; i < p.size(); ++i) entry.push_back(p(i));
        out.push_back(std::move(entry));
    }
    return out;
}

nlohmann::json cloudToJson(const Matrix& points) {
    nlohmann::json out = nlohmann::json::array();
    for (Index c = 0; c < points.cols(); ++c) {
        nlohmann::json entry = nlohmann::json::array();
        for (Index r = 0; r < points.rows(); ++r) entry.push_back(points(r, c));
        out.push_back(std::move(entry));
    }
    return out;
}

nlohmann::json polygonJson(const SparsePolyZonotope& pz, Index projX, Index projY) {
    return pointsToJson(zonotopePolygon(zonoEnclose(pz), projX, projY));
}

Matrix sampleCloud(const SparsePolyZonotope& pz, Index count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Matrix alphas(pz.numFactors(), count), betas(pz.numIndependent(), count);
    for (Index c = 0; c < count; ++c) {
        for (Index r = 0; r < alphas.rows(); ++r) alphas(r, c) = unit(rng);
        for (Index r = 0; r < betas.rows(); ++r) betas(r, c) = unit(rng);
    }
    return kernels::evaluateBatch(pz, alphas, betas);
}

}  // namespace

nlohmann::json toJson(const SparsePolyZonotope& pz) {
    return {{"G", matrixToJson(pz.generators())},
            {"GI", matrixToJson(pz.independentGenerators())},
            {"E", exponentsToJson(pz.exponents())},
            {"id", pz.ids()}};
}

nlohmann::json toJson(const IntervalVector& iv) {
    nlohmann::json lo = nlohmann::json::array(), hi = nlohmann::json::array();
    for (Index i = 0; i < iv.size(); ++i) {
        lo.push_back(iv.lower()(i));
        hi.push_back(iv.upper()(i));
    }
    return {{"lower", std::move(lo)}, {"upper", std::move(hi)}};
}

IntervalVector intervalVectorFromJson(const nlohmann::json& j) {
    const auto& lo = j.at("lower");
    const auto& hi = j.at("upper");
    if (lo.size() != hi.size()) throw std::invalid_argument("interval: bound size mismatch");
    Vector l(static_cast<Index>(lo.size())), u(static_cast<Index>(hi.size()));
    for (std::size_t i = 0; i < lo.size(); ++i) {
        l(static_cast<Index>(i)) = lo[i].get<double>();
        u(static_cast<Index>(i)) = hi[i].get<double>();
    }
    return {l, u};
}

std::vector<Vector> zonotopePolygon(const Zonotope& z, Index dx, Index dy) {
    if (dx < 0 || dy < 0 || dx >= z.dim() || dy >= z.dim() || dx == dy)
        throw std::invalid_argument("zonotopePolygon: bad projection dimensions");

    Matrix P = Matrix::Zero(2, z.dim());
    P(0, dx) = 1.0;
    P(1, dy) = 1.0;
    const Zonotope flat = z.linearMap(P);

    // Normalize generator signs into the upper half plane and drop zeros.
    std::vector<Vector> gens;
    for (Index i = 0; i < flat.numGenerators(); ++i) {
        Vector g = flat.generators().col(i);
        if (g.isZero(0.0)) continue;
        if (g(1) < 0.0 || (g(1) == 0.0 && g(0) < 0.0)) g = -g;
        gens.push_back(std::move(g));
    }
    if (gens.empty()) return {flat.center(), flat.center()};

    std::sort(gens.begin(), gens.end(), [](const Vector& a, const Vector& b) {
        return std::atan2(a(1), a(0)) < std::atan2(b(1), b(0));
    });

    Vector corner = flat.center();
    for (const Vector& g : gens) corner -= g;

    // Walk one boundary half by adding 2g in angular order, then the
    // point-symmetric half by subtracting them again.
    std::vector<Vector> polygon;
    polygon.reserve(2 * gens.size() + 1);
    polygon.push_back(corner);
    Vector v = corner;
    for (const Vector& g : gens) {
        v += 2.0 * g;
        polygon.push_back(v);
    }
    for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
        v -= 2.0 * gens[i];
        polygon.push_back(v);
    }
    polygon.push_back(polygon.front());
    return polygon;
}

void writeReachRecords(std::ostream& out, const ReachResult& result, Index projX, Index projY) {
    // A degenerate projection (one-dimensional systems) omits the polygons.
    const bool polygons = projX != projY;
    long step = 0;
    for (const StepRecord& record : result.steps) {
        nlohmann::json interval{{"kind", "time-interval set"},
                                {"t_start", record.tStart},
                                {"t_end", record.tEnd},
                                {"set", toJson(record.timeInterval)}};
        if (polygons) interval["polygon"] = polygonJson(record.timeInterval, projX, projY);
        out << interval.dump() << '\n';
        nlohmann::json point{{"kind", "time-point set"},
                             {"t_start", record.tEnd},
                             {"t_end", record.tEnd},
                             {"set", toJson(record.timePoint)}};
        if (polygons) point["polygon"] = polygonJson(record.timePoint, projX, projY);
        out << point.dump() << '\n';
        nlohmann::json diag{{"kind", "diagnostic"},
                            {"step", step},
                            {"fixed_point_iterations", record.fixedPointIterations},
                            {"restructured", record.restructured}};
        if (std::isfinite(record.volumeRatio)) diag["vol_ratio"] = record.volumeRatio;
        else diag["vol_ratio"] = "inf";
        out << diag.dump() << '\n';
        ++step;
    }
    nlohmann::json summary{{"kind", "summary"},
                           {"steps", static_cast<long>(result.steps.size())},
                           {"restructures", result.restructureCount},
                           {"fixed_point_iterations_total", result.totalFixedPointIterations}};
    out << summary.dump() << '\n';
}

namespace {

SparsePolyZonotope exampleConstructionSet() {
    Matrix G(2, 4);
    G << 4, 2, 1, 2, 4, 0, 2, 2;
    Matrix GI(2, 1);
    GI << 1, 0;
    ExponentMatrix E(2, 4);
    E << 0, 1, 0, 3, 0, 0, 1, 1;
    return {G, GI, E, {1, 2}};
}

SparsePolyZonotope enclosureExampleSet() {
    Matrix G(2, 5);
    G << -0.5, 1, 0, -1, 1, -0.5, 1, 1, 1, 1;
    ExponentMatrix E(2, 5);
    E << 0, 1, 0, 1, 2, 0, 0, 1, 1, 0;
    return {G, Matrix(2, 0), E, {1, 2}};
}

void writeStage(std::ostream& out, const std::string& name, const SparsePolyZonotope& pz,
                std::uint64_t seed) {
    nlohmann::json record{{"kind", "demo-stage"},
                          {"name", name},
                          {"set", toJson(pz)},
                          {"polygon", polygonJson(pz, 0, 1)},
                          {"samples", cloudToJson(sampleCloud(pz, 500, seed))}};
    out << record.dump() << '\n';
}

void demoExample1(std::ostream& out) {
    const SparsePolyZonotope full = exampleConstructionSet();
    const auto subset = [&](Index cols, bool indep) {
        Matrix G = full.generators().leftCols(cols);
        ExponentMatrix E = full.exponents().leftCols(cols);
        Matrix GI = indep ? full.independentGenerators() : Matrix(2, 0);
        return SparsePolyZonotope(G, GI, E, full.ids());
    };
    writeStage(out, "stage-a", subset(3, false), 11);
    writeStage(out, "stage-b", subset(4, false), 12);
    writeStage(out, "stage-c", subset(4, true), 13);
    writeStage(out, "stage-d", full, 14);
}

void demoEnclosure(std::ostream& out) {
    const SparsePolyZonotope pz = enclosureExampleSet();
    const Zonotope z = zonoEnclose(pz);
    const Polytope poly = polyEnclose(pz);
    const IntervalVector box = intervalEnclose(pz);

    nlohmann::json zono{{"kind", "enclosure"},
                        {"name", "zonotope"},
                        {"polygon", pointsToJson(zonotopePolygon(z, 0, 1))}};
    out << zono.dump() << '\n';
    nlohmann::json polyRecord{{"kind", "enclosure"},
                              {"name", "polytope"},
                              {"vertices", pointsToJson(poly.vertices())}};
    out << polyRecord.dump() << '\n';
    nlohmann::json boxRecord{{"kind", "enclosure"}, {"name", "interval"}, {"box", toJson(box)}};
    out << boxRecord.dump() << '\n';
    nlohmann::json cloud{{"kind", "samples"},
                         {"name", "set"},
                         {"samples", cloudToJson(sampleCloud(pz, 2000, 21))}};
    out << cloud.dump() << '\n';
}

void demoQuadMap(std::ostream& out) {
    Matrix G(2, 3);
    G << 1, -1, 1, -1, 2, 1;
    Matrix GI(2, 1);
    GI << 0.1, 0;
    ExponentMatrix E(2, 3);
    E << 1, 0, 2, 0, 1, 1;
    const SparsePolyZonotope pz(G, GI, E, {1, 2});

    Matrix Q1(2, 2), Q2(2, 2);
    Q1 << 0.5, 0.5, 1, -0.5;
    Q2 << -1, 0, 1, 0;
    const SparsePolyZonotope image = quadMap(pz, {Q1, Q2});

    // Exact image cloud: sampled points mapped through the quadratic form.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Index count = 2000;
    Matrix cloud(2, count);
    for (Index c = 0; c < count; ++c) {
        Vector alpha(2), beta(1);
        alpha << unit(rng), unit(rng);
        beta << unit(rng);
        const Vector s = pz.evaluate(alpha, beta);
        cloud(0, c) = s.dot(Q1 * s);
        cloud(1, c) = s.dot(Q2 * s);
    }

    writeStage(out, "enclosure", image, 32);
    nlohmann::json exact{{"kind", "samples"}, {"name", "exact-map"}, {"samples", cloudToJson(cloud)}};
    out << exact.dump() << '\n';
}

void demoConvexHull(std::ostream& out) {
    Matrix G1(2, 4);
    G1 << -2, 2, 0, 1, -2, 0, 2, 1;
    ExponentMatrix E1(2, 4);
    E1 << 0, 1, 0, 3, 0, 0, 1, 1;
    const SparsePolyZonotope pz1(G1, Matrix(2, 0), E1, {1, 2});

    Matrix G2(2, 4);
    G2 << 3, 1, -2, 1, 3, 2, 3, 1;
    Matrix GI2(2, 1);
    GI2 << 0.5, 0;
    ExponentMatrix E2(2, 4);
    E2 << 0, 1, 0, 2, 0, 0, 1, 1;
    const SparsePolyZonotope pz2(G2, GI2, E2, {1, 2});

    const SparsePolyZonotope hull = convHull(pz1, pz2);
    writeStage(out, "hull", hull, 41);

    // Sampled convex combinations of sampled members.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Index count = 2000;
    Matrix cloud(2, count);
    for (Index c = 0; c < count; ++c) {
        Vector a1(2), a2(2), b2(1);
        a1 << unit(rng), unit(rng);
        a2 << unit(rng), unit(rng);
        b2 << unit(rng);
        const double lambda = unit(rng);
        const Vector s1 = pz1.evaluate(a1, Vector(0));
        const Vector s2 = pz2.evaluate(a2, b2);
        cloud.col(c) = 0.5 * (1.0 + lambda) * s1 + 0.5 * (1.0 - lambda) * s2;
    }
    nlohmann::json exact{{"kind", "samples"}, {"name", "combinations"}, {"samples", cloudToJson(cloud)}};
    out << exact.dump() << '\n';
}

}  // namespace

void writeDemoRecords(const std::string& selector, std::ostream& out) {
    if (selector == "example1") demoExample1(out);
    else if (selector == "enclosure") demoEnclosure(out);
    else if (selector == "quadmap") demoQuadMap(out);
    else if (selector == "convexhull") demoConvexHull(out);
    else throw std::invalid_argument("writeDemoRecords: unknown selector '" + selector + "'");
}

}  // namespace spz
