#include "support.hpp"

#include "spz/convert.hpp"
#include "spz/models.hpp"
#include "spz/ops.hpp"
#include "spz/reach.hpp"
#include "spz/simulate.hpp"

#include <doctest.h>

using namespace spz;

namespace {

SparsePolyZonotope unitFactor() {
    Matrix G(1, 1);
    G << 1;
    ExponentMatrix E(1, 1);
    E << 1;
    return {G, Matrix(1, 0), E, uniqueID(1)};
}

}  // namespace

TEST_CASE("enlarge") {
    SUBCASE("zero interval stays zero") {
        const IntervalVector out = enlarge(IntervalVector(2), 0.5);
        CHECK(out.lower().isZero(0.0));
        CHECK(out.upper().isZero(0.0));
    }
    SUBCASE("symmetric interval scales") {
        const IntervalVector out =
            enlarge(IntervalVector(Vector::Constant(1, -1.0), Vector::Constant(1, 1.0)), 0.1);
        CHECK(out.lower()(0) == doctest::Approx(-1.1));
        CHECK(out.upper()(0) == doctest::Approx(1.1));
    }
    SUBCASE("asymmetric interval scales about its center") {
        const IntervalVector out =
            enlarge(IntervalVector(Vector::Zero(1), Vector::Constant(1, 2.0)), 0.1);
        CHECK(out.lower()(0) == doctest::Approx(-0.1));
        CHECK(out.upper()(0) == doctest::Approx(2.1));
    }
    SUBCASE("factor must be positive") {
        CHECK_THROWS_AS(enlarge(IntervalVector(1), 0.0), std::invalid_argument);
    }
}

TEST_CASE("lagrangeRemainder") {
    SUBCASE("linear dynamics vanish exactly") {
        test::Rng rng(501);
        const NonlinearSystem sys = test::linearSystem(test::randomMatrix(3, 3, rng), false);
        const SparsePolyZonotope set = test::randomSet(rng, 3);
        const IntervalVector L =
            lagrangeRemainder(set, sys, IntervalVector(0), Vector::Zero(3));
        CHECK(L.lower().isZero(0.0));
        CHECK(L.upper().isZero(0.0));
    }
    SUBCASE("cubic dynamics over a box") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = x1^3\n");
        const double r = 0.5;
        const SparsePolyZonotope box = fromInterval(
            IntervalVector(Vector::Constant(1, -r), Vector::Constant(1, r)));
        const IntervalVector L = lagrangeRemainder(box, sys, IntervalVector(0), Vector::Zero(1));
        CHECK(L.lower()(0) == doctest::Approx(-r * r * r));
        CHECK(L.upper()(0) == doctest::Approx(r * r * r));
    }
}

TEST_CASE("varInputs") {
    SUBCASE("no drift and no inputs gives zero") {
        const Matrix B(2, 0);
        std::vector<Matrix> D(2, Matrix::Zero(2, 2));
        const Zonotope Zz(Vector::Zero(2), Matrix::Identity(2, 2));
        const Zonotope zeroDrift(Vector::Zero(2));
        const IntervalVector out = varInputs(Zz, zeroDrift, IntervalVector(0), B, D);
        CHECK(out.lower().isZero(0.0));
        CHECK(out.upper().isZero(0.0));
    }
    SUBCASE("pure linear system reproduces the input box exactly") {
        test::Rng rng(502);
        const Matrix B = test::randomMatrix(2, 2, rng);
        std::vector<Matrix> D(2, Matrix::Zero(4, 4));
        const Zonotope Zz(Vector::Zero(4), Matrix::Identity(4, 4));
        const Zonotope drift(Vector::Zero(2), Matrix::Identity(2, 2));
        const Vector u = Vector::Constant(2, 0.3);
        const IntervalVector out =
            varInputs(Zz, drift, IntervalVector(-u, u), B, D);
        const Vector expected = B.cwiseAbs() * u;
        CHECK(out.upper().isApprox(expected, 1e-12));
        CHECK(out.lower().isApprox(Vector(-expected), 1e-12));
    }
}

TEST_CASE("post reproduces the scalar running example") {
    // x' = -x + x^2 from {alpha}, dt = 1: the exact-addition path keeps the
    // factor shared, so the dependent range is that of 0.368 a + 0.632 a^2.
    const SparsePolyZonotope R0 = unitFactor();
    const LinearFlow flow = flowOperators(Matrix::Constant(1, 1, -1.0), 1.0, 14);

    // V(t_s) = (1/2) sq(D, R0) with D = 2, i.e. {alpha^2} with the same id.
    const SparsePolyZonotope V = quadMap(R0, {Matrix::Constant(1, 1, 1.0)});
    CHECK(V.ids() == R0.ids());

    const SparsePolyZonotope next = post(R0, flow, V, IntervalVector(1), IntervalVector(1));

    const Interval depRange = test::gridRange1D(next.generators().row(0), next.exponents());
    const double expectedLow = -0.368 * 0.368 / (4 * 0.632);
    CHECK(depRange.lo == doctest::Approx(expectedLow).epsilon(2e-2));
    CHECK(std::abs(depRange.lo - expectedLow) < 2e-3);
    CHECK(std::abs(depRange.hi - 1.0) < 2e-3);

    SUBCASE("zonotope path is looser") {
        const SparsePolyZonotope viaZono = minkowskiSum(
            intervalMatMulSet(flow.expm, R0), zonoEnclose(intervalMatMulSet(flow.gamma, V)));
        const IntervalVector hull = intervalEnclose(viaZono);
        CHECK(hull.lower()(0) == doctest::Approx(-0.368).epsilon(2e-2));
        CHECK(depRange.lo - hull.lower()(0) >= 0.25);
    }

    SUBCASE("zero dynamics and inputs keep the set") {
        const SparsePolyZonotope someSet = unitFactor();
        const LinearFlow zeroFlow = flowOperators(Matrix::Zero(1, 1), 1.0, 6);
        const SparsePolyZonotope still =
            post(someSet, zeroFlow, SparsePolyZonotope::point(Vector::Zero(1)), IntervalVector(1),
                 IntervalVector(1));
        const IntervalVector hull = intervalEnclose(still);
        CHECK(hull.lower()(0) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(hull.upper()(0) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("linear point flow matches the exponential") {
        test::Rng rng(503);
        const Matrix A = test::randomMatrix(2, 2, rng, 1.0);
        const LinearFlow f = flowOperators(A, 0.1, 10);
        const Vector x0 = test::randomMatrix(2, 1, rng).col(0);
        const SparsePolyZonotope next2 =
            post(SparsePolyZonotope::point(x0), f, SparsePolyZonotope::point(Vector::Zero(2)),
                 IntervalVector(2), IntervalVector(2));
        const NonlinearSystem sys = test::linearSystem(A, false);
        const Vector exact = simulateTrajectory(sys, x0, {Vector(0)}, 0.1, 1e-13).states.back();
        const IntervalVector hull = intervalEnclose(next2);
        CHECK(hull.contains(exact, 1e-8));
        CHECK((hull.mid() - exact).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("postDelta") {
    SUBCASE("no dynamics, no inputs: no drift") {
        const LinearFlow flow = flowOperators(Matrix::Zero(2, 2), 0.5, 6);
        const Zonotope drift =
            postDelta(SparsePolyZonotope::point(Vector::Ones(2)), IntervalVector(2), flow);
        CHECK(drift.center().isZero(1e-14));
        CHECK(drift.intervalHull().rad().isZero(1e-14));
    }

    SUBCASE("scalar decay covers the closed-form drift") {
        const LinearFlow flow = flowOperators(Matrix::Constant(1, 1, -1.0), 1.0, 10);
        const Zonotope drift = postDelta(SparsePolyZonotope::point(Vector::Ones(1)),
                                         IntervalVector(1), flow);
        const IntervalVector hull = drift.intervalHull();
        CHECK(hull.lower()(0) <= std::exp(-1.0) - 1.0 + 1e-9);
        CHECK(hull.upper()(0) >= -1e-9);
    }

    SUBCASE("dense trajectories stay inside for random linear systems") {
        test::Rng rng(504);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int trial = 0; trial < 15; ++trial) {
            const Index n = 2 + static_cast<Index>(trial % 2);
            const Matrix A = test::randomMatrix(n, n, rng, 1.0);
            const double dt = 0.15;
            const LinearFlow flow = flowOperators(A, dt, 8);
            const SparsePolyZonotope R = test::randomSet(rng, n);
            const Vector psiC = test::randomMatrix(n, 1, rng, 0.2).col(0);
            const Vector psiR = test::randomMatrix(n, 1, rng, 0.2).cwiseAbs().col(0);
            const IntervalVector psiBar = IntervalVector::fromCenterRadius(psiC, psiR);
            const Zonotope drift = postDelta(R, psiBar, flow);

            const NonlinearSystem sys = test::linearSystem(A, true);
            for (int s = 0; s < 5; ++s) {
                const test::Assignment a = test::sampleAssignment(R.ids(), rng);
                const Vector x0 = test::evalAssigned(R, a, test::sampleBeta(R, rng));
                const int segments = 6;
                std::vector<Vector> inputs(segments);
                for (auto& u : inputs) {
                    u.resize(n);
                    for (Index i = 0; i < n; ++i) u(i) = psiC(i) + unit(rng) * psiR(i);
                }
                integrateOde(sys, x0, inputs, dt / segments, 1e-11,
                             [&](long, double, const Vector& x) {
                                 CHECK(test::zonotopeMembership(drift, x - x0, 1e-7) !=
                                       test::Containment::Outside);
                             });
            }
        }
    }
}

TEST_CASE("reachAnalyze") {
    SUBCASE("linear decay matches the closed form") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = -x1\n");
        ReachConfig cfg;
        cfg.dt = 0.05;
        cfg.tF = 1.0;
        cfg.rhoD = 10.0;
        const SparsePolyZonotope X0 = fromInterval(
            IntervalVector(Vector::Constant(1, 0.9), Vector::Constant(1, 1.1)));
        const ReachResult result = reachAnalyze(sys, X0, IntervalVector(0), cfg);
        REQUIRE(result.steps.size() == 20);

        const IntervalVector hull = intervalEnclose(result.steps.back().timePoint);
        const double lo = 0.9 * std::exp(-1.0), hi = 1.1 * std::exp(-1.0);
        CHECK(hull.lower()(0) >= lo - 1e-4);
        CHECK(hull.lower()(0) <= lo + 1e-12);
        CHECK(hull.upper()(0) <= hi + 1e-4);
        CHECK(hull.upper()(0) >= hi - 1e-12);

        for (const StepRecord& record : result.steps)
            CHECK(record.fixedPointIterations == 1);
    }

    SUBCASE("scalar quadratic keeps the dependent structure") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = -x1 + x1^2\n");
        ReachConfig cfg;
        cfg.dt = 0.1;  // the enlargement loop needs a contractive step size
        cfg.tF = 0.1;
        cfg.rhoD = 20.0;
        cfg.muD = 1e6;  // no restructure for this single step
        const ReachResult result = reachAnalyze(sys, unitFactor(), IntervalVector(0), cfg);
        REQUIRE(result.steps.size() == 1);
        const SparsePolyZonotope& R1 = result.steps.front().timePoint;
        bool hasLinear = false, hasQuadratic = false;
        REQUIRE(R1.numFactors() == 1);
        for (Index i = 0; i < R1.numDependent(); ++i) {
            if (R1.exponents()(0, i) == 1 && R1.generators()(0, i) != 0.0) hasLinear = true;
            if (R1.exponents()(0, i) == 2 && R1.generators()(0, i) != 0.0) hasQuadratic = true;
        }
        CHECK(hasLinear);
        CHECK(hasQuadratic);
    }

    SUBCASE("short Van der Pol run is sound and within order bounds") {
        const BenchmarkSetup setup = vanDerPolBenchmark();
        const NonlinearSystem sys = parseModel(setup.modelText);
        ReachConfig cfg = setup.config;
        cfg.tF = 0.25;
        const SparsePolyZonotope X0 = fromInterval(setup.initialSet);
        const ReachResult result = reachAnalyze(sys, X0, setup.inputSet, cfg);
        REQUIRE(result.steps.size() == 50);
        for (const StepRecord& record : result.steps)
            CHECK(record.timePoint.order() <= cfg.rhoD + 1e-12);

        OracleConfig oracle;
        oracle.trajectories = 20;
        const OracleReport report =
            simulationOracle(sys, X0, setup.inputSet, result, cfg.dt, oracle);
        CHECK(report.violations == 0);
        CHECK(report.pointsChecked > 1000);
    }

    SUBCASE("gene network with inputs runs soundly") {
        const BenchmarkSetup setup = geneNetworkBenchmark(2);
        const NonlinearSystem sys = parseModel(setup.modelText);
        ReachConfig cfg = setup.config;
        cfg.tF = 2.0;
        const SparsePolyZonotope X0 = fromInterval(setup.initialSet);
        const ReachResult result = reachAnalyze(sys, X0, setup.inputSet, cfg);
        REQUIRE(result.steps.size() == 20);

        OracleConfig oracle;
        oracle.trajectories = 10;
        const OracleReport report =
            simulationOracle(sys, X0, setup.inputSet, result, cfg.dt, oracle);
        CHECK(report.violations == 0);
    }

    SUBCASE("configuration validation") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = -x1\n");
        const SparsePolyZonotope X0 = SparsePolyZonotope::point(Vector::Ones(1));
        ReachConfig cfg;
        cfg.dt = 0.3;
        cfg.tF = 1.0;  // not a multiple
        CHECK_THROWS_AS(reachAnalyze(sys, X0, IntervalVector(0), cfg), std::invalid_argument);
        cfg.tF = 0.9;
        cfg.lambda = -1.0;
        CHECK_THROWS_AS(reachAnalyze(sys, X0, IntervalVector(0), cfg), std::invalid_argument);
    }
}
