#include "support.hpp"

#include "spz/dynamics.hpp"
#include "spz/models.hpp"

#include <doctest.h>

using namespace spz;

namespace {

void checkDerivativesMatch(const NonlinearSystem& sys, const Vector& z, double tol) {
    const DerivativeBundle exact = sys.taylorCoefficients(z);
    const DerivativeBundle approx = test::finiteDifferences(sys, z);
    const double scaleA = 1.0 + exact.A.cwiseAbs().maxCoeff();
    CHECK((exact.A - approx.A).cwiseAbs().maxCoeff() <= tol * scaleA);
    if (sys.numInputs() > 0) {
        const double scaleB = 1.0 + exact.B.cwiseAbs().maxCoeff();
        CHECK((exact.B - approx.B).cwiseAbs().maxCoeff() <= tol * scaleB);
    }
    for (Index i = 0; i < sys.numStates(); ++i) {
        const Matrix& H = exact.hessians[static_cast<std::size_t>(i)];
        const double scaleH = 1.0 + H.cwiseAbs().maxCoeff();
        CHECK((H - approx.hessians[static_cast<std::size_t>(i)]).cwiseAbs().maxCoeff() <=
              tol * scaleH);
    }
}

}  // namespace

TEST_CASE("parseModel") {
    SUBCASE("Van der Pol") {
        const NonlinearSystem sys = parseModel(vanDerPolModel());
        CHECK(sys.numStates() == 2);
        CHECK(sys.numInputs() == 0);
        Vector z(2);
        z << 0.5, -1.0;
        const Vector f = sys.eval(z);
        CHECK(f(0) == doctest::Approx(-1.0));
        CHECK(f(1) == doctest::Approx((1 - 0.25) * -1.0 - 0.5));
    }

    SUBCASE("single linear state") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = x1\n");
        CHECK(sys.numStates() == 1);
        Vector z(1);
        z << 3.0;
        CHECK(sys.eval(z)(0) == doctest::Approx(3.0));
    }

    SUBCASE("undeclared identifier") {
        CHECK_THROWS_WITH_AS(parseModel("system s\nstates x1\ndynamics\nx1' = x2\n"),
                             doctest::Contains("undeclared identifier 'x2'"), ParseError);
    }

    SUBCASE("syntax errors carry line and column") {
        try {
            parseModel("system s\nstates x1\ndynamics\nx1' = (x1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("line 4") != std::string::npos);
        }
    }

    SUBCASE("non-integer and negative exponents are rejected") {
        CHECK_THROWS_AS(parseModel("system s\nstates x1\ndynamics\nx1' = x1^2.5\n"), ParseError);
        CHECK_THROWS_AS(parseModel("system s\nstates x1\ndynamics\nx1' = x1^-1\n"), ParseError);
    }

    SUBCASE("missing or duplicate equations") {
        CHECK_THROWS_AS(parseModel("system s\nstates x1 x2\ndynamics\nx1' = x1\n"), ParseError);
        CHECK_THROWS_AS(parseModel("system s\nstates x1\ndynamics\nx1' = x1\nx1' = 2 * x1\n"),
                        ParseError);
    }

    SUBCASE("division by literal zero is rejected") {
        CHECK_THROWS_AS(parseModel("system s\nstates x1\ndynamics\nx1' = x1 / 0\n"), ParseError);
    }
}

TEST_CASE("printModel round-trips structurally") {
    const auto roundTrip = [](const std::string& text) {
        const NonlinearSystem sys = parseModel(text);
        const NonlinearSystem again = parseModel(printModel(sys));
        REQUIRE(again.numStates() == sys.numStates());
        REQUIRE(again.numInputs() == sys.numInputs());
        for (std::size_t i = 0; i < sys.rhs().size(); ++i)
            CHECK(Expr::structurallyEqual(sys.rhs()[i], again.rhs()[i]));
    };
    roundTrip(vanDerPolModel());
    roundTrip(geneNetworkModel(3));
    roundTrip(
        "system mix\nstates a b\ninputs u\ndynamics\n"
        "a' = -(a - 2)^3 * b + u / 4 - 1.5e-3\n"
        "b' = a / (1 + b^2) - 0.25 * b\n");
}

TEST_CASE("taylorCoefficients") {
    SUBCASE("scalar quadratic at the origin") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = -x1 + x1^2\n");
        const DerivativeBundle bundle = sys.taylorCoefficients(Vector::Zero(1));
        CHECK(bundle.value(0) == doctest::Approx(0.0));
        CHECK(bundle.A(0, 0) == doctest::Approx(-1.0));
        CHECK(bundle.hessians[0](0, 0) == doctest::Approx(2.0));
    }

    SUBCASE("linear systems have zero Hessians exactly") {
        test::Rng rng(301);
        const Matrix A = test::randomMatrix(3, 3, rng);
        const NonlinearSystem sys = test::linearSystem(A, false);
        const DerivativeBundle bundle = sys.taylorCoefficients(test::randomMatrix(3, 1, rng).col(0));
        CHECK(bundle.A.isApprox(A, 1e-12));
        for (const Matrix& H : bundle.hessians) CHECK(H.isZero(0.0));
        CHECK(sys.thirdDerivativesVanish());
    }

    SUBCASE("Van der Pol at the origin") {
        const NonlinearSystem sys = parseModel(vanDerPolModel());
        const DerivativeBundle bundle = sys.taylorCoefficients(Vector::Zero(2));
        Matrix expectedA(2, 2);
        expectedA << 0, 1, -1, 1;
        CHECK(bundle.A.isApprox(expectedA, 1e-12));
        CHECK(bundle.hessians[1](0, 0) == doctest::Approx(0.0));  // -2 x2 at the origin
        Vector z(2);
        z << 0.0, 0.7;
        CHECK(sys.taylorCoefficients(z).hessians[1](0, 0) == doctest::Approx(-1.4));
    }

    SUBCASE("matches finite differences on benchmark models") {
        test::Rng rng(302);
        std::uniform_real_distribution<double> dist(-1.5, 1.5);
        const NonlinearSystem vdp = parseModel(vanDerPolModel());
        for (int s = 0; s < 20; ++s) {
            Vector z(2);
            z << dist(rng), dist(rng);
            checkDerivativesMatch(vdp, z, 1e-6);
        }
        const NonlinearSystem gene = parseModel(geneNetworkModel(3));
        std::uniform_real_distribution<double> pos(0.5, 2.5);
        for (int s = 0; s < 20; ++s) {
            Vector z(gene.numStates() + gene.numInputs());
            for (Index i = 0; i < z.size(); ++i) z(i) = pos(rng);
            checkDerivativesMatch(gene, z, 1e-6);
        }
    }
}

TEST_CASE("interval evaluation") {
    SUBCASE("even power tightening") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = x1^2\n");
        const IntervalVector out =
            sys.evalInterval(IntervalVector(Vector::Constant(1, -1.0), Vector::Constant(1, 1.0)));
        CHECK(out.lower()(0) == doctest::Approx(0.0));
        CHECK(out.upper()(0) == doctest::Approx(1.0));
    }

    SUBCASE("Van der Pol right-hand side over the unit box") {
        const NonlinearSystem sys = parseModel(vanDerPolModel());
        const IntervalVector out =
            sys.evalInterval(IntervalVector(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)));
        CHECK(out.lower()(1) == doctest::Approx(-2.0));  // (1-x1^2) x2 in [-1,1], minus x1
        CHECK(out.upper()(1) == doctest::Approx(2.0));
    }

    SUBCASE("constants are degenerate") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = 3\n");
        const IntervalVector out =
            sys.evalInterval(IntervalVector(Vector::Constant(1, -5.0), Vector::Constant(1, 5.0)));
        CHECK(out.lower()(0) == doctest::Approx(3.0));
        CHECK(out.upper()(0) == doctest::Approx(3.0));
    }

    SUBCASE("division by an interval containing zero fails loudly") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = 1 / x1\n");
        CHECK_THROWS_AS(sys.evalInterval(
                            IntervalVector(Vector::Constant(1, -1.0), Vector::Constant(1, 1.0))),
                        std::domain_error);
    }

    SUBCASE("sampled points stay inside the enclosure") {
        test::Rng rng(303);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const NonlinearSystem gene = parseModel(geneNetworkModel(2));
        const Index dim = gene.numStates() + gene.numInputs();
        for (int trial = 0; trial < 20; ++trial) {
            Vector lo(dim), hi(dim);
            for (Index i = 0; i < dim; ++i) {
                const double a = 1.5 + 0.5 * unit(rng), b = 1.5 + 0.5 * unit(rng);
                lo(i) = std::min(a, b);
                hi(i) = std::max(a, b);
            }
            const IntervalVector box(lo, hi);
            const IntervalVector enclosure = gene.evalInterval(box);
            for (int s = 0; s < 200; ++s) {
                Vector z(dim);
                for (Index i = 0; i < dim; ++i)
                    z(i) = box.mid()(i) + unit(rng) * box.rad()(i);
                CHECK(enclosure.contains(gene.eval(z), 1e-9));
            }
        }
    }
}

TEST_CASE("lagrangeRemainder tensor evaluation") {
    SUBCASE("cubic monomial") {
        const NonlinearSystem sys = parseModel("system s\nstates x1\ndynamics\nx1' = x1^3\n");
        const double r = 0.8;
        const IntervalVector box(Vector::Constant(1, -r), Vector::Constant(1, r));
        const IntervalVector L = sys.lagrangeRemainder(box, Vector::Zero(1));
        CHECK(L.lower()(0) == doctest::Approx(-r * r * r));
        CHECK(L.upper()(0) == doctest::Approx(r * r * r));
    }

    SUBCASE("Van der Pol mixed third derivative") {
        const NonlinearSystem sys = parseModel(vanDerPolModel());
        const double r1 = 0.3, r2 = 0.5;
        Vector lo(2), hi(2);
        lo << -r1, -r2;
        hi << r1, r2;
        const IntervalVector L = sys.lagrangeRemainder(IntervalVector(lo, hi), Vector::Zero(2));
        CHECK(L.lower()(0) == doctest::Approx(0.0));
        CHECK(L.upper()(0) == doctest::Approx(0.0));
        // (1/6) * 3 perms * (-2) * [0, r1^2] * [-r2, r2] = [-r1^2 r2, r1^2 r2]
        CHECK(L.lower()(1) == doctest::Approx(-r1 * r1 * r2));
        CHECK(L.upper()(1) == doctest::Approx(r1 * r1 * r2));
    }
}
