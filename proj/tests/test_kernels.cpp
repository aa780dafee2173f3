#include "support.hpp"

#include "spz/kernels.hpp"

#include <doctest.h>

using namespace spz;

TEST_CASE("parallel kernels match the serial reference") {
    test::Rng rng(101);

    SUBCASE("quadratic-map generator blocks") {
        for (int trial = 0; trial < 10; ++trial) {
            const Index d = 2 + static_cast<Index>(trial % 4);
            const Index h = 1 + static_cast<Index>(rng() % 12);
            const Matrix Ghat = test::randomMatrix(d, h, rng);
            std::vector<Matrix> Qs;
            for (Index i = 0; i < d; ++i) Qs.push_back(test::randomMatrix(d, d, rng));

            const Matrix serial = kernels::quadMapGeneratorsSerial(Ghat, Qs);
            const Matrix parallel = kernels::quadMapGeneratorsParallel(Ghat, Qs);
            REQUIRE(serial.rows() == parallel.rows());
            REQUIRE(serial.cols() == h * h);
            CHECK((serial - parallel).cwiseAbs().maxCoeff() <=
                  1e-12 * (1.0 + serial.cwiseAbs().maxCoeff()));
        }
    }

    SUBCASE("exponent pair sums") {
        for (int trial = 0; trial < 10; ++trial) {
            const Index p = static_cast<Index>(rng() % 5);
            const Index h = 1 + static_cast<Index>(rng() % 12);
            const ExponentMatrix E = test::randomExponents(p, h, rng);
            const ExponentMatrix serial = kernels::exponentPairSumsSerial(E);
            const ExponentMatrix parallel = kernels::exponentPairSumsParallel(E);
            CHECK(serial == parallel);
            // column (j,l) = E(:,j) + E(:,l)
            for (Index j = 0; j < h; ++j)
                for (Index l = 0; l < h; ++l)
                    CHECK(serial.col(j * h + l) == ExponentVector(E.col(j) + E.col(l)));
        }
    }

    SUBCASE("batch evaluation") {
        for (int trial = 0; trial < 10; ++trial) {
            const SparsePolyZonotope pz = test::randomSet(rng);
            const Index count = 64;
            const Matrix alphas = test::randomMatrix(pz.numFactors(), count, rng, 1.0);
            const Matrix betas = test::randomMatrix(pz.numIndependent(), count, rng, 1.0);
            const Matrix serial = kernels::evaluateBatchSerial(pz, alphas, betas);
            const Matrix parallel = kernels::evaluateBatchParallel(pz, alphas, betas);
            CHECK(serial == parallel);
            for (Index c = 0; c < count; ++c)
                CHECK(serial.col(c).isApprox(pz.evaluate(alphas.col(c), betas.col(c)), 1e-14));
        }
    }
}

TEST_CASE("kernel argument validation") {
    test::Rng rng(102);
    const Matrix Ghat = test::randomMatrix(3, 4, rng);
    CHECK_THROWS_AS(kernels::quadMapGenerators(Ghat, {Matrix::Identity(2, 2)}),
                    std::invalid_argument);
    const SparsePolyZonotope pz = test::randomSet(rng);
    CHECK_THROWS_AS(kernels::evaluateBatch(pz, Matrix(pz.numFactors() + 1, 3),
                                           Matrix(pz.numIndependent(), 3)),
                    std::invalid_argument);
}
