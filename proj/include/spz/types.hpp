#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace spz {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Index = Eigen::Index;

// Exponents are non-negative machine integers (construction rejects values
// beyond 2^31 so products of exponent sums cannot overflow).
using ExponentMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using ExponentVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Identifier vector: distinct positive labels for dependent factors.
using IdVector = std::vector<std::int64_t>;

namespace detail {

// x^e for integer e >= 0 by squaring; deterministic across platforms.
inline double ipow(double x, std::int64_t e) {
    double result = 1.0;
    double base = x;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

}  // namespace detail

}  // namespace spz
