#pragma once

#include "spz/interval.hpp"
#include "spz/types.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace spz {

/// One output dimension of a Taylor model: a polynomial in s domain variables
/// given by coefficients b_j and an exponent matrix (s x m).
struct TaylorPolynomial {
    RowVector coefficients;      // 1 x m
    ExponentMatrix exponents;    // s x m
};

/// Taylor model <w(x), I> over a box domain D: the polynomial image plus the
/// remainder interval.
class TaylorModel {
public:
    TaylorModel(std::vector<TaylorPolynomial> polynomials, IntervalVector remainder,
                IntervalVector domain)
        : polynomials_(std::move(polynomials)),
          remainder_(std::move(remainder)),
          domain_(std::move(domain)) {
        if (polynomials_.empty()) throw std::invalid_argument("TaylorModel: no output dimensions");
        if (remainder_.size() != static_cast<Index>(polynomials_.size()))
            throw std::invalid_argument("TaylorModel: remainder dimension mismatch");
        for (const TaylorPolynomial& poly : polynomials_) {
            if (poly.exponents.cols() != poly.coefficients.cols())
                throw std::invalid_argument("TaylorModel: coefficient/exponent count mismatch");
            if (poly.exponents.rows() != domain_.size())
                throw std::invalid_argument("TaylorModel: exponent rows must match domain dimension");
            if ((poly.exponents.array() < 0).any())
                throw std::invalid_argument("TaylorModel: exponents must be non-negative integers");
        }
    }

    Index outputDim() const { return static_cast<Index>(polynomials_.size()); }
    Index domainDim() const { return domain_.size(); }
    const std::vector<TaylorPolynomial>& polynomials() const { return polynomials_; }
    const IntervalVector& remainder() const { return remainder_; }
    const IntervalVector& domain() const { return domain_; }

private:
    std::vector<TaylorPolynomial> polynomials_;
    IntervalVector remainder_;
    IntervalVector domain_;
};

}  // namespace spz
