#pragma once

#include "spz/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spz {

/// Closed scalar interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double value) : lo(value), hi(value) {}
    Interval(double lower, double upper) : lo(lower), hi(upper) {
        if (!(lo <= hi)) throw std::invalid_argument("Interval: lower bound exceeds upper bound");
    }

    double mid() const { return 0.5 * (lo + hi); }
    double rad() const { return 0.5 * (hi - lo); }
    double width() const { return hi - lo; }
    double magnitude() const { return std::max(std::abs(lo), std::abs(hi)); }

    bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
    bool contains(const Interval& other, double slack = 0.0) const {
        return other.lo >= lo - slack && other.hi <= hi + slack;
    }

    Interval operator-() const { return {-hi, -lo}; }
    Interval& operator+=(const Interval& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    Interval& operator-=(const Interval& o) { return *this += (-o); }

    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }

    friend Interval operator*(const Interval& a, const Interval& b) {
        const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    friend Interval operator*(double s, const Interval& a) {
        return s >= 0.0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo};
    }
    friend Interval operator*(const Interval& a, double s) { return s * a; }

    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.lo <= 0.0 && b.hi >= 0.0)
            throw std::domain_error("Interval: division by interval containing zero");
        return a * Interval{1.0 / b.hi, 1.0 / b.lo};
    }

    /// [lo,hi]^e with the dedicated even/odd rule (tighter than repeated multiplication).
    Interval pow(std::int64_t e) const {
        if (e < 0) throw std::invalid_argument("Interval::pow: negative exponent");
        if (e == 0) return {1.0, 1.0};
        if (e == 1) return *this;
        const double a = detail::ipow(lo, e), b = detail::ipow(hi, e);
        if (e % 2 != 0) return {a, b};
        if (lo >= 0.0) return {a, b};
        if (hi <= 0.0) return {b, a};
        return {0.0, std::max(a, b)};
    }

    Interval square() const { return pow(2); }

    static Interval hull(const Interval& a, const Interval& b) {
        return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
};

/// Axis-aligned box: vectors of lower and upper bounds.
class IntervalVector {
public:
    IntervalVector() = default;
    explicit IntervalVector(Index n) : lo_(Vector::Zero(n)), hi_(Vector::Zero(n)) {}
    IntervalVector(Vector lower, Vector upper) : lo_(std::move(lower)), hi_(std::move(upper)) {
        if (lo_.size() != hi_.size())
            throw std::invalid_argument("IntervalVector: bound size mismatch");
        for (Index i = 0; i < lo_.size(); ++i)
            if (!(lo_(i) <= hi_(i)))
                throw std::invalid_argument("IntervalVector: lower bound exceeds upper bound");
    }

    static IntervalVector fromCenterRadius(const Vector& c, const Vector& r) {
        return {c - r, c + r};
    }

    Index size() const { return lo_.size(); }
    const Vector& lower() const { return lo_; }
    const Vector& upper() const { return hi_; }
    Interval operator()(Index i) const { return {lo_(i), hi_(i)}; }

    Vector mid() const { return 0.5 * (lo_ + hi_); }
    Vector rad() const { return 0.5 * (hi_ - lo_); }
    Vector width() const { return hi_ - lo_; }
    /// Entrywise max(|lo|,|hi|).
    Vector magnitude() const { return lo_.cwiseAbs().cwiseMax(hi_.cwiseAbs()); }

    bool contains(const Vector& x, double slack = 0.0) const {
        if (x.size() != size()) return false;
        return (x.array() >= lo_.array() - slack).all() && (x.array() <= hi_.array() + slack).all();
    }
    bool contains(const IntervalVector& other, double slack = 0.0) const {
        return (other.lo_.array() >= lo_.array() - slack).all() &&
               (other.hi_.array() <= hi_.array() + slack).all();
    }

    IntervalVector operator+(const IntervalVector& o) const {
        return {lo_ + o.lo_, hi_ + o.hi_};
    }
    IntervalVector operator+(const Vector& v) const { return {lo_ + v, hi_ + v}; }

    static IntervalVector hull(const IntervalVector& a, const IntervalVector& b) {
        return {a.lo_.cwiseMin(b.lo_), a.hi_.cwiseMax(b.hi_)};
    }

    /// Stack [this; other].
    IntervalVector stack(const IntervalVector& other) const {
        Vector l(size() + other.size()), u(size() + other.size());
        l << lo_, other.lo_;
        u << hi_, other.hi_;
        return {l, u};
    }

    IntervalVector segment(Index start, Index count) const {
        return {lo_.segment(start, count), hi_.segment(start, count)};
    }

private:
    Vector lo_, hi_;
};

/// Matrix with interval entries, stored as lower/upper bound matrices.
class IntervalMatrix {
public:
    IntervalMatrix() = default;
    explicit IntervalMatrix(const Matrix& point) : lo_(point), hi_(point) {}
    IntervalMatrix(Matrix lower, Matrix upper) : lo_(std::move(lower)), hi_(std::move(upper)) {
        if (lo_.rows() != hi_.rows() || lo_.cols() != hi_.cols())
            throw std::invalid_argument("IntervalMatrix: bound shape mismatch");
        if (((hi_ - lo_).array() < 0.0).any())
            throw std::invalid_argument("IntervalMatrix: lower bound exceeds upper bound");
    }

    static IntervalMatrix fromCenterRadius(const Matrix& c, const Matrix& r) {
        return {c - r, c + r};
    }

    Index rows() const { return lo_.rows(); }
    Index cols() const { return lo_.cols(); }
    const Matrix& lower() const { return lo_; }
    const Matrix& upper() const { return hi_; }
    Matrix mid() const { return 0.5 * (lo_ + hi_); }
    Matrix rad() const { return 0.5 * (hi_ - lo_); }
    /// Entrywise max(|lo|,|hi|).
    Matrix magnitude() const { return lo_.cwiseAbs().cwiseMax(hi_.cwiseAbs()); }
    double maxWidth() const { return lo_.size() == 0 ? 0.0 : (hi_ - lo_).maxCoeff(); }

    IntervalMatrix operator+(const IntervalMatrix& o) const { return {lo_ + o.lo_, hi_ + o.hi_}; }
    IntervalMatrix& operator+=(const IntervalMatrix& o) {
        lo_ += o.lo_;
        hi_ += o.hi_;
        return *this;
    }

    /// Interval-scalar times point matrix.
    static IntervalMatrix scale(const Interval& s, const Matrix& m) {
        Matrix lo(m.rows(), m.cols()), hi(m.rows(), m.cols());
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) {
                const Interval e = s * Interval{m(i, j)};
                lo(i, j) = e.lo;
                hi(i, j) = e.hi;
            }
        return {lo, hi};
    }

    IntervalVector operator*(const IntervalVector& v) const {
        const Matrix c = mid(), r = rad();
        const Vector vm = v.mid(), vr = v.rad();
        const Vector center = c * vm;
        const Vector radius = c.cwiseAbs() * vr + r * (vm.cwiseAbs() + vr);
        return IntervalVector::fromCenterRadius(center, radius);
    }

private:
    Matrix lo_, hi_;
};

}  // namespace spz
