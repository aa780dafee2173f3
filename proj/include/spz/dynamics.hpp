#pragma once

#include "spz/interval.hpp"
#include "spz/types.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace spz {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/**
 * Immutable expression node over state and input variables. Variables are
 * addressed by a combined index into z = [x; u]. The factory functions fold
 * constants and neutral elements, so derivative trees stay sparse.
 */
class Expr {
public:
    enum class Kind { Constant, StateVar, InputVar, Add, Mul, Neg, Pow, Div };

    Kind kind() const { return kind_; }
    double value() const { return value_; }
    Index varIndex() const { return index_; }
    std::int64_t exponent() const { return exponent_; }
    const ExprPtr& left() const { return left_; }
    const ExprPtr& right() const { return right_; }

    bool isConstant(double v) const { return kind_ == Kind::Constant && value_ == v; }

    static ExprPtr constant(double v);
    static ExprPtr stateVar(Index i);
    static ExprPtr inputVar(Index i);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr neg(ExprPtr a);
    static ExprPtr pow(ExprPtr a, std::int64_t e);
    static ExprPtr div(ExprPtr a, ExprPtr b);

    /// Value at a point z = [x; u]; nStates resolves input indices.
    double eval(const Vector& z, Index nStates) const;

    /// Sound interval enclosure over a box; throws std::domain_error when a
    /// divisor interval contains zero.
    Interval evalInterval(const IntervalVector& z, Index nStates) const;

    /// Derivative with respect to z(varIdx), simplified.
    static ExprPtr differentiate(const ExprPtr& e, Index varIdx, Index nStates);

    static bool structurallyEqual(const ExprPtr& a, const ExprPtr& b);

    /// Collects the z-indices the expression depends on (sorted, unique).
    void collectSupport(std::vector<Index>& out, Index nStates) const;

private:
    Expr() = default;

    Kind kind_ = Kind::Constant;
    double value_ = 0.0;
    Index index_ = 0;
    std::int64_t exponent_ = 0;
    ExprPtr left_, right_;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Taylor coefficients of the right-hand side at an expansion point z*:
/// value w = f(z*), Jacobian blocks A (states) and B (inputs), and one
/// (n+m) x (n+m) Hessian per output dimension.
struct DerivativeBundle {
    Vector value;
    Matrix A;
    Matrix B;
    std::vector<Matrix> hessians;
};

/// Parsed ODE right-hand side x' = f(x, u) with symbolic derivatives up to
/// third order precomputed per equation (sparse over the variable support).
class NonlinearSystem {
public:
    NonlinearSystem(std::string name, std::vector<std::string> states,
                    std::vector<std::string> inputs, std::vector<ExprPtr> rhs);

    const std::string& name() const { return name_; }
    Index numStates() const { return static_cast<Index>(states_.size()); }
    Index numInputs() const { return static_cast<Index>(inputs_.size()); }
    const std::vector<std::string>& stateNames() const { return states_; }
    const std::vector<std::string>& inputNames() const { return inputs_; }
    const std::vector<ExprPtr>& rhs() const { return rhs_; }

    /// f(z) at a point z = [x; u].
    Vector eval(const Vector& z) const;

    /// Interval enclosure of f over a box.
    IntervalVector evalInterval(const IntervalVector& z) const;

    DerivativeBundle taylorCoefficients(const Vector& zstar) const;

    /// Interval enclosure of the third-order Lagrange remainder
    /// (1/6) ((z - z*)^T nabla)^3 f_i over the box.
    IntervalVector lagrangeRemainder(const IntervalVector& zbox, const Vector& zstar) const;

    /// True when all third derivatives vanish identically.
    bool thirdDerivativesVanish() const;

    struct HessianTerm {
        Index j, k;  // j <= k
        ExprPtr expr;
    };
    struct ThirdTerm {
        Index j, k, l;  // j <= k <= l
        int multiplicity;
        ExprPtr expr;
    };

    const std::vector<std::vector<std::pair<Index, ExprPtr>>>& gradients() const { return grad_; }
    const std::vector<std::vector<HessianTerm>>& hessianTerms() const { return hess_; }
    const std::vector<std::vector<ThirdTerm>>& thirdTerms() const { return third_; }

private:
    std::string name_;
    std::vector<std::string> states_;
    std::vector<std::string> inputs_;
    std::vector<ExprPtr> rhs_;

    std::vector<std::vector<std::pair<Index, ExprPtr>>> grad_;
    std::vector<std::vector<HessianTerm>> hess_;
    std::vector<std::vector<ThirdTerm>> third_;
};

/// Parses the model grammar:
///   system <name>
///   states <id>+
///   inputs <id>*          (line optional)
///   dynamics
///   <state>' = <expr>     (one line per state)
/// '#' starts a comment. Throws ParseError with line/column on bad input.
NonlinearSystem parseModel(const std::string& text);

/// Model text that parses back to a structurally identical system.
std::string printModel(const NonlinearSystem& sys);

}  // namespace spz
