#include "spz/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace spz {

// ---------------------------------------------------------------------------
// Expression nodes
// ---------------------------------------------------------------------------

ExprPtr Expr::constant(double v) {
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::Constant;
    node->value_ = v;
    return node;
}

ExprPtr Expr::stateVar(Index i) {
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::StateVar;
    node->index_ = i;
    return node;
}

ExprPtr Expr::inputVar(Index i) {
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::InputVar;
    node->index_ = i;
    return node;
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
    if (a->kind_ == Kind::Constant && b->kind_ == Kind::Constant)
        return constant(a->value_ + b->value_);
    if (a->isConstant(0.0)) return b;
    if (b->isConstant(0.0)) return a;
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::Add;
    node->left_ = std::move(a);
    node->right_ = std::move(b);
    return node;
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) { return add(std::move(a), neg(std::move(b))); }

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
    if (a->kind_ == Kind::Constant && b->kind_ == Kind::Constant)
        return constant(a->value_ * b->value_);
    if (a->isConstant(0.0) || b->isConstant(0.0)) return constant(0.0);
    if (a->isConstant(1.0)) return b;
    if (b->isConstant(1.0)) return a;
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::Mul;
    node->left_ = std::move(a);
    node->right_ = std::move(b);
    return node;
}

ExprPtr Expr::neg(ExprPtr a) {
    if (a->kind_ == Kind::Constant) return constant(-a->value_);
    if (a->kind_ == Kind::Neg) return a->left_;
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::Neg;
    node->left_ = std::move(a);
    return node;
}

ExprPtr Expr::pow(ExprPtr a, std::int64_t e) {
    if (e < 0) throw ParseError("pow: exponent must be a non-negative integer");
    if (e == 0) return constant(1.0);
    if (e == 1) return a;
    if (a->kind_ == Kind::Constant) return constant(detail::ipow(a->value_, e));
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::Pow;
    node->exponent_ = e;
    node->left_ = std::move(a);
    return node;
}

ExprPtr Expr::div(ExprPtr a, ExprPtr b) {
    if (b->isConstant(0.0)) throw ParseError("division by zero constant");
    if (a->isConstant(0.0)) return constant(0.0);
    if (b->isConstant(1.0)) return a;
    if (a->kind_ == Kind::Constant && b->kind_ == Kind::Constant)
        return constant(a->value_ / b->value_);
    auto node = std::shared_ptr<Expr>(new Expr());
    node->kind_ = Kind::Div;
    node->left_ = std::move(a);
    node->right_ = std::move(b);
    return node;
}

double Expr::eval(const Vector& z, Index nStates) const {
    switch (kind_) {
        case Kind::Constant: return value_;
        case Kind::StateVar: return z(index_);
        case Kind::InputVar: return z(nStates + index_);
        case Kind::Add: return left_->eval(z, nStates) + right_->eval(z, nStates);
        case Kind::Mul: return left_->eval(z, nStates) * right_->eval(z, nStates);
        case Kind::Neg: return -left_->eval(z, nStates);
        case Kind::Pow: return detail::ipow(left_->eval(z, nStates), exponent_);
        case Kind::Div: return left_->eval(z, nStates) / right_->eval(z, nStates);
    }
    throw std::logic_error("Expr::eval: unreachable");
}

Interval Expr::evalInterval(const IntervalVector& z, Index nStates) const {
    switch (kind_) {
        case Kind::Constant: return {value_, value_};
        case Kind::StateVar: return z(index_);
        case Kind::InputVar: return z(nStates + index_);
        case Kind::Add: return left_->evalInterval(z, nStates) + right_->evalInterval(z, nStates);
        case Kind::Mul: return left_->evalInterval(z, nStates) * right_->evalInterval(z, nStates);
        case Kind::Neg: return -left_->evalInterval(z, nStates);
        case Kind::Pow: return left_->evalInterval(z, nStates).pow(exponent_);
        case Kind::Div: return left_->evalInterval(z, nStates) / right_->evalInterval(z, nStates);
    }
    throw std::logic_error("Expr::evalInterval: unreachable");
}

ExprPtr Expr::differentiate(const ExprPtr& e, Index varIdx, Index nStates) {
    switch (e->kind_) {
        case Kind::Constant: return constant(0.0);
        case Kind::StateVar: return constant(e->index_ == varIdx ? 1.0 : 0.0);
        case Kind::InputVar: return constant(nStates + e->index_ == varIdx ? 1.0 : 0.0);
        case Kind::Add:
            return add(differentiate(e->left_, varIdx, nStates),
                       differentiate(e->right_, varIdx, nStates));
        case Kind::Mul:
            return add(mul(differentiate(e->left_, varIdx, nStates), e->right_),
                       mul(e->left_, differentiate(e->right_, varIdx, nStates)));
        case Kind::Neg: return neg(differentiate(e->left_, varIdx, nStates));
        case Kind::Pow:
            return mul(mul(constant(static_cast<double>(e->exponent_)),
                           pow(e->left_, e->exponent_ - 1)),
                       differentiate(e->left_, varIdx, nStates));
        case Kind::Div:
            // (a/b)' = (a' b - a b') / b^2
            return div(sub(mul(differentiate(e->left_, varIdx, nStates), e->right_),
                           mul(e->left_, differentiate(e->right_, varIdx, nStates))),
                       pow(e->right_, 2));
    }
    throw std::logic_error("Expr::differentiate: unreachable");
}

bool Expr::structurallyEqual(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind_ != b->kind_) return false;
    switch (a->kind_) {
        case Kind::Constant: return a->value_ == b->value_;
        case Kind::StateVar:
        case Kind::InputVar: return a->index_ == b->index_;
        case Kind::Neg: return structurallyEqual(a->left_, b->left_);
        case Kind::Pow:
            return a->exponent_ == b->exponent_ && structurallyEqual(a->left_, b->left_);
        case Kind::Add:
        case Kind::Mul:
        case Kind::Div:
            return structurallyEqual(a->left_, b->left_) &&
                   structurallyEqual(a->right_, b->right_);
    }
    return false;
}

void Expr::collectSupport(std::vector<Index>& out, Index nStates) const {
    switch (kind_) {
        case Kind::Constant: return;
        case Kind::StateVar: out.push_back(index_); return;
        case Kind::InputVar: out.push_back(nStates + index_); return;
        case Kind::Neg:
        case Kind::Pow: left_->collectSupport(out, nStates); return;
        case Kind::Add:
        case Kind::Mul:
        case Kind::Div:
            left_->collectSupport(out, nStates);
            right_->collectSupport(out, nStates);
            return;
    }
}

// ---------------------------------------------------------------------------
// System with precomputed derivative trees
// ---------------------------------------------------------------------------

NonlinearSystem::NonlinearSystem(std::string name, std::vector<std::string> states,
                                 std::vector<std::string> inputs, std::vector<ExprPtr> rhs)
    : name_(std::move(name)),
      states_(std::move(states)),
      inputs_(std::move(inputs)),
      rhs_(std::move(rhs)) {
    if (states_.empty()) throw std::invalid_argument("NonlinearSystem: needs at least one state");
    if (rhs_.size() != states_.size())
        throw std::invalid_argument("NonlinearSystem: one equation per state required");

    const Index n = numStates();
    grad_.resize(rhs_.size());
    hess_.resize(rhs_.size());
    third_.resize(rhs_.size());

    for (std::size_t i = 0; i < rhs_.size(); ++i) {
        std::vector<Index> support;
        rhs_[i]->collectSupport(support, n);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());

        std::map<Index, ExprPtr> grad;
        for (Index j : support) {
            ExprPtr g = Expr::differentiate(rhs_[i], j, n);
            if (!g->isConstant(0.0)) grad.emplace(j, g);
        }
        for (const auto& [j, g] : grad) grad_[i].emplace_back(j, g);

        std::map<std::pair<Index, Index>, ExprPtr> hess;
        for (const auto& [j, g] : grad)
            for (Index k : support) {
                if (k < j) continue;
                ExprPtr second = Expr::differentiate(g, k, n);
                if (!second->isConstant(0.0)) hess.emplace(std::make_pair(j, k), second);
            }
        for (const auto& [jk, e] : hess) hess_[i].push_back({jk.first, jk.second, e});

        for (const auto& [jk, e] : hess)
            for (Index l : support) {
                if (l < jk.second) continue;
                ExprPtr thirdExpr = Expr::differentiate(e, l, n);
                if (thirdExpr->isConstant(0.0)) continue;
                const Index j = jk.first, k = jk.second;
                int multiplicity = 6;
                if (j == k && k == l) multiplicity = 1;
                else if (j == k || k == l || j == l) multiplicity = 3;
                third_[i].push_back({j, k, l, multiplicity, thirdExpr});
            }
    }
}

Vector NonlinearSystem::eval(const Vector& z) const {
    if (z.size() != numStates() + numInputs())
        throw std::invalid_argument("NonlinearSystem::eval: z dimension mismatch");
    Vector out(numStates());
    for (Index i = 0; i < numStates(); ++i)
        out(i) = rhs_[static_cast<std::size_t>(i)]->eval(z, numStates());
    return out;
}

IntervalVector NonlinearSystem::evalInterval(const IntervalVector& z) const {
    if (z.size() != numStates() + numInputs())
        throw std::invalid_argument("NonlinearSystem::evalInterval: box dimension mismatch");
    Vector lo(numStates()), hi(numStates());
    for (Index i = 0; i < numStates(); ++i) {
        const Interval v = rhs_[static_cast<std::size_t>(i)]->evalInterval(z, numStates());
        lo(i) = v.lo;
        hi(i) = v.hi;
    }
    return {lo, hi};
}

DerivativeBundle NonlinearSystem::taylorCoefficients(const Vector& zstar) const {
    const Index n = numStates(), m = numInputs();
    if (zstar.size() != n + m)
        throw std::invalid_argument("taylorCoefficients: expansion point dimension mismatch");

    DerivativeBundle out;
    out.value = eval(zstar);
    out.A = Matrix::Zero(n, n);
    out.B = Matrix::Zero(n, m);
    out.hessians.assign(static_cast<std::size_t>(n), Matrix::Zero(n + m, n + m));

    for (Index i = 0; i < n; ++i) {
        for (const auto& [j, g] : grad_[static_cast<std::size_t>(i)]) {
            const double v = g->eval(zstar, n);
            if (j < n) out.A(i, j) = v;
            else out.B(i, j - n) = v;
        }
        for (const auto& term : hess_[static_cast<std::size_t>(i)]) {
            const double v = term.expr->eval(zstar, n);
            out.hessians[static_cast<std::size_t>(i)](term.j, term.k) = v;
            out.hessians[static_cast<std::size_t>(i)](term.k, term.j) = v;
        }
    }
    return out;
}

IntervalVector NonlinearSystem::lagrangeRemainder(const IntervalVector& zbox,
                                                  const Vector& zstar) const {
    const Index n = numStates(), m = numInputs();
    if (zbox.size() != n + m || zstar.size() != n + m)
        throw std::invalid_argument("lagrangeRemainder: dimension mismatch");

    const IntervalVector displacement = zbox + Vector(-zstar);

    Vector lo = Vector::Zero(n), hi = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
        Interval sum{0.0, 0.0};
        for (const auto& term : third_[static_cast<std::size_t>(i)]) {
            Interval value = term.expr->evalInterval(zbox, n);
            // Group repeated indices so powers use the tight even/odd rule.
            Index idx[3] = {term.j, term.k, term.l};
            Index pos = 0;
            while (pos < 3) {
                Index run = pos + 1;
                while (run < 3 && idx[run] == idx[pos]) ++run;
                value = value * displacement(idx[pos]).pow(run - pos);
                pos = run;
            }
            sum += static_cast<double>(term.multiplicity) * value;
        }
        sum = (1.0 / 6.0) * sum;
        lo(i) = sum.lo;
        hi(i) = sum.hi;
    }
    return {lo, hi};
}

bool NonlinearSystem::thirdDerivativesVanish() const {
    for (const auto& terms : third_)
        if (!terms.empty()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Type { Ident, Number, Symbol, Newline, End };
    Type type = Type::End;
    std::string text;
    double number = 0.0;
    int line = 0, column = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skipSpacesAndComments();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) {
            tok.type = Token::Type::End;
            return tok;
        }
        const char c = text_[pos_];
        if (c == '\n') {
            advance();
            tok.type = Token::Type::Newline;
            return tok;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                tok.text += text_[pos_];
                advance();
            }
            tok.type = Token::Type::Ident;
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                advance();
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                advance();
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    advance();
            }
            tok.text = text_.substr(start, pos_ - start);
            tok.number = std::stod(tok.text);
            tok.type = Token::Type::Number;
            return tok;
        }
        static const std::string symbols = "+-*/^()'=";
        if (symbols.find(c) != std::string::npos) {
            tok.text = std::string(1, c);
            tok.type = Token::Type::Symbol;
            advance();
            return tok;
        }
        throw ParseError("line " + std::to_string(line_) + ":" + std::to_string(column_) +
                         ": unexpected character '" + std::string(1, c) + "'");
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skipSpacesAndComments() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, column_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { consume(); }

    NonlinearSystem parse() {
        skipNewlines();
        expectKeyword("system");
        const std::string name = expectIdent("system name");
        expectNewline();

        skipNewlines();
        expectKeyword("states");
        std::vector<std::string> states;
        while (current_.type == Token::Type::Ident) states.push_back(takeIdent());
        if (states.empty()) fail("at least one state required");
        expectNewline();

        skipNewlines();
        std::vector<std::string> inputs;
        if (current_.type == Token::Type::Ident && current_.text == "inputs") {
            consume();
            while (current_.type == Token::Type::Ident) inputs.push_back(takeIdent());
            expectNewline();
            skipNewlines();
        }

        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = i + 1; j < states.size(); ++j)
                if (states[i] == states[j]) fail("duplicate state '" + states[i] + "'");
        for (const std::string& u : inputs)
            if (std::find(states.begin(), states.end(), u) != states.end())
                fail("identifier '" + u + "' declared as both state and input");

        expectKeyword("dynamics");
        expectNewline();

        states_ = &states;
        inputs_ = &inputs;
        std::vector<ExprPtr> rhs(states.size());
        std::vector<bool> defined(states.size(), false);
        while (true) {
            skipNewlines();
            if (current_.type == Token::Type::End) break;
            const Token nameTok = current_;
            const std::string lhs = expectIdent("state name");
            const auto it = std::find(states.begin(), states.end(), lhs);
            if (it == states.end())
                fail("undeclared state '" + lhs + "'", nameTok);
            expectSymbol("'");
            expectSymbol("=");
            const std::size_t idx = static_cast<std::size_t>(it - states.begin());
            if (defined[idx]) fail("duplicate equation for '" + lhs + "'", nameTok);
            rhs[idx] = parseExpr();
            defined[idx] = true;
            if (current_.type == Token::Type::End) break;
            expectNewline();
        }
        for (std::size_t i = 0; i < states.size(); ++i)
            if (!defined[i]) fail("missing equation for state '" + states[i] + "'");

        return {name, states, inputs, std::move(rhs)};
    }

private:
    ExprPtr parseExpr() {
        ExprPtr result = parseTerm();
        while (isSymbol("+") || isSymbol("-")) {
            const bool plus = current_.text == "+";
            consume();
            ExprPtr rhs = parseTerm();
            result = plus ? Expr::add(result, rhs) : Expr::sub(result, rhs);
        }
        return result;
    }

    ExprPtr parseTerm() {
        ExprPtr result = parseUnary();
        while (isSymbol("*") || isSymbol("/")) {
            const bool times = current_.text == "*";
            const Token opTok = current_;
            consume();
            ExprPtr rhs = parseUnary();
            if (times) {
                result = Expr::mul(result, rhs);
            } else {
                if (rhs->isConstant(0.0)) fail("division by zero", opTok);
                result = Expr::div(result, rhs);
            }
        }
        return result;
    }

    ExprPtr parseUnary() {
        if (isSymbol("-")) {
            consume();
            return Expr::neg(parseUnary());
        }
        return parsePower();
    }

    ExprPtr parsePower() {
        ExprPtr base = parseAtom();
        if (isSymbol("^")) {
            const Token caret = current_;
            consume();
            if (current_.type != Token::Type::Number) fail("exponent must be a number", current_);
            const double e = current_.number;
            if (e < 0.0 || e != std::floor(e))
                fail("exponent must be a non-negative integer", caret);
            consume();
            return Expr::pow(base, static_cast<std::int64_t>(e));
        }
        return base;
    }

    ExprPtr parseAtom() {
        if (current_.type == Token::Type::Number) {
            const double v = current_.number;
            consume();
            return Expr::constant(v);
        }
        if (current_.type == Token::Type::Ident) {
            const Token tok = current_;
            const std::string name = takeIdent();
            auto si = std::find(states_->begin(), states_->end(), name);
            if (si != states_->end()) return Expr::stateVar(si - states_->begin());
            auto ui = std::find(inputs_->begin(), inputs_->end(), name);
            if (ui != inputs_->end()) return Expr::inputVar(ui - inputs_->begin());
            fail("undeclared identifier '" + name + "'", tok);
        }
        if (isSymbol("(")) {
            consume();
            ExprPtr inner = parseExpr();
            expectSymbol(")");
            return inner;
        }
        fail("expected number, identifier or '('", current_);
        return nullptr;  // unreachable
    }

    bool isSymbol(const char* s) const {
        return current_.type == Token::Type::Symbol && current_.text == s;
    }

    void consume() { current_ = lexer_.next(); }

    void skipNewlines() {
        while (current_.type == Token::Type::Newline) consume();
    }

    void expectNewline() {
        if (current_.type == Token::Type::End) return;
        if (current_.type != Token::Type::Newline) fail("expected end of line", current_);
        consume();
    }

    void expectKeyword(const std::string& kw) {
        if (current_.type != Token::Type::Ident || current_.text != kw)
            fail("expected keyword '" + kw + "'", current_);
        consume();
    }

    void expectSymbol(const std::string& s) {
        if (current_.type != Token::Type::Symbol || current_.text != s)
            fail("expected '" + s + "'", current_);
        consume();
    }

    std::string expectIdent(const std::string& what) {
        if (current_.type != Token::Type::Ident) fail("expected " + what, current_);
        return takeIdent();
    }

    std::string takeIdent() {
        std::string name = current_.text;
        consume();
        return name;
    }

    [[noreturn]] void fail(const std::string& message) const { fail(message, current_); }

    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        throw ParseError("line " + std::to_string(at.line) + ":" + std::to_string(at.column) +
                         ": " + message);
    }

    Lexer lexer_;
    Token current_;
    const std::vector<std::string>* states_ = nullptr;
    const std::vector<std::string>* inputs_ = nullptr;
};

std::string formatNumber(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string printExpr(const ExprPtr& e, const NonlinearSystem& sys) {
    using Kind = Expr::Kind;
    switch (e->kind()) {
        case Kind::Constant: return formatNumber(e->value());
        case Kind::StateVar: return sys.stateNames()[static_cast<std::size_t>(e->varIndex())];
        case Kind::InputVar: return sys.inputNames()[static_cast<std::size_t>(e->varIndex())];
        case Kind::Add: {
            // a + (-b) prints as a - b and parses back to the same tree
            const ExprPtr& rhs = e->right();
            if (rhs->kind() == Kind::Neg)
                return "(" + printExpr(e->left(), sys) + " - " + printExpr(rhs->left(), sys) + ")";
            if (rhs->kind() == Kind::Constant && rhs->value() < 0.0)
                return "(" + printExpr(e->left(), sys) + " - " + formatNumber(-rhs->value()) + ")";
            return "(" + printExpr(e->left(), sys) + " + " + printExpr(rhs, sys) + ")";
        }
        case Kind::Mul:
            return "(" + printExpr(e->left(), sys) + " * " + printExpr(e->right(), sys) + ")";
        case Kind::Div:
            return "(" + printExpr(e->left(), sys) + " / " + printExpr(e->right(), sys) + ")";
        case Kind::Neg: return "(-" + printExpr(e->left(), sys) + ")";
        case Kind::Pow:
            return "(" + printExpr(e->left(), sys) + "^" + std::to_string(e->exponent()) + ")";
    }
    throw std::logic_error("printExpr: unreachable");
}

}  // namespace

NonlinearSystem parseModel(const std::string& text) { return Parser(text).parse(); }

std::string printModel(const NonlinearSystem& sys) {
    std::ostringstream out;
    out << "system " << sys.name() << "\n";
    out << "states";
    for (const std::string& s : sys.stateNames()) out << ' ' << s;
    out << "\n";
    if (sys.numInputs() > 0) {
        out << "inputs";
        for (const std::string& u : sys.inputNames()) out << ' ' << u;
        out << "\n";
    }
    out << "dynamics\n";
    for (Index i = 0; i < sys.numStates(); ++i)
        out << sys.stateNames()[static_cast<std::size_t>(i)] << "' = "
            << printExpr(sys.rhs()[static_cast<std::size_t>(i)], sys) << "\n";
    return out.str();
}

}  // namespace spz
