#pragma once

/**
 * @file expr.hpp
 * @brief Immutable expression trees produced by the parser.
 *
 * One node type covers both coefficient expressions (rational literals,
 * root(k, n), base^(a/b), exp(.), field operations) and the variables that
 * appear in linear forms. A RadicalExpr is an Expr without variable or exp
 * nodes; canonicalize() rejects anything else.
 */

#include "numeric.hpp"

#include <memory>
#include <string>

namespace radrat {

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

class Expr {
public:
    enum class Kind { number, variable, root, power, exp, negate, add, subtract, multiply, divide };

    static Expr number(const Rational& value, SourcePos pos = {}) {
        auto n = std::make_shared<Node>(Kind::number, pos);
        n->value = value;
        return Expr(std::move(n));
    }

    static Expr variable(std::string name, SourcePos pos = {}) {
        auto n = std::make_shared<Node>(Kind::variable, pos);
        n->name = std::move(name);
        return Expr(std::move(n));
    }

    /// root(degree, radicand) = radicand^(1/degree).
    static Expr root(unsigned long degree, const BigInt& radicand, SourcePos pos = {}) {
        auto n = std::make_shared<Node>(Kind::root, pos);
        n->degree = degree;
        n->radicand = radicand;
        return Expr(std::move(n));
    }

    /// base^exponent with a rational exponent; the base must reduce to a positive rational.
    static Expr power(Expr base, const Rational& exponent, SourcePos pos = {}) {
        auto n = std::make_shared<Node>(Kind::power, pos);
        n->value = exponent;
        n->lhs = std::move(base.node_);
        return Expr(std::move(n));
    }

    static Expr exp(Expr argument, SourcePos pos = {}) { return unary(Kind::exp, std::move(argument), pos); }

    static Expr unary(Kind kind, Expr operand, SourcePos pos = {}) {
        auto n = std::make_shared<Node>(kind, pos);
        n->lhs = std::move(operand.node_);
        return Expr(std::move(n));
    }

    static Expr binary(Kind kind, Expr lhs, Expr rhs, SourcePos pos = {}) {
        auto n = std::make_shared<Node>(kind, pos);
        n->lhs = std::move(lhs.node_);
        n->rhs = std::move(rhs.node_);
        return Expr(std::move(n));
    }

    Kind kind() const { return node_->kind; }
    SourcePos pos() const { return node_->pos; }
    /// Literal value for number nodes, exponent for power nodes.
    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    unsigned long degree() const { return node_->degree; }
    const BigInt& radicand() const { return node_->radicand; }
    Expr lhs() const { return Expr(node_->lhs); }
    Expr rhs() const { return Expr(node_->rhs); }

    friend Expr operator-(Expr a) { return unary(Kind::negate, std::move(a)); }
    friend Expr operator+(Expr a, Expr b) { return binary(Kind::add, std::move(a), std::move(b)); }
    friend Expr operator-(Expr a, Expr b) { return binary(Kind::subtract, std::move(a), std::move(b)); }
    friend Expr operator*(Expr a, Expr b) { return binary(Kind::multiply, std::move(a), std::move(b)); }
    friend Expr operator/(Expr a, Expr b) { return binary(Kind::divide, std::move(a), std::move(b)); }

private:
    struct Node {
        Node(Kind k, SourcePos p) : kind(k), pos(p) {}
        Kind kind;
        SourcePos pos;
        Rational value;
        std::string name;
        unsigned long degree = 0;
        BigInt radicand;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

using RadicalExpr = Expr;

} // namespace radrat
