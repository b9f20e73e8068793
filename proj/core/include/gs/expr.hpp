#pragma once

// Small closed-form expression trees over the variables (r, z, psi).
//
// The grammar is deliberately tiny: numeric literals, identifiers, the five
// infix operators + - * / ^, exp(), log(), and parentheses. Profiles F(psi)
// and G(psi) are parsed from text in this grammar; symmetry generator
// components are built programmatically. Trees support plain evaluation,
// second-order jet evaluation, symbolic differentiation (for Lie brackets),
// and deterministic pretty-printing.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gs/jet.hpp"

namespace gs {

enum class ExprOp : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Log };

enum class ExprVar : std::uint8_t { R = 0, Z = 1, Psi = 2 };

struct ExprNode {
    ExprOp op = ExprOp::Const;
    double value = 0;            // Const payload
    ExprVar var = ExprVar::Psi;  // Var payload
    int a = -1;                  // left / only child
    int b = -1;                  // right child
    int src = -1;                // position in source text when parsed, else -1
};

class Expr {
public:
    Expr() { root_ = add_node({ExprOp::Const, 0.0}); }

    static Expr constant(double c);
    static Expr variable(ExprVar v);

    friend Expr operator+(const Expr& x, const Expr& y) { return combine(ExprOp::Add, x, y); }
    friend Expr operator-(const Expr& x, const Expr& y) { return combine(ExprOp::Sub, x, y); }
    friend Expr operator*(const Expr& x, const Expr& y) { return combine(ExprOp::Mul, x, y); }
    friend Expr operator/(const Expr& x, const Expr& y) { return combine(ExprOp::Div, x, y); }
    friend Expr operator-(const Expr& x);
    static Expr pow(const Expr& base, const Expr& exponent) { return combine(ExprOp::Pow, base, exponent); }
    static Expr pow(const Expr& base, double exponent) { return pow(base, constant(exponent)); }
    static Expr exp(const Expr& x);
    static Expr log(const Expr& x);

    double eval(double r, double z, double psi = 0) const;
    double eval_psi(double psi) const { return eval(0, 0, psi); }

    /// Jet evaluation in (r, z); psi may be supplied as a jet for expressions
    /// that mention it, otherwise mentioning psi is an error.
    Jet eval_jet(const Jet& r, const Jet& z) const;
    Jet eval_jet(const Jet& r, const Jet& z, const Jet& psi) const;

    /// Symbolic partial derivative, constant-folded.
    Expr diff(ExprVar v) const;

    bool depends_on(ExprVar v) const;
    bool is_constant() const { return !depends_on(ExprVar::R) && !depends_on(ExprVar::Z) && !depends_on(ExprVar::Psi); }

    std::string print() const;
    /// Printed form of one subexpression; used in domain-error diagnostics.
    std::string print_node(int node) const;

    const std::vector<ExprNode>& nodes() const { return nodes_; }
    int root() const { return root_; }

private:
    std::vector<ExprNode> nodes_;
    int root_ = -1;

    int add_node(ExprNode n) {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }
    static Expr combine(ExprOp op, const Expr& x, const Expr& y);
    static Expr unary(ExprOp op, const Expr& x);
    friend class ExprParser;
    friend class ExprBuilder;
};

struct ParseOptions {
    bool allow_r = false;
    bool allow_z = false;
    bool allow_psi = true;
};

/// Parse `text` in the documented grammar. Throws parse_error with the
/// offending position on syntax errors and unknown identifiers.
Expr parse_expression(std::string_view text, ParseOptions opts = {});

} // namespace gs
