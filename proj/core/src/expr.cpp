#include "gs/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>

#include "gs/errors.hpp"

namespace gs {

namespace {

std::string fmt_num(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* var_name(ExprVar v) {
    switch (v) {
        case ExprVar::R: return "r";
        case ExprVar::Z: return "z";
        case ExprVar::Psi: return "psi";
    }
    return "?";
}

} // namespace

// ---------------------------------------------------------------------------
// Construction with local constant folding
// ---------------------------------------------------------------------------

// A builder that appends into a target node pool, folding the easy algebraic
// identities so symbolic derivatives stay small.
class ExprBuilder {
public:
    explicit ExprBuilder(std::vector<ExprNode>& pool) : pool_(pool) {}

    int constant(double c) { return push({ExprOp::Const, c}); }
    int variable(ExprVar v) {
        ExprNode n;
        n.op = ExprOp::Var;
        n.var = v;
        return push(n);
    }

    bool is_const(int i, double* out = nullptr) const {
        if (pool_[i].op != ExprOp::Const) return false;
        if (out) *out = pool_[i].value;
        return true;
    }

    int add(int x, int y) {
        double a, b;
        const bool ca = is_const(x, &a), cb = is_const(y, &b);
        if (ca && cb) return constant(a + b);
        if (ca && a == 0) return y;
        if (cb && b == 0) return x;
        return push({ExprOp::Add, 0, ExprVar::Psi, x, y});
    }
    int sub(int x, int y) {
        double a, b;
        const bool ca = is_const(x, &a), cb = is_const(y, &b);
        if (ca && cb) return constant(a - b);
        if (cb && b == 0) return x;
        if (ca && a == 0) return neg(y);
        return push({ExprOp::Sub, 0, ExprVar::Psi, x, y});
    }
    int mul(int x, int y) {
        double a, b;
        const bool ca = is_const(x, &a), cb = is_const(y, &b);
        if (ca && cb) return constant(a * b);
        if (ca) {
            if (a == 0) return constant(0);
            if (a == 1) return y;
        }
        if (cb) {
            if (b == 0) return constant(0);
            if (b == 1) return x;
        }
        return push({ExprOp::Mul, 0, ExprVar::Psi, x, y});
    }
    int div(int x, int y) {
        double a, b;
        const bool ca = is_const(x, &a), cb = is_const(y, &b);
        if (cb && b != 0) {
            if (ca) return constant(a / b);
            if (b == 1) return x;
        }
        if (ca && a == 0 && !cb) return constant(0);
        return push({ExprOp::Div, 0, ExprVar::Psi, x, y});
    }
    int pow(int x, int y) {
        double a, b;
        const bool ca = is_const(x, &a), cb = is_const(y, &b);
        if (cb) {
            if (b == 1) return x;
            if (b == 0) return constant(1);
            if (ca && (a > 0 || is_integral_exponent(b))) return constant(std::pow(a, b));
        }
        return push({ExprOp::Pow, 0, ExprVar::Psi, x, y});
    }
    int neg(int x) {
        double a;
        if (is_const(x, &a)) return constant(-a);
        if (pool_[x].op == ExprOp::Neg) return pool_[x].a;
        return push({ExprOp::Neg, 0, ExprVar::Psi, x});
    }
    int exp(int x) {
        double a;
        if (is_const(x, &a)) return constant(std::exp(a));
        return push({ExprOp::Exp, 0, ExprVar::Psi, x});
    }
    int log(int x) {
        double a;
        if (is_const(x, &a) && a > 0) return constant(std::log(a));
        return push({ExprOp::Log, 0, ExprVar::Psi, x});
    }

    /// Deep-copy subtree `i` of `src` into the pool.
    int import(const Expr& src, int i) {
        const ExprNode& n = src.nodes()[i];
        ExprNode copy = n;
        if (n.a >= 0) copy.a = import(src, n.a);
        if (n.b >= 0) copy.b = import(src, n.b);
        // re-fold
        switch (copy.op) {
            case ExprOp::Add: return add(copy.a, copy.b);
            case ExprOp::Sub: return sub(copy.a, copy.b);
            case ExprOp::Mul: return mul(copy.a, copy.b);
            case ExprOp::Div: return div(copy.a, copy.b);
            case ExprOp::Pow: return pow(copy.a, copy.b);
            case ExprOp::Neg: return neg(copy.a);
            case ExprOp::Exp: return exp(copy.a);
            case ExprOp::Log: return log(copy.a);
            default: return push(copy);
        }
    }

private:
    std::vector<ExprNode>& pool_;
    int push(ExprNode n) {
        pool_.push_back(n);
        return static_cast<int>(pool_.size()) - 1;
    }
};

Expr Expr::constant(double c) {
    Expr e;
    e.nodes_.clear();
    e.nodes_.push_back({ExprOp::Const, c});
    e.root_ = 0;
    return e;
}

Expr Expr::variable(ExprVar v) {
    Expr e;
    e.nodes_.clear();
    ExprNode n;
    n.op = ExprOp::Var;
    n.var = v;
    e.nodes_.push_back(n);
    e.root_ = 0;
    return e;
}

Expr Expr::combine(ExprOp op, const Expr& x, const Expr& y) {
    Expr e;
    e.nodes_.clear();
    ExprBuilder bld(e.nodes_);
    const int a = bld.import(x, x.root_);
    const int b = bld.import(y, y.root_);
    switch (op) {
        case ExprOp::Add: e.root_ = bld.add(a, b); break;
        case ExprOp::Sub: e.root_ = bld.sub(a, b); break;
        case ExprOp::Mul: e.root_ = bld.mul(a, b); break;
        case ExprOp::Div: e.root_ = bld.div(a, b); break;
        case ExprOp::Pow: e.root_ = bld.pow(a, b); break;
        default: e.root_ = a; break;
    }
    return e;
}

Expr Expr::unary(ExprOp op, const Expr& x) {
    Expr e;
    e.nodes_.clear();
    ExprBuilder bld(e.nodes_);
    const int a = bld.import(x, x.root_);
    switch (op) {
        case ExprOp::Neg: e.root_ = bld.neg(a); break;
        case ExprOp::Exp: e.root_ = bld.exp(a); break;
        case ExprOp::Log: e.root_ = bld.log(a); break;
        default: e.root_ = a; break;
    }
    return e;
}

Expr operator-(const Expr& x) { return Expr::unary(ExprOp::Neg, x); }
Expr Expr::exp(const Expr& x) { return unary(ExprOp::Exp, x); }
Expr Expr::log(const Expr& x) { return unary(ExprOp::Log, x); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

double Expr::eval(double r, double z, double psi) const {
    std::function<double(int)> go = [&](int i) -> double {
        const ExprNode& n = nodes_[i];
        switch (n.op) {
            case ExprOp::Const: return n.value;
            case ExprOp::Var:
                return n.var == ExprVar::R ? r : (n.var == ExprVar::Z ? z : psi);
            case ExprOp::Add: return go(n.a) + go(n.b);
            case ExprOp::Sub: return go(n.a) - go(n.b);
            case ExprOp::Mul: return go(n.a) * go(n.b);
            case ExprOp::Div: {
                const double d = go(n.b);
                if (d == 0) throw domain_error("division by zero in '" + print_node(i) + "'", i);
                return go(n.a) / d;
            }
            case ExprOp::Pow: {
                const double base = go(n.a), p = go(n.b);
                if (base == 0 && p <= 0)
                    throw domain_error("zero base with non-positive exponent in '" + print_node(i) + "'", i);
                if (base < 0 && !is_integral_exponent(p))
                    throw domain_error("fractional power of a negative base in '" + print_node(i) + "'", i);
                return std::pow(base, p);
            }
            case ExprOp::Neg: return -go(n.a);
            case ExprOp::Exp: return std::exp(go(n.a));
            case ExprOp::Log: {
                const double a = go(n.a);
                if (a <= 0) throw domain_error("log of a non-positive value in '" + print_node(i) + "'", i);
                return std::log(a);
            }
        }
        return 0;
    };
    return go(root_);
}

Jet Expr::eval_jet(const Jet& r, const Jet& z, const Jet& psi) const {
    std::function<Jet(int)> go = [&](int i) -> Jet {
        const ExprNode& n = nodes_[i];
        switch (n.op) {
            case ExprOp::Const: return Jet::constant(n.value);
            case ExprOp::Var:
                return n.var == ExprVar::R ? r : (n.var == ExprVar::Z ? z : psi);
            case ExprOp::Add: return go(n.a) + go(n.b);
            case ExprOp::Sub: return go(n.a) - go(n.b);
            case ExprOp::Mul: return go(n.a) * go(n.b);
            case ExprOp::Div: {
                const Jet d = go(n.b);
                if (d.v == 0) throw domain_error("division by zero in '" + print_node(i) + "'", i);
                return go(n.a) / d;
            }
            case ExprOp::Pow: return gs::pow(go(n.a), go(n.b), i);
            case ExprOp::Neg: return -go(n.a);
            case ExprOp::Exp: return gs::exp(go(n.a));
            case ExprOp::Log: return gs::log(go(n.a), i);
        }
        return Jet{};
    };
    return go(root_);
}

Jet Expr::eval_jet(const Jet& r, const Jet& z) const {
    if (depends_on(ExprVar::Psi))
        throw domain_error("expression mentions psi but no psi jet was supplied");
    return eval_jet(r, z, Jet::constant(0));
}

bool Expr::depends_on(ExprVar v) const {
    for (const ExprNode& n : nodes_)
        if (n.op == ExprOp::Var && n.var == v) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Expr Expr::diff(ExprVar v) const {
    Expr out;
    out.nodes_.clear();
    ExprBuilder bld(out.nodes_);

    std::function<int(int)> copy = [&](int i) { return bld.import(*this, i); };

    std::function<int(int)> d = [&](int i) -> int {
        const ExprNode& n = nodes_[i];
        switch (n.op) {
            case ExprOp::Const: return bld.constant(0);
            case ExprOp::Var: return bld.constant(n.var == v ? 1 : 0);
            case ExprOp::Add: return bld.add(d(n.a), d(n.b));
            case ExprOp::Sub: return bld.sub(d(n.a), d(n.b));
            case ExprOp::Mul: return bld.add(bld.mul(d(n.a), copy(n.b)), bld.mul(copy(n.a), d(n.b)));
            case ExprOp::Div: {
                const int num = bld.sub(bld.mul(d(n.a), copy(n.b)), bld.mul(copy(n.a), d(n.b)));
                return bld.div(num, bld.mul(copy(n.b), copy(n.b)));
            }
            case ExprOp::Pow: {
                if (nodes_[n.b].op == ExprOp::Const) {
                    const double p = nodes_[n.b].value;
                    // d(a^p) = p a^(p-1) a'
                    const int am = bld.pow(copy(n.a), bld.constant(p - 1));
                    return bld.mul(bld.constant(p), bld.mul(am, d(n.a)));
                }
                // d(a^b) = a^b (b' log a + b a'/a)
                const int ab = bld.pow(copy(n.a), copy(n.b));
                const int t1 = bld.mul(d(n.b), bld.log(copy(n.a)));
                const int t2 = bld.div(bld.mul(copy(n.b), d(n.a)), copy(n.a));
                return bld.mul(ab, bld.add(t1, t2));
            }
            case ExprOp::Neg: return bld.neg(d(n.a));
            case ExprOp::Exp: return bld.mul(bld.exp(copy(n.a)), d(n.a));
            case ExprOp::Log: return bld.div(d(n.a), copy(n.a));
        }
        return bld.constant(0);
    };
    out.root_ = d(root_);
    return out;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {
// precedence: Add/Sub 1, Mul/Div 2, unary minus 3, Pow 4, atom 5
int precedence(ExprOp op) {
    switch (op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Neg: return 3;
        case ExprOp::Pow: return 4;
        default: return 5;
    }
}
} // namespace

std::string Expr::print_node(int node) const {
    std::function<std::string(int, int)> go = [&](int i, int parent_prec) -> std::string {
        const ExprNode& n = nodes_[i];
        std::string s;
        int prec = precedence(n.op);
        switch (n.op) {
            case ExprOp::Const:
                s = fmt_num(n.value);
                if (n.value < 0) prec = 3;
                break;
            case ExprOp::Var: s = var_name(n.var); break;
            case ExprOp::Add: s = go(n.a, 1) + " + " + go(n.b, 2); break;
            case ExprOp::Sub: s = go(n.a, 1) + " - " + go(n.b, 2); break;
            case ExprOp::Mul: s = go(n.a, 2) + "*" + go(n.b, 3); break;
            case ExprOp::Div: s = go(n.a, 2) + "/" + go(n.b, 3); break;
            case ExprOp::Pow: s = go(n.a, 5) + "^" + go(n.b, 4); break;
            case ExprOp::Neg: s = "-" + go(n.a, 4); break;
            case ExprOp::Exp: return "exp(" + go(n.a, 0) + ")";
            case ExprOp::Log: return "log(" + go(n.a, 0) + ")";
        }
        if (prec < parent_prec) s = "(" + s + ")";
        return s;
    };
    return go(node, 0);
}

std::string Expr::print() const { return print_node(root_); }

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class ExprParser {
public:
    ExprParser(std::string_view text, ParseOptions opts) : text_(text), opts_(opts) {}

    Expr run() {
        Expr e;
        e.nodes_.clear();
        pool_ = &e.nodes_;
        bld_ = std::make_unique<ExprBuilder>(e.nodes_);
        e.root_ = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
        bld_.reset();
        return e;
    }

private:
    std::string_view text_;
    ParseOptions opts_;
    std::size_t pos_ = 0;
    std::vector<ExprNode>* pool_ = nullptr;
    std::unique_ptr<ExprBuilder> bld_;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw parse_error(std::string("expected '") + c + "'", pos_);
    }

    int parse_sum() {
        int lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = tag(bld_->add(lhs, parse_term()));
            else if (accept('-'))
                lhs = tag(bld_->sub(lhs, parse_term()));
            else
                return lhs;
        }
    }
    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = tag(bld_->mul(lhs, parse_unary()));
            else if (accept('/'))
                lhs = tag(bld_->div(lhs, parse_unary()));
            else
                return lhs;
        }
    }
    int parse_unary() {
        if (accept('-')) return tag(bld_->neg(parse_unary()));
        if (accept('+')) return parse_unary();
        return parse_power();
    }
    int parse_power() {
        int base = parse_primary();
        if (accept('^')) {
            const int e = parse_unary(); // right-associative, signed exponents allowed
            return tag(bld_->pow(base, e));
        }
        return base;
    }
    int parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const int e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }
    int parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                pos_ = p;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        const std::string tok(text_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) throw parse_error("malformed number '" + tok + "'", start);
        return tag(bld_->constant(v), start);
    }
    int parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "exp" || name == "log") {
            expect('(');
            const int arg = parse_sum();
            expect(')');
            return tag(name == "exp" ? bld_->exp(arg) : bld_->log(arg), start);
        }
        if (name == "psi" && opts_.allow_psi) return tag(bld_->variable(ExprVar::Psi), start);
        if (name == "r" && opts_.allow_r) return tag(bld_->variable(ExprVar::R), start);
        if (name == "z" && opts_.allow_z) return tag(bld_->variable(ExprVar::Z), start);
        throw parse_error("unknown identifier '" + name + "'", start);
    }

    int tag(int node, std::size_t at = std::string::npos) {
        if (at != std::string::npos && (*pool_)[node].src < 0)
            (*pool_)[node].src = static_cast<int>(at);
        return node;
    }
};

Expr parse_expression(std::string_view text, ParseOptions opts) {
    return ExprParser(text, opts).run();
}

} // namespace gs
