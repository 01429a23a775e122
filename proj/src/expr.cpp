#include "fdm/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "fdm/errors.hpp"

namespace fdm {

namespace {

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = v;
    return n;
}

// ---------------------------------------------------------------- parser

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, static_cast<int>(at) + 1);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool accept(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos >= src.size() || src[pos] != c)
            fail(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    NodePtr parse_expression() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make(Node::Kind::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = make(Node::Kind::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make(Node::Kind::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = make(Node::Kind::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Node::Kind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make(Node::Kind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input", pos);
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            NodePtr e = parse_expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    NodePtr parse_number() {
        const std::size_t start = pos;
        double v = 0.0;
        const char* begin = src.data() + pos;
        const char* end = src.data() + src.size();
        auto [p, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc()) fail("malformed number", start);
        pos += static_cast<std::size_t>(p - begin);
        return make_number(v);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos;
        while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
        const std::string_view name = src.substr(start, pos - start);
        if (name == "x") return make(Node::Kind::VarX);
        if (name == "u") return make(Node::Kind::VarU);
        Func f;
        if (name == "sin")
            f = Func::Sin;
        else if (name == "cos")
            f = Func::Cos;
        else if (name == "exp")
            f = Func::Exp;
        else if (name == "ln")
            f = Func::Ln;
        else if (name == "sqrt")
            f = Func::Sqrt;
        else if (name == "abs")
            f = Func::Abs;
        else
            fail("unknown identifier '" + std::string(name) + "'", start);
        expect('(');
        NodePtr arg = parse_expression();
        expect(')');
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Call;
        n->func = f;
        n->a = std::move(arg);
        return n;
    }
};

// ------------------------------------------------------------- evaluation

std::string unparse(const Node& n);

[[noreturn]] void domain_fail(const Node& n, const char* what) {
    throw DomainError(std::string(what) + " in '" + unparse(n) + "'");
}

bool node_is_constant(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Number: return true;
        case Node::Kind::VarX:
        case Node::Kind::VarU: return false;
        default: break;
    }
    if (n.a && !node_is_constant(*n.a)) return false;
    if (n.b && !node_is_constant(*n.b)) return false;
    return true;
}

bool integral_exponent(double v, long& out) {
    const double r = std::nearbyint(v);
    if (std::fabs(v - r) > 1e-12 || std::fabs(r) > 1e9) return false;
    out = static_cast<long>(r);
    return true;
}

// same binary-exponentiation order as jet_pow so that K=0 jets agree with
// eval bit for bit
double pow_int(double a, long n) {
    if (n == 0) return 1.0;
    const bool neg = n < 0;
    unsigned long e = static_cast<unsigned long>(neg ? -n : n);
    double base = a, r = 1.0;
    while (e > 0) {
        if (e & 1UL) r *= base;
        base *= base;
        e >>= 1;
    }
    return neg ? 1.0 / r : r;
}

double eval_node(const Node& n, double x, double u) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Number: return n.number;
        case K::VarX: return x;
        case K::VarU: return u;
        case K::Add: return eval_node(*n.a, x, u) + eval_node(*n.b, x, u);
        case K::Sub: return eval_node(*n.a, x, u) - eval_node(*n.b, x, u);
        case K::Mul: return eval_node(*n.a, x, u) * eval_node(*n.b, x, u);
        case K::Div: {
            const double d = eval_node(*n.b, x, u);
            if (d == 0.0) domain_fail(n, "division by zero");
            return eval_node(*n.a, x, u) / d;
        }
        case K::Neg: return -eval_node(*n.a, x, u);
        case K::Pow: {
            const double base = eval_node(*n.a, x, u);
            const double expo = eval_node(*n.b, x, u);
            long k;
            const bool const_expo = node_is_constant(*n.b);
            if (const_expo && integral_exponent(expo, k)) {
                if (base == 0.0 && k < 0) domain_fail(n, "division by zero");
                return pow_int(base, k);
            }
            if (base <= 0.0) domain_fail(n, "real power of a non-positive base");
            if (const_expo) return std::pow(base, expo);
            return std::exp(expo * std::log(base));  // mirrors the jet rule
        }
        case K::Call: {
            const double a = eval_node(*n.a, x, u);
            switch (n.func) {
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Exp: return std::exp(a);
                case Func::Ln:
                    if (a <= 0.0) domain_fail(n, "ln of a non-positive value");
                    return std::log(a);
                case Func::Sqrt:
                    if (a < 0.0) domain_fail(n, "sqrt of a negative value");
                    return std::sqrt(a);
                case Func::Abs: return std::fabs(a);
            }
        }
    }
    domain_fail(n, "invalid node");
}

Jet jet_node(const Node& n, double x, double u0, std::size_t order) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Number: return Jet::constant(n.number, order);
        case K::VarX: return Jet::constant(x, order);
        case K::VarU: return Jet::variable(u0, order);
        case K::Add: return jet_node(*n.a, x, u0, order) + jet_node(*n.b, x, u0, order);
        case K::Sub: return jet_node(*n.a, x, u0, order) - jet_node(*n.b, x, u0, order);
        case K::Mul: return jet_node(*n.a, x, u0, order) * jet_node(*n.b, x, u0, order);
        case K::Div: {
            const Jet d = jet_node(*n.b, x, u0, order);
            if (d.value() == 0.0) domain_fail(n, "division by zero");
            return jet_node(*n.a, x, u0, order) / d;
        }
        case K::Neg: return -jet_node(*n.a, x, u0, order);
        case K::Pow: {
            const Jet base = jet_node(*n.a, x, u0, order);
            const Jet expo = jet_node(*n.b, x, u0, order);
            long k;
            const bool const_expo = node_is_constant(*n.b);
            if (const_expo && integral_exponent(expo.value(), k)) {
                if (base.value() == 0.0 && k < 0) domain_fail(n, "division by zero");
                return jet_pow(base, k);
            }
            if (base.value() <= 0.0) domain_fail(n, "real power of a non-positive base");
            if (const_expo) return jet_pow(base, expo.value());
            return jet_exp(expo * jet_ln(base));
        }
        case K::Call: {
            const Jet a = jet_node(*n.a, x, u0, order);
            try {
                switch (n.func) {
                    case Func::Sin: return jet_sin(a);
                    case Func::Cos: return jet_cos(a);
                    case Func::Exp: return jet_exp(a);
                    case Func::Ln: return jet_ln(a);
                    case Func::Sqrt: return jet_sqrt(a);
                    case Func::Abs: return jet_abs(a);
                }
            } catch (const DomainError&) {
                domain_fail(n, "domain error");
            }
        }
    }
    domain_fail(n, "invalid node");
}

// -------------------------------------------------------------- unparsing

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Sqrt: return "sqrt";
        case Func::Abs: return "abs";
    }
    return "?";
}

std::string unparse(const Node& n) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Number: return format_number(n.number);
        case K::VarX: return "x";
        case K::VarU: return "u";
        case K::Add: return "(" + unparse(*n.a) + "+" + unparse(*n.b) + ")";
        case K::Sub: return "(" + unparse(*n.a) + "-" + unparse(*n.b) + ")";
        case K::Mul: return "(" + unparse(*n.a) + "*" + unparse(*n.b) + ")";
        case K::Div: return "(" + unparse(*n.a) + "/" + unparse(*n.b) + ")";
        case K::Neg: return "(-" + unparse(*n.a) + ")";
        case K::Pow: return "(" + unparse(*n.a) + "^" + unparse(*n.b) + ")";
        case K::Call: return std::string(func_name(n.func)) + "(" + unparse(*n.a) + ")";
    }
    return "?";
}

bool equal_nodes(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->kind == Node::Kind::Number && a->number != b->number) return false;
    if (a->kind == Node::Kind::Call && a->func != b->func) return false;
    return equal_nodes(a->a.get(), b->a.get()) && equal_nodes(a->b.get(), b->b.get());
}

bool node_depends_on_u(const Node& n) {
    if (n.kind == Node::Kind::VarU) return true;
    if (n.a && node_depends_on_u(*n.a)) return true;
    if (n.b && node_depends_on_u(*n.b)) return true;
    return false;
}

}  // namespace

Expression Expression::parse(std::string_view source) {
    Parser p{source};
    NodePtr root = p.parse_expression();
    p.skip_ws();
    if (p.pos != source.size()) p.fail("trailing input", p.pos);
    return Expression(std::move(root));
}

double Expression::eval(double x, double u) const { return eval_node(*root_, x, u); }

Jet Expression::jet_eval(double x, double u0, std::size_t order) const {
    return jet_node(*root_, x, u0, order);
}

bool Expression::depends_on_u() const { return root_ && node_depends_on_u(*root_); }

std::string Expression::to_string() const { return root_ ? unparse(*root_) : ""; }

bool structurally_equal(const Expression& a, const Expression& b) {
    return equal_nodes(a.root().get(), b.root().get());
}

}  // namespace fdm
