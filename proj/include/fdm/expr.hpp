#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "fdm/jet.hpp"

namespace fdm {

enum class Func { Sin, Cos, Exp, Ln, Sqrt, Abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Number, VarX, VarU, Add, Sub, Mul, Div, Neg, Pow, Call };

    Kind kind{};
    double number = 0.0;  // Kind::Number
    Func func{};          // Kind::Call
    NodePtr a, b;
};

// Parsed scalar formula in the variables x and u. Immutable; safe for
// concurrent evaluation from multiple threads.
class Expression {
public:
    Expression() = default;

    // Grammar: +, -, *, /, unary -, ^ (power), functions sin cos exp ln sqrt
    // abs with mandatory parentheses. Precedence: power > unary - > *,/ > +,-.
    static Expression parse(std::string_view source);

    double eval(double x, double u) const;

    // coeffs[p] = (1/p!) d^p/du^p of the expression at (x, u0), p = 0..order.
    Jet jet_eval(double x, double u0, std::size_t order) const;

    bool depends_on_u() const;
    std::string to_string() const;
    const NodePtr& root() const { return root_; }
    bool empty() const { return root_ == nullptr; }

private:
    explicit Expression(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

bool structurally_equal(const Expression& a, const Expression& b);

}  // namespace fdm
