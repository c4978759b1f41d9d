#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "alg/scalar.hpp"

namespace alg {

/// Unnormalized expression tree, as produced by the parser or built by hand.
class Expr {
public:
    enum class Kind { Const, Symbol, Add, Mul, Div, Pow, Neg, Call };

    static Expr constant(const ComplexRational& c);
    static Expr symbol(std::string name);
    static Expr add(std::vector<Expr> terms);
    static Expr mul(std::vector<Expr> factors);
    static Expr div(Expr num, Expr den);
    static Expr pow(Expr base, long exponent);
    static Expr neg(Expr arg);
    static Expr call(Func f, Expr arg);

    Kind kind() const;
    const ComplexRational& value() const;
    const std::string& name() const;
    const std::vector<Expr>& children() const;
    long exponent() const;
    Func func() const;

    std::string str() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Canonical form of a tree. Throws DivisionByZero on a structurally zero divisor.
Scalar normalize(const Expr& e);

/// Canonical tree of a scalar; normalize(to_expr(s)) == s.
Expr to_expr(const Scalar& s);

class Chart;

struct ParseError : std::runtime_error {
    ParseError(std::size_t pos, const std::string& msg);
    std::size_t position;
};

/// Parses the scalar grammar; identifiers other than `i` must be coordinates of the chart.
Expr parse_expr(std::string_view text, const std::vector<std::string>& coordinates);
Scalar parse_scalar(std::string_view text, const Chart& chart);
Scalar parse_scalar(std::string_view text, const std::vector<std::string>& coordinates);

}  // namespace alg
