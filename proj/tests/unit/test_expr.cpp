#include <cmath>
#include <functional>
#include <optional>

#include "alg/chart.hpp"
#include "alg/expr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace alg;

namespace {

const std::vector<std::string> XYZ{"x", "y", "z"};

Scalar S(const char* text) { return parse_scalar(text, XYZ); }

// Independent oracle: evaluates a raw tree at a rational point without normalizing.
std::optional<ComplexRational> eval_tree(const Expr& e, const Point& p) {
    switch (e.kind()) {
        case Expr::Kind::Const: return e.value();
        case Expr::Kind::Symbol: return p.at(e.name());
        case Expr::Kind::Add: {
            ComplexRational s;
            for (const auto& c : e.children()) {
                auto v = eval_tree(c, p);
                if (!v) return std::nullopt;
                s += *v;
            }
            return s;
        }
        case Expr::Kind::Mul: {
            ComplexRational s(1);
            for (const auto& c : e.children()) {
                auto v = eval_tree(c, p);
                if (!v) return std::nullopt;
                s *= *v;
            }
            return s;
        }
        case Expr::Kind::Div: {
            auto a = eval_tree(e.children()[0], p);
            auto b = eval_tree(e.children()[1], p);
            if (!a || !b || b->is_zero()) return std::nullopt;
            return *a / *b;
        }
        case Expr::Kind::Pow: {
            auto a = eval_tree(e.children()[0], p);
            if (!a || (a->is_zero() && e.exponent() < 0)) return std::nullopt;
            return a->pow(e.exponent());
        }
        case Expr::Kind::Neg: {
            auto a = eval_tree(e.children()[0], p);
            if (!a) return std::nullopt;
            return -*a;
        }
        case Expr::Kind::Call: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("grammar: precedence, associativity and literals") {
    CHECK(S("2^3^2") == Scalar(512));
    CHECK(S("-x^2") == -(Scalar::coordinate("x").pow(2)));
    CHECK(S("1/2 + 1/3") == Scalar::rational(5, 6));
    CHECK(S("i*i") == Scalar(-1));
    CHECK(S("(x+y)*(x-y)") == S("x^2 - y^2"));
    CHECK(S("x^-1") == S("1/x"));
    CHECK(S("8/4/2") == Scalar(1));
}

TEST_CASE("grammar: errors carry positions") {
    try {
        (void)S("x + w");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
    CHECK_THROWS_AS((void)S("x +"), ParseError);
    CHECK_THROWS_AS((void)S("1/0"), ParseError);
    CHECK_THROWS_AS((void)S("x/(x - x)"), ParseError);
    CHECK_THROWS_AS((void)S("tan(x)"), ParseError);
    CHECK_THROWS_AS((void)S("x^y"), ParseError);
    CHECK_THROWS_AS((void)S("(x"), ParseError);
}

TEST_CASE("canonical form cancels common factors") {
    CHECK(S("(x^2 - y^2)/(x - y)") == S("x + y"));
    CHECK(S("(x + 1)^3/(x^2 + 2*x + 1)") == S("x + 1"));
    CHECK(S("sin(x)/sin(x)") == Scalar(1));
    CHECK(S("(x*y + x)/(y^2 - 1)") == S("x/(y - 1)"));
    CHECK(S("(x^2*y^2 - z^2)/(x*y + z)") == S("x*y - z"));
    CHECK(S("1/(x+1) - 1/(x+1)").is_zero());
    CHECK(S("1/(x+1) + 1/(x-1)") == S("2*x/(x^2 - 1)"));
    CHECK(S("((1+i)*x + (1+i))/(x+1)") == S("1 + i"));
}

TEST_CASE("sqrt is opaque") {
    Scalar r = S("sqrt(x)");
    CHECK(r * r != S("x"));
    CHECK(differentiate(r, "x") == S("1/(2*sqrt(x))"));
}

TEST_CASE("printer is canonical and reparses") {
    CHECK(S("y + x").str() == "x + y");
    CHECK(S("1 - x^2").str() == "-x^2 + 1");
    CHECK(S("x/(2*y+2)").str() == "1/2*x/(y + 1)");
    CHECK(S("(1+2*i)*x - i").str() == "(1+2*i)*x - i");
    CHECK(S("-3/2*x*y").str() == "-3/2*x*y");
    CHECK(S("sin(x+1)^2").str() == "sin(x + 1)^2");
    for (const char* t : {"x/(2*y+2)", "(1+2*i)*x - i", "1/(x*y)", "-x/(y^2+1)", "i*x - 2*i*y", "exp(-x)*x"}) {
        Scalar s = S(t);
        CHECK(S(s.str().c_str()) == s);
    }
}

TEST_CASE("differentiation rules") {
    CHECK(differentiate(S("x^3*y"), "x") == S("3*x^2*y"));
    CHECK(differentiate(S("1/(1+x^2)"), "x") == S("-2*x/(1+x^2)^2"));
    CHECK(differentiate(S("sin(x*y)"), "x") == S("y*cos(x*y)"));
    CHECK(differentiate(S("cos(x)"), "x") == S("-sin(x)"));
    CHECK(differentiate(S("exp(2*x)"), "x") == S("2*exp(2*x)"));
    CHECK(differentiate(S("log(x^2+1)"), "x") == S("2*x/(x^2+1)"));
    CHECK(differentiate(S("x"), "w").is_zero());
}

TEST_CASE("conjugation flips i and keeps coordinates real") {
    CHECK(conjugate(S("x + i*y")) == S("x - i*y"));
    CHECK(conjugate(S("exp(i*x)")) == S("exp(-i*x)"));
    CHECK(real_part(S("(1+2*i)*x")) == S("x"));
    CHECK(imag_part(S("(1+2*i)*x")) == S("2*x"));
}

TEST_CASE("evaluation") {
    Point p{{"x", ComplexRational::from_fraction(1, 2)}, {"y", ComplexRational(3)}, {"z", ComplexRational(0)}};
    CHECK(*eval_exact(S("x*y + 1"), p) == ComplexRational::from_fraction(5, 2));
    CHECK_THROWS_AS((void)eval_exact(S("1/z"), p), PoleError);
    CHECK_FALSE(eval_exact(S("sin(x)"), p).has_value());
    CHECK(std::abs(eval_numeric(S("sin(x)"), to_numeric(p)) - std::sin(0.5)) < 1e-15);
}

TEST_CASE("zero test") {
    CHECK(zero_test(S("x - x")).is_zero());
    ZeroTest t = zero_test(S("x - y"));
    CHECK_FALSE(t.is_zero());
    CHECK(t.witness.has_value());
    ZeroTest trig = zero_test(S("sin(x)^2 + cos(x)^2 - 1"));
    CHECK_FALSE(trig.is_zero());
    CHECK(trig.all_samples_zero);
    CHECK_FALSE(trig.witness.has_value());
    ZeroTest again = zero_test(S("x - y"), {42, 8, 1e-9});
    CHECK(again.witness == t.witness);
}

TEST_CASE("gcd recovers planted factors") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 40; ++k) {
        Scalar g = testgen::random_poly(rng, XYZ, 3, 2, k % 2 == 0);
        Scalar a = testgen::random_poly(rng, XYZ, 3, 2);
        Scalar b = testgen::random_poly(rng, XYZ, 3, 2, k % 3 == 0);
        if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
        Poly ga = (g * a).num();
        Poly gb = (g * b).num();
        Poly h = gcd(ga, gb);
        CHECK(divide_exact(h, make_monic(g.num())).has_value());
        CHECK(divide_exact(ga, h).has_value());
        CHECK(divide_exact(gb, h).has_value());
    }
}

TEST_CASE("property: normal forms agree with tree evaluation and are idempotent") {
    std::mt19937_64 rng(20261016);
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
        Expr e = testgen::random_expr(rng, XYZ, 4, false, k % 4 == 0);
        Scalar s;
        try {
            s = normalize(e);
        } catch (const DivisionByZero&) {
            continue;
        }
        Expr canon = to_expr(s);
        REQUIRE(normalize(canon) == s);
        REQUIRE(parse_scalar(s.str(), XYZ) == s);
        Point p = random_point(XYZ, 99, k);
        auto want = eval_tree(e, p);
        if (!want) continue;
        try {
            auto got = eval_exact(s, p);
            REQUIRE(got.has_value());
            REQUIRE(*got == *want);
            ++checked;
        } catch (const PoleError&) {
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("property: field laws hold structurally") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        Scalar a, b, c;
        try {
            a = normalize(testgen::random_expr(rng, XYZ, 3));
            b = normalize(testgen::random_expr(rng, XYZ, 3));
            c = normalize(testgen::random_expr(rng, XYZ, 3, false, true));
        } catch (const DivisionByZero&) {
            continue;
        }
        REQUIRE(a + b == b + a);
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a - a).is_zero());
        if (!b.is_zero()) REQUIRE((a / b) * b == a);
        REQUIRE(conjugate(conjugate(c)) == c);
        REQUIRE(conjugate(a * c) == conjugate(a) * conjugate(c));
    }
}

TEST_CASE("property: derivative matches finite differences") {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        Scalar s;
        try {
            s = normalize(testgen::random_expr(rng, XYZ, 3, true));
        } catch (const DivisionByZero&) {
            continue;
        }
        Scalar d = differentiate(s, "x");
        NumericPoint p = to_numeric(random_point(XYZ, 3, k));
        const double h = 1e-6;
        try {
            NumericPoint pp = p, pm = p;
            pp["x"] += h;
            pm["x"] -= h;
            std::complex<double> fd = (eval_numeric(s, pp) - eval_numeric(s, pm)) / (2 * h);
            std::complex<double> an = eval_numeric(d, p);
            if (!std::isfinite(std::abs(fd)) || std::abs(an) > 1e4) continue;
            REQUIRE(std::abs(fd - an) < 1e-4 * (1 + std::abs(an)));
            ++checked;
        } catch (const PoleError&) {
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("chart validation") {
    CHECK_THROWS((Chart("bad", {"x", "x"})));
    CHECK_THROWS((Chart("bad", {"i"})));
    CHECK_THROWS((Chart("bad", {"sin"})));
    Chart pt("point", {});
    CHECK(pt.dim() == 0);
    CHECK(parse_scalar("3/4", pt) == Scalar::rational(3, 4));
}
