#include <random>

#include "alg/eforms.hpp"
#include "alg/expr.hpp"
#include "alg/fixtures.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace alg;

namespace {

Section random_sec(const Algebroid& A, std::mt19937_64& rng) {
    Section s(A.rank());
    for (auto& v : s) v = testgen::random_poly(rng, A.chart().coords(), 2, 2);
    return s;
}

// Independent oracle for d: the invariant formula evaluated on sections.
Scalar cartan_d(const EForm& w, const std::vector<Section>& s) {
    const Algebroid& A = *w.algebroid();
    const std::size_t n = s.size();
    Scalar out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Section> rest;
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) rest.push_back(s[k]);
        Scalar term = A.rho(s[i], evaluate(w, rest));
        out += (i % 2 == 0) ? term : -term;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Section> rest{A.bracket(s[i], s[j])};
            for (std::size_t k = 0; k < n; ++k)
                if (k != i && k != j) rest.push_back(s[k]);
            Scalar term = evaluate(w, rest);
            out += ((i + j) % 2 == 0) ? term : -term;
        }
    return out;
}

}  // namespace

TEST_CASE("Heisenberg: d e^3 = -e^1 ^ e^2") {
    Geometry G = fixture("heis_j");
    EForm d3 = d(EForm::coframe(G.A, 2));
    EForm expected(G.A, 2);
    expected.set({0, 1}, Scalar(-1));
    CHECK(d3 == expected);
    CHECK(d(EForm::coframe(G.A, 0)).is_zero());
}

TEST_CASE("flat plane: d(x e^2) = e^1 ^ e^2") {
    Geometry G = fixture("flat_r2");
    EForm w(G.A, 1);
    w.set({1}, Scalar::coordinate("x"));
    EForm expected(G.A, 2);
    expected.set({0, 1}, Scalar(1));
    CHECK(d(w) == expected);
}

TEST_CASE("antisymmetric component access") {
    Geometry G = fixture("flat_r4");
    EForm w(G.A, 2);
    w.set({2, 0}, Scalar(5));
    CHECK(w[{0, 2}] == Scalar(-5));
    CHECK(w[{2, 0}] == Scalar(5));
    CHECK(w[{1, 1}].is_zero());
    CHECK(EForm(G.A, 5).components().empty());
}

TEST_CASE("wedge of coframes evaluates to a determinant") {
    Geometry G = fixture("flat_r2");
    EForm w = wedge(EForm::coframe(G.A, 0), EForm::coframe(G.A, 1));
    Section s1{Scalar(2), Scalar(3)}, s2{Scalar(5), Scalar(7)};
    CHECK(evaluate(w, {s1, s2}) == Scalar(2 * 7 - 3 * 5));
}

TEST_CASE("property: d agrees with the invariant formula") {
    std::mt19937_64 rng(21);
    for (const auto& name : {"heis_j", "warped_r4", "s3_projector"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        const Algebroid& A = *G.A;
        for (std::size_t p = 0; p <= 2; ++p) {
            EForm w = random_form(G.A, p, 5, static_cast<int>(p));
            std::vector<Section> s;
            for (std::size_t k = 0; k <= p; ++k) s.push_back(random_sec(A, rng));
            CHECK((evaluate(d(w), s) - cartan_d(w, s)).is_zero());
        }
    }
}

TEST_CASE("property: d(d w) = 0 on valid fixtures, 20 forms per degree") {
    for (const auto& name : {"flat_r4", "heis_j", "warped_r4", "conformal_sphere_chart", "s3_projector"}) {
        CAPTURE(name);
        Check c = d_squared_check(fixture(name).A, 20);
        CHECK(c.passed);
        CHECK(c.witness.empty());
    }
}

TEST_CASE("broken Heisenberg: d(d w) has a nonzero witness") {
    Geometry G = fixture("heis_broken");
    Check c = d_squared_check(G.A, 20);
    CHECK_FALSE(c.passed);
    CHECK_FALSE(c.witness.empty());
    // d e^3 = -e^1 ^ e^2 and d e^1 = -e^1 ^ e^3, so d d e^3 = -e^1 ^ e^2 ^ e^3, matching the -e3 jacobiator.
    EForm expected(G.A, 3);
    expected.set({0, 1, 2}, Scalar(-1));
    CHECK(d(d(EForm::coframe(G.A, 2))) == expected);
    CHECK(d(d(EForm::coframe(G.A, 0))).is_zero());
}

TEST_CASE("property: graded Leibniz rule and graded commutativity") {
    for (const auto& name : {"heis_j", "warped_r4"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        for (int t = 0; t < 4; ++t) {
            const std::size_t p = t % 2 + 1, q = 1;
            EForm a = random_form(G.A, p, 9, t), b = random_form(G.A, q, 9, 100 + t);
            const Scalar sign(p % 2 == 0 ? 1 : -1);
            CHECK(d(wedge(a, b)) == wedge(d(a), b) + sign * wedge(a, d(b)));
            const Scalar swap((p * q) % 2 == 0 ? 1 : -1);
            CHECK(wedge(a, b) == swap * wedge(b, a));
        }
    }
}

TEST_CASE("property: wedge is associative") {
    Geometry G = fixture("flat_r4");
    for (int t = 0; t < 3; ++t) {
        EForm a = random_form(G.A, 1, 3, t), b = random_form(G.A, 1, 3, 10 + t), c = random_form(G.A, 2, 3, 20 + t);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}
