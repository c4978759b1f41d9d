#include <random>

#include "alg/constructions.hpp"
#include "alg/expr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace alg;

namespace {

const std::vector<std::string> kValid = {"flat_r2", "flat_r4", "heis_j", "warped_r4", "conformal_sphere_chart",
                                         "s3_projector"};

Section random_sec(const Algebroid& A, std::mt19937_64& rng) {
    Section s(A.rank());
    for (auto& v : s) v = testgen::random_poly(rng, A.chart().coords(), 2, 2);
    return s;
}

}  // namespace

TEST_CASE("catalog fixtures satisfy the structure equations") {
    for (const auto& name : kValid) {
        CAPTURE(name);
        Geometry G = fixture(name);
        const ValidationReport& v = G.A->validation();
        CHECK(v.antisymmetry.passed);
        CHECK(v.anchor.passed);
        CHECK(v.jacobi.passed);
        CHECK(v.jacobi_residuals.empty());
    }
}

TEST_CASE("broken Heisenberg fails Jacobi with residual -e3 on (1,2,3)") {
    // [e1,e2] = e3, [e1,e3] = e1: [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = 0 + 0 + [-e1,e2] = -e3.
    Geometry G = fixture("heis_broken");
    const ValidationReport& v = G.A->validation();
    CHECK_FALSE(v.jacobi.passed);
    REQUIRE(v.jacobi_residuals.size() == 1);
    CHECK(v.jacobi_residuals[0].first == std::array<std::size_t, 3>{0, 1, 2});
    CHECK(v.jacobi_residuals[0].second == Section{Scalar(0), Scalar(0), Scalar(-1), Scalar(0)});
    CHECK(frame_jacobiator(*G.A, 0, 1, 2) == Section{Scalar(0), Scalar(0), Scalar(-1), Scalar(0)});
}

TEST_CASE("Heisenberg structure functions") {
    Geometry G = fixture("heis_j");
    const Algebroid& A = *G.A;
    CHECK(A.C(2, 0, 1) == Scalar(1));
    CHECK(A.C(2, 1, 0) == Scalar(-1));
    CHECK(A.bracket(A.frame(0), A.frame(1)) == A.frame(2));
    CHECK(is_zero(A.anchor_push(A.frame(3))));
}

TEST_CASE("anchor is a bracket homomorphism on random sections") {
    std::mt19937_64 rng(11);
    for (const auto& name : {"flat_r2", "warped_r4", "conformal_sphere_chart", "s3_projector"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        const Algebroid& A = *G.A;
        for (int t = 0; t < 3; ++t) {
            Section s1 = random_sec(A, rng), s2 = random_sec(A, rng);
            VectorField lhs = A.anchor_push(A.bracket(s1, s2));
            VectorField rhs = vf_bracket(A.chart(), A.anchor_push(s1), A.anchor_push(s2));
            for (std::size_t i = 0; i < lhs.size(); ++i) CHECK((lhs[i] - rhs[i]).is_zero());
        }
    }
}

TEST_CASE("property: Leibniz rule and antisymmetry of the bracket") {
    std::mt19937_64 rng(12);
    for (const auto& name : {"flat_r4", "heis_j", "s3_projector"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        const Algebroid& A = *G.A;
        for (int t = 0; t < 3; ++t) {
            Section s1 = random_sec(A, rng), s2 = random_sec(A, rng);
            Scalar f = testgen::random_poly(rng, A.chart().coords(), 2, 2);
            Section lhs = A.bracket(s1, f * s2);
            Section rhs = f * A.bracket(s1, s2) + A.rho(s1, f) * s2;
            CHECK(is_zero(lhs - rhs));
            CHECK(is_zero(A.bracket(s1, s2) + A.bracket(s2, s1)));
        }
    }
}

TEST_CASE("property: Jacobi identity on random sections of valid fixtures") {
    std::mt19937_64 rng(13);
    for (const auto& name : {"heis_j", "warped_r4", "prolong(heis_j)"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        const Algebroid& A = *G.A;
        Section s1 = random_sec(A, rng), s2 = random_sec(A, rng), s3 = random_sec(A, rng);
        CHECK(is_zero(jacobiator(A, s1, s2, s3)));
    }
    {
        // Dense rational structure functions: keep the sections simple.
        Geometry G = fixture("s3_projector");
        const Algebroid& A = *G.A;
        const Scalar u1 = A.chart().coordinate(0);
        CHECK(is_zero(jacobiator(A, u1 * A.frame(0), A.frame(1), A.frame(3))));
    }
    Geometry B = fixture("heis_broken");
    CHECK_FALSE(is_zero(jacobiator(*B.A, B.A->frame(0), B.A->frame(1), B.A->frame(2))));
}

TEST_CASE("anchor rank is reported") {
    CHECK(fixture("heis_j").A->validation().anchor_rank_deficient);
    CHECK(fixture("heis_j").A->validation().anchor_generic_rank == 0);
    CHECK_FALSE(fixture("flat_r2").A->validation().anchor_rank_deficient);
    CHECK(fixture("s3_projector").A->validation().anchor_generic_rank == 3);
}
