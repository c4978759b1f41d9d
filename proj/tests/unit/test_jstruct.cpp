#include <random>

#include "alg/jstruct.hpp"
#include "alg/fixtures.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace alg;

namespace {

const std::vector<std::string> kJ = {"flat_r2", "flat_r4", "heis_j", "warped_r4", "conformal_sphere_chart",
                                     "s3_projector"};

// Brute-force oracle: the defining expression with nothing but brackets and matrix products.
Section brute_N(const Algebroid& A, const Matrix& J, const Section& s1, const Section& s2) {
    const Section J1 = J.apply(s1), J2 = J.apply(s2);
    return A.bracket(J1, J2) - J.apply(A.bracket(s1, J2)) - J.apply(A.bracket(J1, s2)) - A.bracket(s1, s2);
}

}  // namespace

TEST_CASE("Heisenberg: N(e1,e2) = -e3 from the brute-force expansion") {
    Geometry G = fixture("heis_j");
    const Algebroid& A = *G.A;
    // J e1 = e3, J e2 = e4: [Je1,Je2] = [e3,e4] = 0, J[e1,e4] = 0, J[e3,e2] = 0, [e1,e2] = e3.
    const Section expected{Scalar(0), Scalar(0), Scalar(-1), Scalar(0)};
    CHECK(brute_N(A, *G.J, A.frame(0), A.frame(1)) == expected);
    NijenhuisResult N = nijenhuis(A, *G.J);
    CHECK(N.frame(2, 0, 1) == Scalar(-1));
    CHECK(N.coefficients(2, 0, 1) == Scalar(-1));
    CHECK_FALSE(N.vanishes());
}

TEST_CASE("frame and coefficient formulas for N agree on every fixture") {
    for (const auto& name : kJ) {
        CAPTURE(name);
        Geometry G = fixture(name);
        NijenhuisResult N = nijenhuis(*G.A, *G.J);
        CHECK(N.agreement.passed);
        CHECK(N.frame == N.coefficients);
        CHECK(N.vanishes() == (name != "heis_j"));
        const Algebroid& A = *G.A;
        for (std::size_t a = 0; a < A.rank(); ++a)
            for (std::size_t b = a + 1; b < A.rank(); ++b) {
                Section bf = brute_N(A, *G.J, A.frame(a), A.frame(b));
                for (std::size_t c = 0; c < A.rank(); ++c) CHECK(bf[c] == N.frame(c, a, b));
            }
    }
}

TEST_CASE("property: N is tensorial") {
    std::mt19937_64 rng(31);
    Geometry G = fixture("heis_j");
    const Algebroid& A = *G.A;
    for (int t = 0; t < 3; ++t) {
        Scalar f = testgen::random_poly(rng, A.chart().coords(), 2, 2);
        Section s1 = A.frame(t % 4), s2 = A.frame((t + 1) % 4);
        CHECK(nijenhuis_apply(A, *G.J, f * s1, s2) == f * nijenhuis_apply(A, *G.J, s1, s2));
    }
}

TEST_CASE("almost complex check rejects J^2 != -id") {
    Matrix bad = Matrix::identity(2);
    CHECK_FALSE(almost_complex_check(bad).passed);
    Geometry G = fixture("flat_r2");
    CHECK_THROWS_AS(nijenhuis(*G.A, bad), PreconditionError);
}

TEST_CASE("complex frame: eigenvectors, projectors and conjugation") {
    for (const auto& name : {"flat_r4", "heis_j", "s3_projector"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        ComplexFrame F(G.A, *G.J);
        CHECK(F.eigen_check().passed);
        CHECK(F.projector_check().passed);
        CHECK(F.conjugation_check().passed);
        CHECK(F.P() * F.Pinv() == Matrix::identity(G.A->rank()));
        const Scalar i = Scalar::imag_unit();
        for (std::size_t a = 0; a < F.m(); ++a) CHECK(is_zero(G.J->apply(F.P().col(a)) - i * F.P().col(a)));
    }
}

TEST_CASE("Newlander-Nirenberg: the five statuses agree") {
    for (const auto& name : kJ) {
        CAPTURE(name);
        Geometry G = fixture(name);
        ComplexFrame F(G.A, *G.J);
        NNReport r = newlander_nirenberg_report(F);
        CHECK(r.agreement.passed);
        const bool integrable = name != "heis_j";
        for (const Check& c : {r.closure10, r.closure01, r.coframe, r.bigraded, r.nijenhuis}) {
            CAPTURE(c.name);
            CHECK(c.passed == integrable);
        }
    }
}

TEST_CASE("bigraded pieces of d on (1,0)-coframes") {
    Geometry flat = fixture("warped_r4");
    ComplexFrame F(flat.A, *flat.J);
    for (std::size_t a = 0; a < F.m(); ++a) {
        DSplit s = d_split(EForm::coframe(F.complex(), a), F.m());
        CHECK(s.dprime.is_zero());
        CHECK(s.ddprime.is_zero());
    }
    Geometry heis = fixture("heis_j");
    ComplexFrame H(heis.A, *heis.J);
    DSplit t = d_split(EForm::coframe(H.complex(), 0), H.m());
    CHECK_FALSE(t.ddprime.is_zero());
}

TEST_CASE("matched pair on integrable fixtures") {
    for (const auto& name : {"flat_r2", "flat_r4", "warped_r4", "conformal_sphere_chart", "s3_projector"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        MatchedPairReport r = matched_pair_check(ComplexFrame(G.A, *G.J));
        for (const Check& c : r.checks()) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
    }
    Geometry H = fixture("heis_j");
    CHECK_THROWS_AS(matched_pair_check(ComplexFrame(H.A, *H.J)), PreconditionError);
}

TEST_CASE("infinitesimal automorphisms") {
    Geometry G = fixture("flat_r2");
    const Algebroid& A = *G.A;
    // The rotation field -y d_x + x d_y preserves the standard J; x d_x does not.
    Section rot{-Scalar::coordinate("y"), Scalar::coordinate("x")};
    CHECK(infinitesimal_automorphism_check(A, *G.J, rot).passed);
    Section dil{Scalar::coordinate("x"), Scalar(0)};
    CHECK_FALSE(infinitesimal_automorphism_check(A, *G.J, dil).passed);
}
