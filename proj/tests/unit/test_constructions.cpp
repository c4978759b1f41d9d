#include <cmath>

#include "alg/constructions.hpp"
#include "alg/expr.hpp"
#include "doctest.h"

using namespace alg;

namespace {

void require_all(const std::vector<Check>& checks) {
    for (const Check& c : checks) {
        CAPTURE(c.name);
        CAPTURE(c.witness);
        CHECK(c.passed);
    }
}

}  // namespace

TEST_CASE("complete lift of a function: x^c = y1 on the plane") {
    Prolongation P(fixture("flat_r2"));
    CHECK(P.fiber_coords() == std::vector<std::string>{"y1", "y2"});
    CHECK(P.complete_lift(Scalar::coordinate("x")) == Scalar::coordinate("y1"));
    CHECK(P.complete_lift(Scalar::coordinate("y")) == Scalar::coordinate("y2"));
    // (x y)^c = rho_1(xy) y1 + rho_2(xy) y2
    CHECK(P.complete_lift(parse_scalar("x*y", {"x", "y"})) == parse_scalar("y*y1 + x*y2", {"x", "y", "y1", "y2"}));
}

TEST_CASE("prolongation: shape of the lifted algebroid") {
    Prolongation P(fixture("heis_j"));
    const Algebroid& L = *P.algebroid();
    CHECK(L.rank() == 8);
    CHECK(L.dim() == 5);
    CHECK(L.C(2, 0, 1) == Scalar(1));     // [X1,X2] = X3
    CHECK(L.C(6, 4, 5).is_zero());       // [V1,V2] = 0
    CHECK(L.anchor(4, 1) == Scalar(1));  // rho(V1) = d/dy1
}

TEST_CASE("prolongation of each fixture passes every check") {
    for (const auto& name : {"flat_r2", "flat_r4", "heis_j", "warped_r4", "conformal_sphere_chart", "s3_projector"}) {
        CAPTURE(name);
        Prolongation P(fixture(name));
        require_all(prolongation_report(P).checks());
    }
}

TEST_CASE("Hermitian and Kahler transfer on the plane") {
    Prolongation P(fixture("flat_r2"));
    ProlongationReport r = prolongation_report(P);
    CHECK(r.hermitian_transfer.passed);
    CHECK(r.hermitian_transfer.note == "base Hermitian, lift Hermitian");
    CHECK(r.kahler_transfer.passed);
    CHECK(r.kahler_transfer.note == "base Kahler, lift Kahler");
}

TEST_CASE("prolongation of the broken fixture is not a Lie algebroid") {
    Prolongation P(fixture("heis_broken"));
    CHECK_FALSE(prolongation_report(P).validation.passed);
}

TEST_CASE("direct products") {
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
             {"flat_r2", "flat_r2"}, {"flat_r2", "heis_j"}, {"warped_r4", "conformal_sphere_chart"}}) {
        CAPTURE(a);
        CAPTURE(b);
        ProductAlgebroid P = direct_product(fixture(a), fixture(b));
        require_all(product_report(P).checks());
        CHECK(P.geometry.A->rank() == P.r1 + P.r2);
    }
    ProductAlgebroid P = direct_product(fixture("flat_r2"), fixture("flat_r2"));
    CHECK(P.geometry.A->chart().coords() == std::vector<std::string>{"x", "y", "x_2", "y_2"});
    CHECK(P.renamed.at("x") == "x_2");
}

TEST_CASE("product N is the pair of factor N's") {
    ProductAlgebroid P = direct_product(fixture("flat_r2"), fixture("heis_j"));
    NijenhuisResult N = nijenhuis(*P.geometry.A, *P.geometry.J);
    // heis_j sits in slots 3..6: N(e1,e2) = -e3 becomes N(e3,e4) = -e5.
    CHECK(N.frame(4, 2, 3) == Scalar(-1));
    CHECK(N.frame(0, 0, 1).is_zero());
}

TEST_CASE("projector restriction to the three-sphere") {
    const ProjectorRestriction& R = s3_projector();
    const Algebroid& A = *R.geometry.A;
    CHECK(A.rank() == 4);
    CHECK(A.dim() == 3);
    // Pi = I - p p^T has trace 3 and annihilates the normal p.
    Scalar tr;
    for (std::size_t k = 0; k < 4; ++k) tr += R.Pi(k, k);
    CHECK(tr == Scalar(3));
    CHECK(R.Pi * R.Pi == R.Pi);
    // The normal image e_4 of the north pole direction at u = 0 is p = (0,0,0,-1).
    std::map<std::string, Scalar> origin{{"u1", Scalar(0)}, {"u2", Scalar(0)}, {"u3", Scalar(0)}};
    CHECK(substitute(R.Pi(3, 3), origin) == Scalar(0));
    CHECK(substitute(R.Pi(0, 0), origin) == Scalar(1));

    ProjectorReport rep = projector_report(R);
    require_all(rep.checks());
    CHECK(rep.flatness.numeric);
    // Pi J != J Pi on S^3 although the restricted J is integrable.
    CHECK_FALSE(rep.commutes.passed);
}

TEST_CASE("projector restriction rejects a non-idempotent Pi") {
    const ProjectorRestriction& R = s3_projector();
    Matrix bad = R.Pi.scaled(Scalar(2));
    CHECK_THROWS_AS(projector_restriction("bad", R.geometry.A->chart_ptr(), bad, R.ambient_anchor), PreconditionError);
}
