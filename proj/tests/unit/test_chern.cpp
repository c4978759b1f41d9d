#include "alg/chern.hpp"
#include "doctest.h"

using namespace alg;

TEST_CASE("form matrices: product and trace") {
    Geometry G = fixture("flat_r4");
    const AlgebroidPtr& A = G.A;
    // tr(a a) vanishes for any matrix of 1-forms; with b = diag(e3, e1), tr(a b) = e1^e3 - e1^e4.
    FormMatrix a(2, std::vector<EForm>(2, EForm(A, 1)));
    a[0][0] = EForm::coframe(A, 0);
    a[0][1] = EForm::coframe(A, 1);
    a[1][0] = EForm::coframe(A, 2);
    a[1][1] = EForm::coframe(A, 3);
    CHECK(form_trace(form_matmul(a, a)).is_zero());
    FormMatrix b(2, std::vector<EForm>(2, EForm(A, 1)));
    b[0][0] = EForm::coframe(A, 2);
    b[1][1] = EForm::coframe(A, 0);
    EForm t = form_trace(form_matmul(a, b));
    EForm expected(A, 2);
    expected.set({0, 2}, Scalar(1));
    expected.set({0, 3}, Scalar(-1));
    CHECK(t == expected);
}

TEST_CASE("Chern identity with factor 1/2 for k = 1, 2") {
    for (const auto& name : {"flat_r2", "flat_r4", "heis_j", "warped_r4", "conformal_sphere_chart"}) {
        CAPTURE(name);
        ChernReport r = chern_report(fixture(name), {1, 2});
        for (const Check& c : r.checks()) {
            CAPTURE(c.name);
            CAPTURE(c.witness);
            CHECK(c.passed);
        }
        REQUIRE(r.orders.size() == 2);
        CHECK(*r.orders[0].iphi_form == *r.orders[0].block_form);
    }
}

TEST_CASE("connection choice") {
    CHECK(chern_report(fixture("conformal_sphere_chart"), {1}).connection == "levi-civita");
    CHECK(chern_report(fixture("warped_r4"), {1}).connection == "metric product");
    CHECK(chern_report(fixture("heis_j"), {1}).connection == "metric product");
}

TEST_CASE("sphere chart: first Chern form and factor") {
    ChernReport r = chern_report(fixture("conformal_sphere_chart"), {1});
    const ChernOrder& o = r.orders.at(0);
    CHECK(o.factor == "1/2");
    // trace(i Phi) = K times the area form: 4/(1 + x^2 + y^2)^2 e^1^e^2 with K = 1.
    EForm expected(fixture("conformal_sphere_chart").A, 2);
    const Scalar q = Scalar(1) + Scalar::coordinate("x").pow(2) + Scalar::coordinate("y").pow(2);
    expected.set({0, 1}, Scalar(4) / q.pow(2));
    CHECK(o.iphi_form->components() == expected.components());
}

TEST_CASE("flat fixtures give zero Chern forms") {
    for (const auto& name : {"flat_r2", "flat_r4"}) {
        ChernReport r = chern_report(fixture(name), {1, 2});
        for (const ChernOrder& o : r.orders) {
            CHECK(o.iphi_form->is_zero());
            CHECK(o.block_form->is_zero());
            CHECK(o.factor == "none");
        }
    }
}

TEST_CASE("block curvature needs D J = 0 and an adapted frame") {
    Geometry G = fixture("warped_r4");
    ComplexFrame F(G.A, *G.J);
    Connection D = levi_civita(G.A, *G.g);
    CHECK_THROWS_AS(block_curvature(D, *G.J, F.adapted()), PreconditionError);
    Connection Dt = metric_product_connection(D, *G.J);
    CHECK_NOTHROW(block_curvature(Dt, *G.J, F.adapted()));
    CHECK_THROWS_AS(block_curvature(Dt, *G.J, Matrix::identity(4)), PreconditionError);
}

TEST_CASE("invalid orders and missing data") {
    CHECK_THROWS_AS(chern_report(fixture("flat_r2"), {0}), std::invalid_argument);
    Geometry G = fixture("flat_r2");
    G.g.reset();
    CHECK_THROWS_AS(chern_report(G, {1}), PreconditionError);
}
