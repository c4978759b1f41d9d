#include "alg/connections.hpp"
#include "alg/prodgeom.hpp"
#include "doctest.h"

using namespace alg;

namespace {

const std::vector<std::string> kHermitian = {"flat_r2", "heis_j", "warped_r4", "conformal_sphere_chart"};

const Check* find(const std::vector<Check>& checks, const std::string& prefix) {
    for (const Check& c : checks)
        if (c.name.rfind(prefix, 0) == 0) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("metric product connection is almost complex and metric") {
    for (const auto& name : kHermitian) {
        CAPTURE(name);
        Geometry G = fixture(name);
        Connection Dt = metric_product_connection(levi_civita(G.A, *G.g), *G.J);
        CHECK(almost_complex_connection_check(Dt, *G.J).passed);
        CHECK(metric_compat_check(Dt, *G.g).passed);
    }
    // It coincides with Levi-Civita when D J = 0.
    Geometry K = fixture("conformal_sphere_chart");
    Connection D = levi_civita(K.A, *K.g);
    CHECK(metric_product_connection(D, *K.J).gamma() == D.gamma());
}

TEST_CASE("product connection and second fundamental form checks") {
    for (const auto& name : kHermitian) {
        CAPTURE(name);
        ProdGeomReport r = prodgeom_report(fixture(name));
        for (const Check& c : r.connection.checks()) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
        const SecondFundamentalReport& s = r.second;
        for (const Check* c : {&s.two_forms, &s.gauss_weingarten, &s.local_B, &s.weingarten_forms, &s.local_W,
                               &s.duality_metric, &s.mean_zero, &s.trace_frames}) {
            CAPTURE(c->name);
            CHECK(c->passed);
        }
        CHECK(is_zero(s.H));
        CHECK(s.vanishes() == r.integrable);
    }
}

TEST_CASE("B vanishes exactly when N does") {
    CHECK_FALSE(prodgeom_report(fixture("heis_j")).second.vanishes());
    CHECK(prodgeom_report(fixture("warped_r4")).second.vanishes());
    CHECK(prodgeom_report(fixture("flat_r2")).second.vanishes());
}

TEST_CASE("duality as literally stated fails where W is nonzero") {
    // warped_r4 is integrable, so B = 0, but (D J) != 0 gives W != 0: h(W s1, s2) = h(s3, B) = 0 cannot hold.
    ProdGeomReport w = prodgeom_report(fixture("warped_r4"));
    CHECK(w.second.vanishes());
    CHECK_FALSE(w.second.W.is_zero());
    CHECK_FALSE(w.second.duality.passed);
    CHECK(w.second.duality_metric.passed);
    // On a Kahler fixture both sides vanish.
    ProdGeomReport k = prodgeom_report(fixture("conformal_sphere_chart"));
    CHECK(k.second.W.is_zero());
    CHECK(k.second.duality.passed);
}

TEST_CASE("identity suite on Heisenberg: normalization constants") {
    ProdGeomReport r = prodgeom_report(fixture("heis_j"));
    const IdentitySuite& id = r.identities;
    for (const Check& c : id.checks()) {
        CAPTURE(c.name);
        CAPTURE(c.witness);
        CHECK(c.passed);
    }
    CHECK(id.nijenhuis_form_constant == "-1/16");
    CHECK(id.dphi_form_constant == "1/8");
    CHECK(id.nijenhuis_alt_constant == "-8");
}

TEST_CASE("identity suite on integrable fixtures: both sides vanish") {
    for (const auto& name : {"flat_r2", "warped_r4"}) {
        CAPTURE(name);
        ProdGeomReport r = prodgeom_report(fixture(name));
        for (const Check& c : r.identities.checks()) CHECK(c.passed);
        CHECK(r.identities.nijenhuis_alt_constant == "none");
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    Geometry G = fixture("flat_r2");
    Matrix g = Matrix::identity(2);
    g(0, 0) = Scalar(2);
    G.g = g;
    CHECK_THROWS_AS(prodgeom_report(G), PreconditionError);
    Geometry noJ = fixture("flat_r2");
    noJ.J.reset();
    CHECK_THROWS_AS(prodgeom_report(noJ), PreconditionError);
    CHECK(find(prodgeom_report(fixture("flat_r2")).checks(), "H") != nullptr);
}
