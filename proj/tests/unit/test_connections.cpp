#include <cmath>

#include "alg/connections.hpp"
#include "alg/expr.hpp"
#include "alg/fixtures.hpp"
#include "alg/jstruct.hpp"
#include "doctest.h"

using namespace alg;

namespace {

const std::vector<std::string> kMetric = {"flat_r2", "flat_r4", "heis_j", "warped_r4", "conformal_sphere_chart",
                                          "s3_projector"};

// Hand Koszul oracle: 2 g(D_a e_b, e_c) = rho_a g_bc + rho_b g_ac - rho_c g_ab + g([a,b],c) - g([a,c],b) - g([b,c],a).
Tensor3 koszul_oracle(const Algebroid& A, const Matrix& g) {
    const std::size_t r = A.rank();
    const Matrix ginv = *inverse(g);
    auto br = [&](std::size_t a, std::size_t b, std::size_t c) {
        Scalar s;
        for (std::size_t d = 0; d < r; ++d) s += A.C(d, a, b) * g(d, c);
        return s;
    };
    Tensor3 out(r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            std::vector<Scalar> lower(r);
            for (std::size_t c = 0; c < r; ++c)
                lower[c] = (A.rho(a, g(b, c)) + A.rho(b, g(a, c)) - A.rho(c, g(a, b)) + br(a, b, c) - br(a, c, b) -
                            br(b, c, a)) /
                           Scalar(2);
            for (std::size_t e = 0; e < r; ++e) {
                Scalar s;
                for (std::size_t c = 0; c < r; ++c) s += ginv(e, c) * lower[c];
                out(e, a, b) = s;
            }
        }
    return out;
}

}  // namespace

TEST_CASE("Levi-Civita matches the hand Koszul oracle and is certified") {
    for (const auto& name : kMetric) {
        CAPTURE(name);
        Geometry G = fixture(name);
        Connection D = levi_civita(G.A, *G.g);
        CHECK(D.gamma() == koszul_oracle(*G.A, *G.g));
        CHECK(torsion_free_check(D).passed);
        CHECK(metric_compat_check(D, *G.g).passed);
        CHECK(koszul_check(D, *G.g).passed);
    }
}

TEST_CASE("warped_r4: Gamma^1_31 = x3/(1 + x3^2)") {
    Geometry G = fixture("warped_r4");
    Connection D = levi_civita(G.A, *G.g);
    CHECK(D.G(0, 2, 0) == parse_scalar("x3/(1 + x3^2)", G.A->chart()));
    CHECK(D.G(2, 0, 0) == parse_scalar("-x3", G.A->chart()));
}

TEST_CASE("Heisenberg: Gamma^3_12 = 1/2") {
    Geometry G = fixture("heis_j");
    Connection D = levi_civita(G.A, *G.g);
    CHECK(D.G(2, 0, 1) == Scalar::rational(1, 2));
    CHECK(D.G(2, 1, 0) == Scalar::rational(-1, 2));
}

TEST_CASE("singular or asymmetric metrics are rejected") {
    Geometry G = fixture("flat_r2");
    CHECK_THROWS_AS(levi_civita(G.A, Matrix(2, 2)), PreconditionError);
    Matrix asym = Matrix::identity(2);
    asym(0, 1) = Scalar(1);
    CHECK_THROWS_AS(levi_civita(G.A, asym), PreconditionError);
    CHECK_FALSE(metric_check(asym).passed);
}

TEST_CASE("first Bianchi identity for the Levi-Civita connection") {
    for (const auto& name : {"flat_r4", "heis_j", "warped_r4", "s3_projector"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        CHECK(first_bianchi_check(levi_civita(G.A, *G.g)).passed);
    }
}

TEST_CASE("sphere chart: K = 1 at every point") {
    Geometry G = fixture("conformal_sphere_chart");
    Connection D = levi_civita(G.A, *G.g);
    Scalar K = holomorphic_sectional(D, *G.g, *G.J, G.A->frame(0));
    CHECK(K == Scalar(1));
    // Classical oracle: for g = lambda (dx^2 + dy^2), K = -(1/(2 lambda)) Laplacian(log lambda).
    // With lambda = 4/(1+r^2)^2, log lambda = log 4 - 2 log(1+r^2) and Laplacian = -8/(1+r^2)^2.
    for (double x : {-1.3, 0.2, 2.5})
        for (double y : {-0.7, 0.9}) {
            const double q = 1 + x * x + y * y;
            const double lambda = 4 / (q * q);
            const double lap = -8 / (q * q);
            CHECK(std::abs(-lap / (2 * lambda) - 1.0) < 1e-12);
            auto v = eval_numeric(K, {{"x", x}, {"y", y}});
            CHECK(std::abs(v - 1.0) < 1e-9);
        }
    CHECK(holomorphic_sectional(D, *G.g, *G.J, G.A->frame(1)) == Scalar(1));
}

TEST_CASE("flat fixtures have zero curvature") {
    for (const auto& name : {"flat_r2", "flat_r4"}) {
        Geometry G = fixture(name);
        CHECK(levi_civita(G.A, *G.g).curvature().is_zero());
    }
}

TEST_CASE("Kahler trichotomy") {
    Geometry flat = fixture("flat_r2");
    KahlerReport kf = kahler_report(flat.A, *flat.J, *flat.g);
    CHECK(kf.kahler());

    Geometry w = fixture("warped_r4");
    KahlerReport kw = kahler_report(w.A, *w.J, *w.g);
    CHECK(kw.hermitian.passed);
    CHECK(kw.integrable.passed);
    CHECK_FALSE(kw.closed.passed);
    CHECK_FALSE(kw.kahler());
    // Phi(s1,s2) = g(s1,J s2): Phi_12 = -f with f = 1 + x3^2, so d Phi = -f' e^1^e^2^e^3.
    EForm expected(w.A, 3);
    expected.set({0, 1, 2}, parse_scalar("-2*x3", w.A->chart()));
    CHECK(kw.dphi == expected);

    Geometry h = fixture("heis_j");
    KahlerReport kh = kahler_report(h.A, *h.J, *h.g);
    CHECK_FALSE(kh.integrable.passed);
    CHECK_FALSE(kh.kahler());
}

TEST_CASE("LC almost complex iff N = 0 and d Phi = 0, on every fixture") {
    for (const auto& name : kMetric) {
        CAPTURE(name);
        Geometry G = fixture(name);
        KahlerReport k = kahler_report(G.A, *G.J, *G.g);
        CHECK(k.equivalence.passed);
        CHECK(k.identity.passed);
        CHECK(k.lc_almost_complex.passed == (k.integrable.passed && k.closed.passed));
    }
}

TEST_CASE("fundamental form is antisymmetric and J-invariant") {
    for (const auto& name : {"flat_r4", "warped_r4", "heis_j"}) {
        Geometry G = fixture(name);
        CHECK(hermitian_check(*G.g, *G.J).passed);
        CHECK(fundamental_form_check(*G.g, *G.J).passed);
    }
}

TEST_CASE("complex-frame Levi-Civita coefficients match the transformed real ones") {
    for (const auto& name : {"flat_r2", "heis_j", "warped_r4", "conformal_sphere_chart"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        ComplexFrame F(G.A, *G.J);
        const bool kahler = almost_complex_connection_check(levi_civita(G.A, *G.g), *G.J).passed;
        ComplexLeviCivita cl = levi_civita_complex_frame(F, *G.g, kahler);
        for (const Check& c : cl.checks()) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
        CHECK(cl.formula.gamma() == cl.transformed.gamma());
    }
}

TEST_CASE("Kahler curvature displays in the complex frame") {
    for (const auto& name : {"flat_r2", "conformal_sphere_chart"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        ComplexFrame F(G.A, *G.J);
        ComplexLeviCivita cl = levi_civita_complex_frame(F, *G.g, true);
        KahlerCurvature kc = kahler_complex_curvature(F, cl.transformed);
        for (const Check& c : kc.checks()) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
    }
}

TEST_CASE("curvature is skew-Hermitian in a unitary frame") {
    for (const auto& name : {"conformal_sphere_chart", "warped_r4"}) {
        CAPTURE(name);
        Geometry G = fixture(name);
        ComplexFrame F(G.A, *G.J);
        Check c = curvature_skew_check(levi_civita(G.A, *G.g), *G.g, F);
        CHECK(c.passed);
        CHECK(c.numeric);
    }
}
