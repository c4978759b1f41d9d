#include "alg/connections.hpp"

#include <cmath>
#include <complex>

namespace alg {

namespace {

std::string ix(std::initializer_list<std::size_t> ks) {
    std::string s = "(";
    for (std::size_t k : ks) s += (s.size() > 1 ? "," : "") + std::to_string(k + 1);
    return s + ")";
}

std::string cx(std::size_t mu, std::size_t m) {
    return mu < m ? std::to_string(mu + 1) : std::to_string(mu - m + 1) + "b";
}

}  // namespace

Connection::Connection(AlgebroidPtr A, Tensor3 gamma) : A_(std::move(A)), gamma_(std::move(gamma)) {
    const std::size_t r = A_->rank();
    if (gamma_.dim(0) != r || gamma_.dim(1) != r || gamma_.dim(2) != r)
        throw std::invalid_argument("connection coefficients have the wrong shape");
}

Section Connection::cov(const Section& s1, const Section& s2) const {
    const std::size_t r = rank();
    Section out(r);
    VectorField X = A_->anchor_push(s1);
    for (std::size_t c = 0; c < r; ++c) out[c] = vf_apply(A_->chart(), X, s2[c]);
    for (std::size_t a = 0; a < r; ++a) {
        if (s1[a].is_zero()) continue;
        for (std::size_t b = 0; b < r; ++b) {
            if (s2[b].is_zero()) continue;
            Scalar f = s1[a] * s2[b];
            for (std::size_t c = 0; c < r; ++c)
                if (!gamma_(c, a, b).is_zero()) out[c] += f * gamma_(c, a, b);
        }
    }
    return out;
}

Tensor3 Connection::torsion() const {
    const std::size_t r = rank();
    Tensor3 T(r);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) T(c, a, b) = gamma_(c, a, b) - gamma_(c, b, a) - A_->C(c, a, b);
    return T;
}

const Tensor4& Connection::curvature() const {
    std::call_once(cache_->once, [this] {
        const std::size_t r = rank();
        auto R = std::make_unique<Tensor4>(r);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c)
                    for (std::size_t d = 0; d < r; ++d) {
                        Scalar v = A_->rho(a, gamma_(d, b, c)) - A_->rho(b, gamma_(d, a, c));
                        for (std::size_t e = 0; e < r; ++e) {
                            if (!gamma_(e, b, c).is_zero() && !gamma_(d, a, e).is_zero()) v += gamma_(e, b, c) * gamma_(d, a, e);
                            if (!gamma_(e, a, c).is_zero() && !gamma_(d, b, e).is_zero()) v -= gamma_(e, a, c) * gamma_(d, b, e);
                            if (!A_->C(e, a, b).is_zero() && !gamma_(d, e, c).is_zero()) v -= A_->C(e, a, b) * gamma_(d, e, c);
                        }
                        (*R)(d, a, b, c) = v;
                        (*R)(d, b, a, c) = -v;
                    }
        cache_->R = std::move(R);
    });
    return *cache_->R;
}

Section Connection::curvature_apply(const Section& s1, const Section& s2, const Section& s3) const {
    const Tensor4& R = curvature();
    const std::size_t r = rank();
    Section out(r);
    for (std::size_t a = 0; a < r; ++a) {
        if (s1[a].is_zero()) continue;
        for (std::size_t b = 0; b < r; ++b) {
            if (s2[b].is_zero()) continue;
            Scalar f = s1[a] * s2[b];
            for (std::size_t c = 0; c < r; ++c) {
                if (s3[c].is_zero()) continue;
                Scalar fc = f * s3[c];
                for (std::size_t d = 0; d < r; ++d)
                    if (!R(d, a, b, c).is_zero()) out[d] += fc * R(d, a, b, c);
            }
        }
    }
    return out;
}

Connection change_frame(const Connection& conn, const Matrix& P, const Matrix& Pinv, AlgebroidPtr target) {
    const std::size_t r = conn.rank();
    Tensor3 G(r);
    for (std::size_t mu = 0; mu < r; ++mu)
        for (std::size_t nu = 0; nu < r; ++nu) {
            Section v = Pinv.apply(conn.cov(P.col(mu), P.col(nu)));
            for (std::size_t l = 0; l < r; ++l) G(l, mu, nu) = v[l];
        }
    return Connection(std::move(target), std::move(G));
}

Scalar pair(const Matrix& g, const Section& s1, const Section& s2) {
    Scalar out;
    for (std::size_t a = 0; a < s1.size(); ++a) {
        if (s1[a].is_zero()) continue;
        for (std::size_t b = 0; b < s2.size(); ++b)
            if (!s2[b].is_zero() && !g(a, b).is_zero()) out += s1[a] * g(a, b) * s2[b];
    }
    return out;
}

Check metric_check(const Matrix& g, const ZeroTestOptions& opt) {
    CheckBuilder cb("metric symmetric and nondegenerate", opt);
    for (std::size_t a = 0; a < g.rows(); ++a)
        for (std::size_t b = a + 1; b < g.cols(); ++b) cb.expect_equal(g(a, b), g(b, a), "g" + ix({a, b}));
    if (determinant(g).is_zero()) cb.fail("det g is structurally zero");
    return cb.result();
}

Connection levi_civita(AlgebroidPtr A, const Matrix& g) {
    Check mc = metric_check(g);
    if (!mc.passed) throw PreconditionError("metric: " + mc.witness);
    auto gi = inverse(g);
    if (!gi) throw PreconditionError("metric is singular");
    const std::size_t r = A->rank();
    const Scalar half = Scalar::rational(1, 2);
    Tensor3 G(r);
    for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) {
            std::vector<Scalar> K(r);
            for (std::size_t d = 0; d < r; ++d) {
                Scalar v = A->rho(b, g(c, d)) + A->rho(c, g(b, d)) - A->rho(d, g(b, c));
                for (std::size_t e = 0; e < r; ++e) {
                    if (!A->C(e, d, c).is_zero()) v += A->C(e, d, c) * g(e, b);
                    if (!A->C(e, d, b).is_zero()) v += A->C(e, d, b) * g(e, c);
                    if (!A->C(e, b, c).is_zero()) v += A->C(e, b, c) * g(e, d);
                }
                K[d] = v;
            }
            for (std::size_t a = 0; a < r; ++a) {
                Scalar v;
                for (std::size_t d = 0; d < r; ++d)
                    if (!(*gi)(a, d).is_zero() && !K[d].is_zero()) v += (*gi)(a, d) * K[d];
                G(a, b, c) = half * v;
            }
        }
    return Connection(std::move(A), std::move(G));
}

Check koszul_check(const Connection& D, const Matrix& g, const ZeroTestOptions& opt) {
    CheckBuilder cb("Koszul identity", opt);
    const Algebroid& A = *D.algebroid();
    const std::size_t r = A.rank();
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c) {
                Section s1 = A.frame(a), s2 = A.frame(b), s3 = A.frame(c);
                Scalar lhs = Scalar(2) * pair(g, D.cov(s1, s2), s3);
                Scalar rhs = A.rho(s1, pair(g, s2, s3)) + A.rho(s2, pair(g, s1, s3)) - A.rho(s3, pair(g, s1, s2)) +
                             pair(g, A.bracket(s3, s1), s2) + pair(g, A.bracket(s3, s2), s1) +
                             pair(g, A.bracket(s1, s2), s3);
                cb.expect_equal(lhs, rhs, ix({a, b, c}));
            }
    return cb.result();
}

Check torsion_free_check(const Connection& D, const ZeroTestOptions& opt) {
    CheckBuilder cb("torsion free", opt);
    Tensor3 T = D.torsion();
    const std::size_t r = D.rank();
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b) cb.expect_zero(T(c, a, b), "T^" + ix({c}) + "_" + ix({a, b}));
    return cb.result();
}

Check metric_compat_check(const Connection& D, const Matrix& g, const ZeroTestOptions& opt) {
    CheckBuilder cb("metric compatible", opt);
    const Algebroid& A = *D.algebroid();
    const std::size_t r = A.rank();
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = b; c < r; ++c) {
                Scalar v = A.rho(a, g(b, c));
                for (std::size_t e = 0; e < r; ++e) {
                    if (!D.G(e, a, b).is_zero()) v -= D.G(e, a, b) * g(e, c);
                    if (!D.G(e, a, c).is_zero()) v -= D.G(e, a, c) * g(b, e);
                }
                cb.expect_zero(v, "(D_" + std::to_string(a + 1) + " g)" + ix({b, c}));
            }
    return cb.result();
}

std::vector<Matrix> covariant_J(const Connection& D, const Matrix& J) {
    const Algebroid& A = *D.algebroid();
    const std::size_t r = A.rank();
    std::vector<Matrix> out;
    for (std::size_t a = 0; a < r; ++a) {
        Matrix M(r, r);
        for (std::size_t b = 0; b < r; ++b) {
            Section e = A.frame(b), ea = A.frame(a);
            Section v = D.cov(ea, J.apply(e)) - J.apply(D.cov(ea, e));
            for (std::size_t c = 0; c < r; ++c) M(c, b) = v[c];
        }
        out.push_back(std::move(M));
    }
    return out;
}

Check almost_complex_connection_check(const Connection& D, const Matrix& J, const ZeroTestOptions& opt) {
    CheckBuilder cb("almost complex connection (DJ = 0)", opt);
    auto DJ = covariant_J(D, J);
    for (std::size_t a = 0; a < DJ.size(); ++a)
        for (std::size_t c = 0; c < DJ[a].rows(); ++c)
            for (std::size_t b = 0; b < DJ[a].cols(); ++b)
                cb.expect_zero(DJ[a](c, b), "(D_" + std::to_string(a + 1) + " J)^" + std::to_string(c + 1) + "_" +
                                                std::to_string(b + 1));
    return cb.result();
}

Check hermitian_check(const Matrix& g, const Matrix& J, const ZeroTestOptions& opt) {
    CheckBuilder cb("hermitian (g(Js,Jt) = g(s,t))", opt);
    Matrix res = J.transpose() * g * J - g;
    for (std::size_t a = 0; a < g.rows(); ++a)
        for (std::size_t b = a; b < g.cols(); ++b) cb.expect_zero(res(a, b), ix({a, b}));
    return cb.result();
}

EForm fundamental_form(AlgebroidPtr A, const Matrix& g, const Matrix& J) {
    Matrix gJ = g * J;
    EForm phi(A, 2);
    for (std::size_t a = 0; a < gJ.rows(); ++a)
        for (std::size_t b = a + 1; b < gJ.cols(); ++b) phi.set({a, b}, gJ(a, b));
    return phi;
}

Check fundamental_form_check(const Matrix& g, const Matrix& J, const ZeroTestOptions& opt) {
    CheckBuilder cb("Phi antisymmetric and J-invariant", opt);
    Matrix gJ = g * J;
    Matrix inv = J.transpose() * gJ * J - gJ;
    for (std::size_t a = 0; a < gJ.rows(); ++a)
        for (std::size_t b = a; b < gJ.cols(); ++b) {
            cb.expect_zero(gJ(a, b) + gJ(b, a), "Phi" + ix({a, b}) + " + Phi" + ix({b, a}));
            cb.expect_zero(inv(a, b), "Phi(J,J) - Phi at " + ix({a, b}));
        }
    return cb.result();
}

KahlerReport kahler_report(AlgebroidPtr A, const Matrix& J, const Matrix& g, const ZeroTestOptions& opt) {
    KahlerReport rep{{}, {}, {}, {}, {}, {}, EForm(A, 2), EForm(A, 3)};
    rep.hermitian = hermitian_check(g, J, opt);
    NijenhuisResult N = nijenhuis(*A, J, opt);
    const std::size_t r = A->rank();
    CheckBuilder nb("N = 0", opt);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c) nb.expect_zero(N.frame(c, a, b), "N^" + ix({c}) + "_" + ix({a, b}));
    rep.integrable = nb.result();

    rep.phi = fundamental_form(A, g, J);
    rep.dphi = d(rep.phi);
    CheckBuilder cb("d Phi = 0", opt);
    for (const auto& [K, v] : rep.dphi.components()) cb.expect_zero(v, "dPhi" + ix({K[0], K[1], K[2]}));
    rep.closed = cb.result();

    Connection D = levi_civita(A, g);
    rep.lc_almost_complex = almost_complex_connection_check(D, J, opt);

    Check eq;
    eq.name = "DJ = 0 <=> (N = 0 and d Phi = 0)";
    eq.passed = rep.lc_almost_complex.passed == (rep.integrable.passed && rep.closed.passed);
    if (!eq.passed) eq.witness = "biconditional violated";
    rep.equivalence = eq;

    CheckBuilder id("2g((D_s1 J)s2,s3) identity", opt);
    auto DJ = covariant_J(D, J);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = b + 1; c < r; ++c) {
                Section s1 = A->frame(a), s2 = A->frame(b), s3 = A->frame(c);
                Scalar lhs = Scalar(2) * pair(g, DJ[a].col(b), s3);
                Scalar rhs = evaluate(rep.dphi, {s1, J.apply(s2), J.apply(s3)}) - evaluate(rep.dphi, {s1, s2, s3}) +
                             pair(g, nijenhuis_apply(*A, J, s2, s3), J.apply(s1));
                id.expect_equal(lhs, rhs, ix({a, b, c}));
            }
    rep.identity = id.result();
    return rep;
}

Matrix complex_frame_metric(const ComplexFrame& F, const Matrix& g) { return F.P().transpose() * g * F.P(); }

ComplexLeviCivita levi_civita_complex_frame(const ComplexFrame& F, const Matrix& g, bool kahler,
                                            const ZeroTestOptions& opt) {
    Check herm = hermitian_check(g, F.J(), opt);
    if (!herm.passed) throw PreconditionError("metric is not hermitian: " + herm.witness);
    const Algebroid& C = *F.complex();
    const std::size_t m = F.m(), r = 2 * m;
    Matrix GF = complex_frame_metric(F, g);

    CheckBuilder hf("hermitian metric in complex frame", opt);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            hf.expect_zero(GF(a, b), "g(f" + std::to_string(a + 1) + ",f" + std::to_string(b + 1) + ")");
            hf.expect_zero(GF(m + a, m + b), "g(fb" + std::to_string(a + 1) + ",fb" + std::to_string(b + 1) + ")");
            hf.expect_equal(GF(a, m + b), conjugate(GF(b, m + a)), "g_{a bbar} symmetry " + ix({a, b}));
        }

    // H(a,c) = g_{a cbar}; Hinv(c,d) = g^{cbar d}.
    Matrix H(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c) H(a, c) = GF(a, m + c);
    auto Hi = inverse(H);
    if (!Hi) throw PreconditionError("hermitian matrix g_{a bbar} is singular");
    const Matrix& Hinv = *Hi;
    auto gm = [&](std::size_t mu, std::size_t nu) -> const Scalar& { return GF(mu, nu); };
    auto Cf = [&](std::size_t l, std::size_t mu, std::size_t nu) -> const Scalar& { return C.C(l, mu, nu); };
    auto rho = [&](std::size_t mu, const Scalar& f) { return C.rho(mu, f); };
    auto B = [&](std::size_t k) { return m + k; };
    const Scalar half = Scalar::rational(1, 2);

    Tensor3 G(r);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t d = 0; d < m; ++d) {
                Scalar gab, gabb, gbab, gbar;
                for (std::size_t c = 0; c < m; ++c) {
                    Scalar t1 = rho(a, gm(b, B(c))) + rho(b, gm(a, B(c)));
                    Scalar t2 = rho(B(b), gm(a, B(c))) - rho(B(c), gm(a, B(b)));
                    Scalar t3 = rho(B(a), gm(b, B(c))) - rho(B(c), gm(b, B(a)));
                    Scalar t4;
                    for (std::size_t e = 0; e < m; ++e) {
                        t1 += Cf(e, a, b) * gm(e, B(c)) - Cf(B(e), b, B(c)) * gm(a, B(e)) +
                              Cf(B(e), B(c), a) * gm(b, B(e));
                        t2 += Cf(e, a, B(b)) * gm(e, B(c)) - Cf(B(e), B(b), B(c)) * gm(a, B(e)) +
                              Cf(e, B(c), a) * gm(e, B(b));
                        t3 += Cf(e, B(a), b) * gm(e, B(c)) - Cf(e, b, B(c)) * gm(e, B(a)) +
                              Cf(B(e), B(c), B(a)) * gm(b, B(e));
                        t4 += Cf(B(e), a, b) * gm(c, B(e)) - Cf(B(e), b, c) * gm(a, B(e)) +
                              Cf(B(e), c, a) * gm(b, B(e));
                    }
                    gab += Hinv(c, d) * t1;
                    gabb += Hinv(c, d) * t2;
                    gbab += Hinv(c, d) * t3;
                    gbar += Hinv(d, c) * t4;
                }
                G(d, a, b) = half * gab;
                G(d, a, B(b)) = half * gabb;
                G(d, B(a), b) = half * gbab;
                G(B(d), a, b) = half * gbar;
            }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t d = 0; d < m; ++d) {
                G(B(d), B(a), B(b)) = conjugate(G(d, a, b));
                G(B(d), B(a), b) = conjugate(G(d, a, B(b)));
                G(B(d), a, B(b)) = conjugate(G(d, B(a), b));
                G(d, B(a), B(b)) = conjugate(G(B(d), a, b));
            }

    Connection real = levi_civita(F.real(), g);
    ComplexLeviCivita out{Connection(F.complex(), G), change_frame(real, F.P(), F.Pinv(), F.complex()), GF,
                          hf.result(), {}, {}};

    CheckBuilder ag("complex-frame coefficients = transformed real coefficients", opt);
    for (std::size_t l = 0; l < r; ++l)
        for (std::size_t mu = 0; mu < r; ++mu)
            for (std::size_t nu = 0; nu < r; ++nu)
                ag.expect_equal(out.formula.G(l, mu, nu), out.transformed.G(l, mu, nu),
                                "Gamma^" + cx(l, m) + "_" + cx(mu, m) + cx(nu, m));
    out.agreement = ag.result();

    CheckBuilder kr("Kahler reduced coefficients", opt);
    if (kahler) {
        const Connection& T = out.transformed;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t d = 0; d < m; ++d) {
                    std::string w = ix({d, a, b});
                    kr.expect_zero(T.G(B(d), a, b), "Gamma^{dbar}_ab " + w);
                    kr.expect_zero(T.G(d, a, B(b)), "Gamma^d_{a bbar} " + w);
                    kr.expect_equal(T.G(d, B(a), b), Cf(d, B(a), b), "Gamma^d_{abar b} - C " + w);
                    Scalar v;
                    for (std::size_t c = 0; c < m; ++c) {
                        Scalar t = rho(a, gm(b, B(c)));
                        for (std::size_t e = 0; e < m; ++e) t += Cf(B(e), B(c), a) * gm(b, B(e));
                        v += Hinv(c, d) * t;
                    }
                    kr.expect_equal(T.G(d, a, b), v, "Gamma^d_ab reduced " + w);
                }
    } else {
        kr.note("not requested");
    }
    out.kahler_reduced = kr.result();
    return out;
}

KahlerCurvature kahler_complex_curvature(const ComplexFrame& F, const Connection& D, const ZeroTestOptions& opt) {
    const Algebroid& C = *F.complex();
    const std::size_t m = F.m(), r = 2 * m;
    auto B = [&](std::size_t k) { return m + k; };
    KahlerCurvature out{D.curvature(), {}, {}, {}, {}};
    const Tensor4& R = out.R;

    CheckBuilder uf("R^d_{ab,c} display", opt), mf("R^{dbar}_{a bbar,cbar} display", opt);
    CheckBuilder cj("curvature conjugation relations", opt), oz("components outside the listed families vanish", opt);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t d = 0; d < m; ++d) {
                    std::string w = ix({d, a, b, c});
                    Scalar u = C.rho(a, D.G(d, b, c)) - C.rho(b, D.G(d, a, c));
                    for (std::size_t e = 0; e < m; ++e)
                        u += D.G(e, b, c) * D.G(d, a, e) - D.G(e, a, c) * D.G(d, b, e) - C.C(e, a, b) * D.G(d, e, c);
                    uf.expect_equal(R(d, a, b, c), u, w);
                    Scalar x = C.rho(a, D.G(B(d), B(b), B(c)));
                    for (std::size_t e = 0; e < m; ++e) x -= C.C(B(e), a, B(b)) * D.G(B(d), B(e), B(c));
                    mf.expect_equal(R(B(d), a, B(b), B(c)), x, w);
                    cj.expect_equal(R(B(d), B(a), B(b), B(c)), conjugate(R(d, a, b, c)), "conj " + w);
                    cj.expect_equal(R(d, a, B(b), c), -conjugate(R(B(d), b, B(a), B(c))), "mixed " + w);
                    oz.expect_zero(R(d, B(a), B(b), c), "R^d_{abar bbar,c} " + w);
                    oz.expect_zero(R(B(d), a, b, B(c)), "R^{dbar}_{ab,cbar} " + w);
                }
    for (std::size_t d = 0; d < r; ++d)
        for (std::size_t c = 0; c < r; ++c) {
            if ((d < m) == (c < m)) continue;
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = a + 1; b < r; ++b)
                    oz.expect_zero(R(d, a, b, c), "type-changing R^" + cx(d, m) + "_{" + cx(a, m) + cx(b, m) + "," + cx(c, m) + "}");
        }
    out.unbarred_formula = uf.result();
    out.mixed_formula = mf.result();
    out.conjugation = cj.result();
    out.outside_zero = oz.result();
    return out;
}

Scalar riemann4(const Connection& D, const Matrix& g, const Section& s1, const Section& s2, const Section& s3,
                const Section& s4) {
    return pair(g, D.curvature_apply(s3, s4, s2), s1);
}

Scalar holomorphic_sectional(const Connection& D, const Matrix& g, const Matrix& J, const Section& s) {
    Section Js = J.apply(s);
    Scalar den = pair(g, s, s) * pair(g, Js, Js) - pair(g, s, Js).pow(2);
    if (den.is_zero()) throw PreconditionError("degenerate plane");
    return riemann4(D, g, s, Js, s, Js) / den;
}

Check curvature_skew_check(const Connection& D, const Matrix& g, const ComplexFrame& F, const ZeroTestOptions& opt,
                           int points) {
    using cd = std::complex<double>;
    CheckBuilder cb("curvature skew-hermitian in a unitary frame (pointwise)", opt);
    const Algebroid& A = *D.algebroid();
    const std::size_t r = A.rank();
    const Tensor4& R = D.curvature();
    int done = 0;
    for (int attempt = 0; done < points && attempt < 10 * points; ++attempt) {
        NumericPoint p;
        std::vector<std::vector<cd>> gn(r, std::vector<cd>(r)), P(r, std::vector<cd>(r));
        std::vector<std::vector<std::vector<std::vector<cd>>>> Rn;
        try {
            p = to_numeric(random_point(A.chart().coords(), opt.seed, 500 + attempt));
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) {
                    gn[a][b] = eval_numeric(g(a, b), p);
                    P[a][b] = eval_numeric(F.P()(a, b), p);
                }
            Rn.assign(r, std::vector<std::vector<std::vector<cd>>>(r, std::vector<std::vector<cd>>(r, std::vector<cd>(r))));
            for (std::size_t d = 0; d < r; ++d)
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < r; ++b)
                        for (std::size_t c = 0; c < r; ++c) Rn[d][a][b][c] = eval_numeric(R(d, a, b, c), p);
        } catch (const PoleError&) {
            continue;
        }
        auto h = [&](const std::vector<cd>& x, const std::vector<cd>& y) {
            cd s = 0;
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) s += x[a] * gn[a][b] * std::conj(y[b]);
            return s;
        };
        std::vector<std::vector<cd>> U;
        for (std::size_t k = 0; k < r; ++k) {
            std::vector<cd> v(r);
            for (std::size_t a = 0; a < r; ++a) v[a] = P[a][k];
            for (const auto& u : U) {
                cd c = h(v, u);
                for (std::size_t a = 0; a < r; ++a) v[a] -= c * u[a];
            }
            double n = std::sqrt(std::abs(h(v, v)));
            for (auto& x : v) x /= n;
            U.push_back(v);
        }
        double worst = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                // M(l,k) = h(R(e_i,e_j) u_k, u_l)
                std::vector<std::vector<cd>> M(r, std::vector<cd>(r));
                for (std::size_t k = 0; k < r; ++k) {
                    std::vector<cd> Ku(r);
                    for (std::size_t d = 0; d < r; ++d)
                        for (std::size_t c = 0; c < r; ++c) Ku[d] += Rn[d][i][j][c] * U[k][c];
                    for (std::size_t l = 0; l < r; ++l) M[l][k] = h(Ku, U[l]);
                }
                for (std::size_t k = 0; k < r; ++k)
                    for (std::size_t l = 0; l < r; ++l) worst = std::max(worst, std::abs(M[l][k] + std::conj(M[k][l])));
            }
        if (worst > opt.tol) cb.fail("max |R + R^*| = " + num_str(worst) + " at sample " + std::to_string(done));
        ++done;
    }
    cb.numeric();
    cb.note("numeric at " + std::to_string(done) + " points, tolerance " + num_str(opt.tol));
    return cb.result();
}

Check first_bianchi_check(const Connection& D, const ZeroTestOptions& opt) {
    CheckBuilder cb("first Bianchi identity", opt);
    const Tensor4& R = D.curvature();
    const std::size_t r = D.rank();
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            for (std::size_t c = b + 1; c < r; ++c)
                for (std::size_t e = 0; e < r; ++e)
                    cb.expect_zero(R(e, a, b, c) + R(e, b, c, a) + R(e, c, a, b),
                                   "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                                       std::to_string(c + 1) + ") component " + std::to_string(e + 1));
    return cb.result();
}

}  // namespace alg
