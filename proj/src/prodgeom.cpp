#include "alg/prodgeom.hpp"

#include <cmath>
#include <complex>

namespace alg {

namespace {

std::string ix(std::initializer_list<std::size_t> ks) {
    std::string s = "(";
    for (std::size_t k : ks) s += (s.size() > 1 ? "," : "") + std::to_string(k + 1);
    return s + ")";
}

Section conj(const Section& s) {
    Section out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = conjugate(s[k]);
    return out;
}

/// D_s J for an arbitrary (complex) section s.
Matrix dj_along(const std::vector<Matrix>& DJ, const Section& s) {
    const std::size_t r = s.size();
    Matrix out(r, r);
    for (std::size_t a = 0; a < r; ++a)
        if (!s[a].is_zero()) out = out + DJ[a].scaled(s[a]);
    return out;
}

Scalar herm(const Matrix& g, const Section& x, const Section& y) { return pair(g, x, conj(y)); }

void expect_sections(CheckBuilder& cb, const Section& a, const Section& b, const std::string& where) {
    for (std::size_t k = 0; k < a.size(); ++k) cb.expect_equal(a[k], b[k], where + " component " + std::to_string(k + 1));
}

/// Finds c with lhs = c * rhs entrywise. Fails when no constant fits.
Check fit_constant(const std::string& name, const std::vector<Scalar>& lhs, const std::vector<Scalar>& rhs,
                   const std::vector<std::string>& where, const Scalar& expected, std::string& found,
                   const ZeroTestOptions& opt) {
    CheckBuilder cb(name, opt);
    std::optional<Scalar> c;
    for (std::size_t i = 0; i < rhs.size() && !c; ++i)
        if (!rhs[i].is_zero()) c = lhs[i] / rhs[i];
    if (!c) {
        found = "none";
        for (std::size_t i = 0; i < lhs.size(); ++i) cb.expect_zero(lhs[i], where[i] + " (right side zero)");
        cb.note("both sides vanish");
        return cb.result();
    }
    found = c->str();
    if (!c->is_constant()) {
        cb.fail("ratio is not constant: " + found);
        return cb.result();
    }
    for (std::size_t i = 0; i < lhs.size(); ++i) cb.expect_equal(lhs[i], *c * rhs[i], where[i]);
    cb.note("constant " + found + (*c == expected ? " (matches " : " (differs from ") + expected.str() + ")");
    return cb.result();
}

}  // namespace

Connection metric_product_connection(const Connection& D, const Matrix& J) {
    const std::size_t r = D.rank();
    auto DJ = covariant_J(D, J);
    const Scalar half = Scalar::rational(1, 2);
    Tensor3 G = D.gamma();
    for (std::size_t a = 0; a < r; ++a) {
        Matrix M = DJ[a] * J;
        for (std::size_t c = 0; c < r; ++c)
            for (std::size_t b = 0; b < r; ++b)
                if (!M(c, b).is_zero()) G(c, a, b) += half * M(c, b);
    }
    return Connection(D.algebroid(), std::move(G));
}

std::vector<Check> ProdGeomReport::checks() const {
    std::vector<Check> out = connection.checks();
    auto s = second.checks();
    auto i = identities.checks();
    out.insert(out.end(), s.begin(), s.end());
    out.insert(out.end(), i.begin(), i.end());
    return out;
}

ProdGeomReport prodgeom_report(const Geometry& G, const ZeroTestOptions& opt, int points) {
    if (!G.J || !G.g) throw PreconditionError("product geometry needs J and g");
    const Matrix& J = *G.J;
    const Matrix& g = *G.g;
    Check herm_check = hermitian_check(g, J, opt);
    if (!herm_check.passed) throw PreconditionError("metric is not Hermitian: " + herm_check.witness);
    const AlgebroidPtr& Ap = G.A;
    const Algebroid& A = *Ap;
    const std::size_t r = A.rank();
    ComplexFrame F(Ap, J);
    const std::size_t m = F.m();
    const Connection D = levi_civita(Ap, g);
    const Connection Dc = change_frame(D, F.P(), F.Pinv(), F.complex());
    const Algebroid& Ac = *F.complex();
    const auto DJ = covariant_J(D, J);
    const Matrix p10 = F.p10(), p01 = F.p01();
    const Scalar half = Scalar::rational(1, 2);
    auto col = [&](std::size_t mu) { return F.P().col(mu); };

    ProdGeomReport rep;
    NijenhuisResult N = nijenhuis(A, J, opt);
    rep.integrable = N.vanishes();

    // ---------------------------------------------------------------- product connection
    ProductConnectionReport& pc = rep.connection;
    pc.Dt = metric_product_connection(D, J);
    const Connection& Dt = *pc.Dt;
    {
        CheckBuilder cb("D~ projector form = D + 1/2 (DJ) J", opt);
        for (std::size_t mu = 0; mu < r; ++mu)
            for (std::size_t nu = 0; nu < r; ++nu) {
                Section s1 = col(mu), s2 = col(nu);
                Section proj = p01.apply(D.cov(s1, p01.apply(s2))) + p10.apply(D.cov(s1, p10.apply(s2)));
                Section corr = D.cov(s1, s2) + half * dj_along(DJ, s1).apply(J.apply(s2));
                expect_sections(cb, proj, corr, "f" + ix({mu, nu}));
                expect_sections(cb, proj, Dt.cov(s1, s2), "coefficients f" + ix({mu, nu}));
            }
        pc.two_forms = cb.result();
    }
    {
        CheckBuilder cb("D~ p10 = D~ p01 = D~ h = 0", opt);
        for (std::size_t a = 0; a < r; ++a) {
            Section ea = A.frame(a);
            for (std::size_t b = 0; b < r; ++b) {
                Section eb = A.frame(b);
                expect_sections(cb, Dt.cov(ea, p10.apply(eb)), p10.apply(Dt.cov(ea, eb)), "(D~_" + ix({a}) + " p10) e" + ix({b}));
                expect_sections(cb, Dt.cov(ea, p01.apply(eb)), p01.apply(Dt.cov(ea, eb)), "(D~_" + ix({a}) + " p01) e" + ix({b}));
            }
            for (std::size_t mu = 0; mu < r; ++mu)
                for (std::size_t nu = 0; nu < r; ++nu) {
                    Section x = col(mu), y = col(nu);
                    Scalar lhs = A.rho(a, herm(g, x, y));
                    Scalar rhs = herm(g, Dt.cov(ea, x), y) + herm(g, x, Dt.cov(ea, y));
                    cb.expect_equal(lhs, rhs, "(D~_" + ix({a}) + " h)" + ix({mu, nu}));
                }
        }
        pc.parallel = cb.result();
    }
    {
        CheckBuilder cb("torsion of D~: projector form = (DJ)J form = coefficients", opt);
        Tensor3 T = Dt.torsion();
        for (std::size_t mu = 0; mu < r; ++mu)
            for (std::size_t nu = mu + 1; nu < r; ++nu) {
                Section s1 = col(mu), s2 = col(nu);
                Section t4 = p01.apply(D.cov(s2, p10.apply(s1)) - D.cov(s1, p10.apply(s2))) +
                             p10.apply(D.cov(s2, p01.apply(s1)) - D.cov(s1, p01.apply(s2)));
                Section t5 = half * (dj_along(DJ, s1).apply(J.apply(s2)) - dj_along(DJ, s2).apply(J.apply(s1)));
                Section tc(r);
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < r; ++b)
                        if (!s1[a].is_zero() && !s2[b].is_zero())
                            for (std::size_t c = 0; c < r; ++c) tc[c] += s1[a] * s2[b] * T(c, a, b);
                expect_sections(cb, t4, t5, "f" + ix({mu, nu}) + " projector vs (DJ)J");
                expect_sections(cb, t5, tc, "f" + ix({mu, nu}) + " (DJ)J vs coefficients");
            }
        pc.torsion_forms = cb.result();
    }
    {
        CheckBuilder cb("torsion of D~ in the complex frame", opt);
        Tensor3 T = change_frame(Dt, F.P(), F.Pinv(), F.complex()).torsion();
        auto C = [&](std::size_t l, std::size_t a, std::size_t b) { return Ac.C(l, a, b); };
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t d = 0; d < m; ++d) {
                    const std::size_t ab = m + a, bb = m + b, db = m + d;
                    cb.expect_zero(T(d, a, b), "T(f_a,f_b)^d" + ix({a, b, d}));
                    cb.expect_equal(T(db, a, b), C(db, b, a), "T(f_a,f_b)^dbar" + ix({a, b, d}));
                    cb.expect_equal(T(d, a, bb), C(d, bb, a) - Dc.G(d, bb, a), "T(f_a,fbar_b)^d" + ix({a, b, d}));
                    cb.expect_equal(T(db, a, bb), Dc.G(db, a, bb) - C(db, a, bb), "T(f_a,fbar_b)^dbar" + ix({a, b, d}));
                    cb.expect_equal(T(db, ab, bb), conjugate(T(d, a, b)), "T(fbar_a,fbar_b)" + ix({a, b, d}));
                    cb.expect_equal(T(d, ab, bb), conjugate(T(db, a, b)), "T(fbar_a,fbar_b)" + ix({a, b, d}));
                    cb.expect_equal(T(d, ab, b), conjugate(T(db, a, bb)), "T(fbar_a,f_b)" + ix({a, b, d}));
                    cb.expect_equal(T(db, ab, b), conjugate(T(d, a, bb)), "T(fbar_a,f_b)" + ix({a, b, d}));
                }
        pc.local_torsion = cb.result();
    }

    // ---------------------------------------------------------------- second fundamental form
    SecondFundamentalReport& sf = rep.second;
    auto B_proj = [&](const Section& s1, const Section& s2) { return p10.apply(D.cov(p01.apply(s1), p01.apply(s2))); };
    auto B_dj = [&](const Section& s1, const Section& s2) {
        return Scalar::rational(-1, 2) * dj_along(DJ, p01.apply(s1)).apply(J.apply(p01.apply(s2)));
    };
    auto W_dj = [&](const Section& s2, const Section& s1) {
        return half * dj_along(DJ, p01.apply(s1)).apply(J.apply(p10.apply(s2)));
    };
    auto W_proj = [&](const Section& s2, const Section& s1) {
        return Scalar(-1) * p01.apply(D.cov(p01.apply(s1), p10.apply(s2)));
    };
    sf.B = Tensor3(r);
    sf.W = Tensor3(r);
    {
        CheckBuilder two("B: -1/2 (DJ) J form = p10 D p01 form", opt), gw("Gauss-Weingarten decompositions", opt),
            wf("W: 1/2 (DJ) J form = -p01 D p10 form", opt);
        for (std::size_t mu = 0; mu < r; ++mu)
            for (std::size_t nu = 0; nu < r; ++nu) {
                Section s1 = col(mu), s2 = col(nu);
                Section b = B_proj(s1, s2);
                expect_sections(two, b, B_dj(s1, s2), "f" + ix({mu, nu}));
                Section x = p01.apply(s1);
                Section lhs7 = D.cov(x, p01.apply(s2));
                Section rhs7 = Dt.cov(x, p01.apply(s2)) - half * dj_along(DJ, x).apply(J.apply(p01.apply(s2)));
                expect_sections(gw, lhs7, rhs7, "tangential f" + ix({mu, nu}));
                Section lhs8 = D.cov(x, p10.apply(s2));
                Section rhs8 = Dt.cov(x, p10.apply(s2)) - half * dj_along(DJ, x).apply(J.apply(p10.apply(s2)));
                expect_sections(gw, lhs8, rhs8, "normal f" + ix({mu, nu}));
                Section w = W_dj(s1, s2);  // W_{F_mu} F_nu
                expect_sections(wf, w, W_proj(s1, s2), "W_f" + ix({mu}) + " f" + ix({nu}));
                Section bc = F.from_real(b), wc = F.from_real(w);
                for (std::size_t l = 0; l < r; ++l) {
                    sf.B(l, mu, nu) = bc[l];
                    sf.W(l, mu, nu) = wc[l];
                }
            }
        sf.two_forms = two.result();
        sf.gauss_weingarten = gw.result();
        sf.weingarten_forms = wf.result();
    }
    {
        CheckBuilder lb("B(fbar_a,fbar_b) = Gamma^d_{abar bbar} f_d, other slots zero", opt);
        CheckBuilder lw("W_{f_b} fbar_a = -Gamma^{dbar}_{abar b} fbar_d, other slots zero", opt);
        for (std::size_t l = 0; l < r; ++l)
            for (std::size_t mu = 0; mu < r; ++mu)
                for (std::size_t nu = 0; nu < r; ++nu) {
                    const bool bb = mu >= m && nu >= m && l < m;
                    lb.expect_equal(sf.B(l, mu, nu), bb ? Dc.G(l, mu, nu) : Scalar(), "B" + ix({l, mu, nu}));
                    // W(l, nu, mu) = (W_{F_nu} F_mu)^l
                    const bool ww = nu < m && mu >= m && l >= m;
                    lw.expect_equal(sf.W(l, nu, mu), ww ? -Dc.G(l, mu, nu) : Scalar(), "W" + ix({l, nu, mu}));
                }
        sf.local_B = lb.result();
        sf.local_W = lw.result();
    }
    {
        CheckBuilder cb("h(W_{s3} s1, s2) = h(s3, B(s1,s2))", opt);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c) {
                    Section s1 = col(a), s2 = col(b), s3 = col(c);
                    cb.expect_equal(herm(g, W_dj(s3, s1), s2), herm(g, s3, B_dj(s1, s2)), ix({a, b, c}));
                }
        sf.duality = cb.result();
        CheckBuilder cm("h(W_{s3} s1, s2) = h(s3, p10 D_{p10 conj(s1)} p01 s2)", opt);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c) {
                    Section s1 = col(a), s2 = col(b), s3 = col(c);
                    Section rhs = p10.apply(D.cov(p10.apply(conj(s1)), p01.apply(s2)));
                    cm.expect_equal(herm(g, W_dj(s3, s1), s2), herm(g, s3, rhs), ix({a, b, c}));
                }
        sf.duality_metric = cm.result();
    }
    // Real-frame tensors B(e_k,e_l) and W_{e_s} e_k.
    std::vector<std::vector<Section>> Br(r, std::vector<Section>(r));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) Br[k][l] = B_proj(A.frame(k), A.frame(l));
    const Matrix gi = *inverse(g);
    sf.H = Section(r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l)
            if (!gi(k, l).is_zero()) sf.H = sf.H + gi(k, l) * Br[k][l];
    {
        CheckBuilder cb("mean curvature H = 0", opt);
        for (std::size_t c = 0; c < r; ++c) cb.expect_zero(sf.H[c], "H" + ix({c}));
        sf.mean_zero = cb.result();
    }
    EForm kform(Ap, 1);
    {
        CheckBuilder cb("k(s) = h(s, H)", opt);
        for (std::size_t s = 0; s < r; ++s) {
            Scalar v;
            for (std::size_t k = 0; k < r; ++k)
                for (std::size_t l = 0; l < r; ++l)
                    if (!gi(k, l).is_zero()) v += gi(k, l) * pair(g, W_dj(A.frame(s), A.frame(k)), A.frame(l));
            kform.set({s}, v);
            cb.expect_equal(v, herm(g, A.frame(s), sf.H), "k" + ix({s}));
        }
        sf.k_dual = cb.result();
        sf.k = kform;
    }
    {
        // Trace over a numerically orthonormal real frame at sample points.
        using cd = std::complex<double>;
        CheckBuilder cb("H by g-contraction = sum B(u_k,u_k) over an orthonormal frame (pointwise)", opt);
        int done = 0;
        double worst = 0;
        for (int attempt = 0; done < points && attempt < 10 * points; ++attempt) {
            std::vector<std::vector<double>> gn(r, std::vector<double>(r));
            std::vector<std::vector<std::vector<cd>>> Bn(r, std::vector<std::vector<cd>>(r, std::vector<cd>(r)));
            std::vector<cd> Hn(r);
            try {
                NumericPoint p = to_numeric(random_point(A.chart().coords(), opt.seed, 900 + attempt));
                for (std::size_t a = 0; a < r; ++a) {
                    Hn[a] = eval_numeric(sf.H[a], p);
                    for (std::size_t b = 0; b < r; ++b) {
                        gn[a][b] = eval_numeric(g(a, b), p).real();
                        for (std::size_t c = 0; c < r; ++c) Bn[c][a][b] = eval_numeric(Br[a][b][c], p);
                    }
                }
            } catch (const PoleError&) {
                continue;
            }
            auto ip = [&](const std::vector<double>& x, const std::vector<double>& y) {
                double s = 0;
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < r; ++b) s += x[a] * gn[a][b] * y[b];
                return s;
            };
            std::vector<std::vector<double>> U;
            for (std::size_t k = 0; k < r; ++k) {
                std::vector<double> v(r);
                v[k] = 1;
                for (const auto& u : U) {
                    double c = ip(v, u);
                    for (std::size_t a = 0; a < r; ++a) v[a] -= c * u[a];
                }
                double n = std::sqrt(ip(v, v));
                for (auto& x : v) x /= n;
                U.push_back(v);
            }
            for (std::size_t c = 0; c < r; ++c) {
                cd t = 0;
                for (const auto& u : U)
                    for (std::size_t a = 0; a < r; ++a)
                        for (std::size_t b = 0; b < r; ++b) t += u[a] * u[b] * Bn[c][a][b];
                worst = std::max(worst, std::abs(t - Hn[c]));
            }
            ++done;
        }
        if (worst > opt.tol) cb.fail("max difference " + num_str(worst));
        cb.numeric();
    cb.note("numeric at " + std::to_string(done) + " points, tolerance " + num_str(opt.tol));
        sf.trace_frames = cb.result();
    }

    // ---------------------------------------------------------------- identity suite
    IdentitySuite& is = rep.identities;
    auto e = [&](std::size_t a) { return A.frame(a); };
    auto re = [](const Section& s) {
        Section out(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) out[k] = real_part(s[k]);
        return out;
    };
    auto im = [](const Section& s) {
        Section out(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) out[k] = imag_part(s[k]);
        return out;
    };
    {
        CheckBuilder ir("Im B(s1,s2) = Re B(s1, J s2)", opt), ai("B(Js1,Js2) = -B(s1,s2)", opt);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
                expect_sections(ir, im(Br[a][b]), re(B_proj(e(a), J.col(b))), ix({a, b}));
                expect_sections(ai, B_proj(J.col(a), J.col(b)), Scalar(-1) * Br[a][b], ix({a, b}));
            }
        is.im_re = ir.result();
        is.anti_invariant = ai.result();
    }
    {
        // (D_s Phi)(x,y) = rho(s) Phi(x,y) - Phi(D_s x, y) - Phi(x, D_s y), Phi(x,y) = g(x, J y)
        auto Phi = [&](const Section& x, const Section& y) { return pair(g, x, J.apply(y)); };
        auto DPhi = [&](const Section& s, const Section& x, const Section& y) {
            return A.rho(s, Phi(x, y)) - Phi(D.cov(s, x), y) - Phi(x, D.cov(s, y));
        };
        auto Nap = [&](const Section& x, const Section& y) { return nijenhuis_apply(A, J, x, y); };
        std::vector<Scalar> lhs, rhs16, rhs17;
        std::vector<std::string> where;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c) {
                    Section s1 = e(a), s2 = e(b), s3 = e(c);
                    lhs.push_back(pair(g, re(Br[a][b]), s3));
                    rhs16.push_back(pair(g, Nap(s1, s2), s3) + pair(g, Nap(s2, J.apply(s3)), J.apply(s1)) -
                                    pair(g, Nap(J.apply(s3), s1), J.apply(s2)));
                    rhs17.push_back(DPhi(J.apply(s1), s2, s3) + DPhi(s1, J.apply(s2), s3));
                    where.push_back(ix({a, b, c}));
                }
        is.nijenhuis_form = fit_constant("g(Re B(s1,s2),s3) as a multiple of the Nijenhuis combination", lhs, rhs16,
                                         where, Scalar::rational(1, 16), is.nijenhuis_form_constant, opt);
        is.dphi_form = fit_constant("g(Re B(s1,s2),s3) as a multiple of the D Phi combination", lhs, rhs17, where,
                                    Scalar::rational(-1, 8), is.dphi_form_constant, opt);
    }
    {
        std::vector<Scalar> lhs, rhs;
        std::vector<std::string> where;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b) {
                Section alt = re(Br[a][b] - Br[b][a]);
                Section n = nijenhuis_apply(A, J, e(a), e(b));
                for (std::size_t c = 0; c < r; ++c) {
                    lhs.push_back(n[c]);
                    rhs.push_back(alt[c]);
                    where.push_back("N" + ix({a, b}) + " component " + std::to_string(c + 1));
                }
            }
        is.nijenhuis_alt = fit_constant("N as a multiple of Re(B(s1,s2) - B(s2,s1))", lhs, rhs, where, Scalar(16),
                                        is.nijenhuis_alt_constant, opt);
    }
    {
        CheckBuilder cb("g(p01 s1, p01 s2) = 0", opt);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a; b < r; ++b) cb.expect_zero(pair(g, p01.col(a), p01.col(b)), ix({a, b}));
        if (sf.vanishes() && !sf.mean_zero.passed) cb.fail("totally geodesic but H != 0");
        cb.note(sf.vanishes() ? "totally geodesic, umbilical and minimal" : "not totally geodesic, so not umbilical");
        is.umbilical = cb.result();
    }
    {
        CheckBuilder cb("B = 0 <=> N = 0", opt);
        if (sf.vanishes() != rep.integrable)
            cb.fail(std::string("B ") + (sf.vanishes() ? "= 0" : "!= 0") + " but N " + (rep.integrable ? "= 0" : "!= 0"));
        cb.note(std::string("B ") + (sf.vanishes() ? "vanishes" : "nonzero") + ", N " +
                (rep.integrable ? "vanishes" : "nonzero"));
        is.b_iff_n = cb.result();
    }
    {
        CheckBuilder cb("alt B on (0,1)-slots = 0 <=> E^{0,1} involutive", opt);
        bool alt_zero = true, closed = true;
        for (std::size_t a = m; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b)
                for (std::size_t l = 0; l < m; ++l) {
                    if (!zero_test(sf.B(l, a, b) - sf.B(l, b, a), opt).is_zero()) alt_zero = false;
                    if (!zero_test(Ac.C(l, a, b), opt).is_zero()) closed = false;
                }
        if (alt_zero != closed)
            cb.fail(std::string("alt B ") + (alt_zero ? "= 0" : "!= 0") + ", E^{0,1} " + (closed ? "closed" : "not closed"));
        is.alt_closure = cb.result();
    }
    return rep;
}

}  // namespace alg
