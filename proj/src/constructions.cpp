#include "alg/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace alg {

namespace {

Check validation_check(const std::string& name, const Algebroid& A, const ZeroTestOptions& opt) {
    Check out;
    out.name = name;
    for (const Check& c : A.validate(opt).checks())
        if (!c.passed) {
            out.passed = false;
            out.witness = c.name + ": " + c.witness;
            break;
        }
    return out;
}

void expect_sections(CheckBuilder& cb, const Section& a, const Section& b, const std::string& where) {
    for (std::size_t k = 0; k < a.size(); ++k) cb.expect_equal(a[k], b[k], where + " component " + std::to_string(k + 1));
}

Check skipped(const std::string& name, const std::string& why) {
    Check c;
    c.name = name;
    c.note = why;
    c.skipped = true;
    return c;
}

Section inject(const Section& s, std::size_t offset, std::size_t total) {
    Section out(total);
    for (std::size_t k = 0; k < s.size(); ++k) out[offset + k] = s[k];
    return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

Matrix substituted(const Matrix& m, const std::map<std::string, Scalar>& subs) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = substitute(m(i, j), subs);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- prolongation

Prolongation::Prolongation(const Geometry& base) : base_(base), r_(base.A->rank()) {
    const Algebroid& A = *base_.A;
    const auto& coords = A.chart().coords();
    auto clashes = [&](const std::string& prefix) {
        for (std::size_t a = 0; a < r_; ++a)
            if (std::find(coords.begin(), coords.end(), prefix + std::to_string(a + 1)) != coords.end()) return true;
        return false;
    };
    std::string prefix = "y";
    for (int level = 2; clashes(prefix); ++level) prefix = "y" + std::to_string(level) + "_";
    for (std::size_t a = 0; a < r_; ++a) fiber_.push_back(prefix + std::to_string(a + 1));

    std::vector<std::string> all = coords;
    all.insert(all.end(), fiber_.begin(), fiber_.end());
    auto chart = std::make_shared<const Chart>(A.chart().name() + "+fiber", all);
    const std::size_t n = A.dim();
    Matrix anchor(2 * r_, n + r_);
    Tensor3 C(2 * r_);
    for (std::size_t a = 0; a < r_; ++a) {
        for (std::size_t i = 0; i < n; ++i) anchor(a, i) = A.anchor(a, i);
        anchor(r_ + a, n + a) = Scalar(1);
        for (std::size_t b = 0; b < r_; ++b)
            for (std::size_t c = 0; c < r_; ++c) C(c, a, b) = A.C(c, a, b);
    }
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < r_; ++a) labels.push_back("X" + std::to_string(a + 1));
    for (std::size_t a = 0; a < r_; ++a) labels.push_back("V" + std::to_string(a + 1));
    lifted_.name = "prolong(" + base_.name + ")";
    lifted_.A = std::make_shared<const Algebroid>(lifted_.name, chart, anchor, C, labels);
    if (base_.J) lifted_.J = complete_lift(*base_.J);
    if (base_.g) lifted_.g = complete_lift_metric(*base_.g);
}

Scalar Prolongation::complete_lift(const Scalar& f) const {
    Scalar out;
    for (std::size_t c = 0; c < r_; ++c) {
        Scalar d = base_.A->rho(c, f);
        if (!d.is_zero()) out += d * fiber(c);
    }
    return out;
}

Section Prolongation::vertical_lift(const Section& s) const {
    Section out(2 * r_);
    for (std::size_t a = 0; a < r_; ++a) out[r_ + a] = s[a];
    return out;
}

Section Prolongation::complete_lift(const Section& s) const {
    const Algebroid& A = *base_.A;
    Section out(2 * r_);
    for (std::size_t a = 0; a < r_; ++a) {
        out[a] = s[a];
        Scalar v;
        for (std::size_t c = 0; c < r_; ++c) {
            Scalar coef = A.rho(c, s[a]);
            for (std::size_t b = 0; b < r_; ++b)
                if (!A.C(a, b, c).is_zero() && !s[b].is_zero()) coef -= A.C(a, b, c) * s[b];
            if (!coef.is_zero()) v += coef * fiber(c);
        }
        out[r_ + a] = v;
    }
    return out;
}

Section Prolongation::horizontal_lift(const Section& s, const Connection& D) const {
    Section out(2 * r_);
    for (std::size_t a = 0; a < r_; ++a) {
        out[a] = s[a];
        if (s[a].is_zero()) continue;
        for (std::size_t b = 0; b < r_; ++b)
            for (std::size_t c = 0; c < r_; ++c)
                if (!D.G(b, a, c).is_zero()) out[r_ + b] -= s[a] * D.G(b, a, c) * fiber(c);
    }
    return out;
}

Matrix Prolongation::complete_lift(const Matrix& J) const {
    const Algebroid& A = *base_.A;
    Matrix out(2 * r_, 2 * r_);
    for (std::size_t a = 0; a < r_; ++a)
        for (std::size_t b = 0; b < r_; ++b) {
            out(a, b) = J(a, b);
            out(r_ + a, r_ + b) = J(a, b);
            Scalar k;
            for (std::size_t c = 0; c < r_; ++c) {
                Scalar coef = A.rho(c, J(a, b));
                for (std::size_t d = 0; d < r_; ++d) {
                    if (!A.C(a, d, c).is_zero()) coef -= A.C(a, d, c) * J(d, b);
                    if (!A.C(d, b, c).is_zero()) coef += J(a, d) * A.C(d, b, c);
                }
                if (!coef.is_zero()) k += coef * fiber(c);
            }
            out(r_ + a, b) = k;
        }
    return out;
}

Matrix Prolongation::complete_lift_metric(const Matrix& g) const {
    const Algebroid& A = *base_.A;
    Matrix out(2 * r_, 2 * r_);
    for (std::size_t a = 0; a < r_; ++a)
        for (std::size_t b = 0; b < r_; ++b) {
            out(a, r_ + b) = g(a, b);
            out(r_ + a, b) = g(a, b);
            Scalar v;
            for (std::size_t c = 0; c < r_; ++c) {
                Scalar coef = A.rho(c, g(a, b));
                for (std::size_t d = 0; d < r_; ++d) {
                    if (!A.C(d, a, c).is_zero()) coef += A.C(d, a, c) * g(d, b);
                    if (!A.C(d, b, c).is_zero()) coef += A.C(d, b, c) * g(a, d);
                }
                if (!coef.is_zero()) v += coef * fiber(c);
            }
            out(a, b) = v;
        }
    return out;
}

SasakiLift sasaki_lift(const Prolongation& P, const Connection& D) {
    if (!P.base().g) throw PreconditionError("Sasaki lift needs a metric on the base");
    const std::size_t r = P.base_rank();
    const Matrix& g = *P.base().g;
    Matrix T = Matrix::identity(2 * r), Tinv = Matrix::identity(2 * r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            Scalar v;
            for (std::size_t c = 0; c < r; ++c)
                if (!D.G(b, a, c).is_zero()) v += D.G(b, a, c) * P.fiber(c);
            T(r + b, a) = -v;
            Tinv(r + b, a) = v;
        }
    Matrix JHV(2 * r, 2 * r), gHV(2 * r, 2 * r);
    for (std::size_t a = 0; a < r; ++a) {
        JHV(r + a, a) = Scalar(-1);
        JHV(a, r + a) = Scalar(1);
        for (std::size_t b = 0; b < r; ++b) {
            gHV(a, b) = g(a, b);
            gHV(r + a, r + b) = g(a, b);
        }
    }
    return {T, T * JHV * Tinv, Tinv.transpose() * gHV * Tinv};
}

ProlongationReport prolongation_report(const Prolongation& P, const ZeroTestOptions& opt, int random_sections) {
    ProlongationReport rep;
    const Algebroid& A = *P.base().A;
    const Algebroid& L = *P.algebroid();
    const std::size_t r = A.rank();
    rep.validation = validation_check("prolongation is a Lie algebroid", L, opt);

    std::vector<Section> secs;
    for (std::size_t a = 0; a < r; ++a) secs.push_back(A.frame(a));
    // Random sections with two nonzero components of degree <= 1; dense rational structure functions
    // (projector restrictions) make fuller sections very expensive in the lifted brackets.
    for (int k = 0; k < random_sections; ++k) {
        Section s = random_section(A, opt.seed, 100 + k, 1);
        for (std::size_t a = 0; a < r; ++a)
            if (a != static_cast<std::size_t>(k) % r && a != static_cast<std::size_t>(k + 1) % r) s[a] = Scalar();
        secs.push_back(s);
    }

    CheckBuilder laws("lift bracket laws", opt), fl("function lifts", opt);
    for (std::size_t i = 0; i < secs.size(); ++i)
        for (std::size_t j = 0; j < secs.size(); ++j) {
            const Section &s = secs[i], &t = secs[j];
            std::string w = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            Section st = A.bracket(s, t);
            if (i < j) expect_sections(laws, L.bracket(P.vertical_lift(s), P.vertical_lift(t)), L.zero_section(), "[s^v,t^v] " + w);
            expect_sections(laws, L.bracket(P.vertical_lift(s), P.complete_lift(t)), P.vertical_lift(st), "[s^v,t^c] " + w);
            if (i < j) expect_sections(laws, L.bracket(P.complete_lift(s), P.complete_lift(t)), P.complete_lift(st), "[s^c,t^c] " + w);
        }
    std::vector<Scalar> funcs;
    for (std::size_t i = 0; i < A.dim(); ++i) funcs.push_back(A.chart().coordinate(i) * A.chart().coordinate(i));
    for (std::size_t k = 0; k < secs.size(); ++k)
        for (std::size_t q = 0; q < funcs.size(); ++q) {
            Scalar sf = A.rho(secs[k], funcs[q]);
            std::string w = " s" + std::to_string(k + 1) + " f" + std::to_string(q + 1);
            fl.expect_equal(L.rho(P.vertical_lift(secs[k]), P.complete_lift(funcs[q])), sf, "rho(s^v) f^c" + w);
            fl.expect_equal(L.rho(P.complete_lift(secs[k]), funcs[q]), sf, "rho(s^c) f^v" + w);
        }
    rep.lift_laws = laws.result();
    rep.function_lifts = fl.result();

    const auto& base = P.base();
    const auto& lifted = P.geometry();
    if (base.J) {
        const Matrix& J = *base.J;
        const Matrix& Jc = *lifted.J;
        CheckBuilder lj("complete lift of J", opt);
        Check sq = almost_complex_check(Jc, opt);
        if (!sq.passed) lj.fail("(J^c)^2 != -id: " + sq.witness);
        for (std::size_t k = 0; k < secs.size(); ++k) {
            std::string w = " s" + std::to_string(k + 1);
            expect_sections(lj, Jc.apply(P.vertical_lift(secs[k])), P.vertical_lift(J.apply(secs[k])), "J^c s^v" + w);
            expect_sections(lj, Jc.apply(P.complete_lift(secs[k])), P.complete_lift(J.apply(secs[k])), "J^c s^c" + w);
        }
        rep.lifted_J = lj.result();

        CheckBuilder nl("N_{J^c}(s^c,t^c) = N_J(s,t)^c", opt);
        if (sq.passed) {
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = a + 1; b < r; ++b) {
                    Section s = A.frame(a), t = A.frame(b);
                    expect_sections(nl, nijenhuis_apply(L, Jc, P.complete_lift(s), P.complete_lift(t)),
                                    P.complete_lift(nijenhuis_apply(A, J, s, t)),
                                    "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
                }
        } else {
            nl.fail("J^c is not almost complex");
        }
        rep.nijenhuis_lift = nl.result();
    } else {
        rep.lifted_J = skipped("complete lift of J", "base has no J");
        rep.nijenhuis_lift = skipped("N_{J^c}(s^c,t^c) = N_J(s,t)^c", "base has no J");
    }

    if (base.J && base.g) {
        const Matrix &J = *base.J, &g = *base.g, &Jc = *lifted.J, &gc = *lifted.g;
        bool herm_base = hermitian_check(g, J, opt).passed && nijenhuis(A, J, opt).vanishes();
        bool herm_lift = hermitian_check(gc, Jc, opt).passed && nijenhuis(L, Jc, opt).vanishes();
        Check ht;
        ht.name = "Hermitian transfer";
        ht.passed = herm_base == herm_lift;
        ht.note = std::string("base ") + (herm_base ? "Hermitian" : "not Hermitian") + ", lift " +
                  (herm_lift ? "Hermitian" : "not Hermitian");
        if (!ht.passed) ht.witness = ht.note;
        rep.hermitian_transfer = ht;

        CheckBuilder kt("Kahler transfer", opt);
        try {
            Connection D = levi_civita(P.base().A, g);
            Connection Dc = levi_civita(P.algebroid(), gc);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b)
                    expect_sections(kt, Dc.cov(P.complete_lift(A.frame(a)), P.complete_lift(A.frame(b))),
                                    P.complete_lift(D.cov(A.frame(a), A.frame(b))),
                                    "D^c_{e" + std::to_string(a + 1) + "^c} e" + std::to_string(b + 1) + "^c");
            bool k_base = almost_complex_connection_check(D, J, opt).passed;
            bool k_lift = almost_complex_connection_check(Dc, Jc, opt).passed;
            if (k_base != k_lift) kt.fail(std::string("DJ = 0 on base: ") + (k_base ? "yes" : "no") + ", on lift: " + (k_lift ? "yes" : "no"));
            kt.note(std::string("base ") + (k_base ? "Kahler" : "not Kahler") + ", lift " + (k_lift ? "Kahler" : "not Kahler"));
        } catch (const PreconditionError& e) {
            kt.fail(e.what());
        }
        rep.kahler_transfer = kt.result();
    } else {
        rep.hermitian_transfer = skipped("Hermitian transfer", "base has no J or no metric");
        rep.kahler_transfer = skipped("Kahler transfer", "base has no J or no metric");
    }

    if (base.g) {
        Connection D = levi_civita(P.base().A, *base.g);
        SasakiLift S = sasaki_lift(P, D);
        CheckBuilder sb("Sasaki lift", opt);
        Check sq = almost_complex_check(S.J, opt);
        if (!sq.passed) sb.fail("J_L^2 != -id: " + sq.witness);
        for (std::size_t k = 0; k < secs.size(); ++k) {
            std::string w = " s" + std::to_string(k + 1);
            Section sh = P.horizontal_lift(secs[k], D), sv = P.vertical_lift(secs[k]);
            expect_sections(sb, S.J.apply(sh), L.zero_section() - sv, "J_L s^h" + w);
            expect_sections(sb, S.J.apply(sv), sh, "J_L s^v" + w);
            for (std::size_t q = 0; q < secs.size(); ++q) {
                Scalar gst = pair(*base.g, secs[k], secs[q]);
                Section th = P.horizontal_lift(secs[q], D), tv = P.vertical_lift(secs[q]);
                std::string wq = w + " t" + std::to_string(q + 1);
                sb.expect_equal(pair(S.g, sh, th), gst, "g_L(s^h,t^h)" + wq);
                sb.expect_equal(pair(S.g, sv, tv), gst, "g_L(s^v,t^v)" + wq);
                sb.expect_zero(pair(S.g, sh, tv), "g_L(s^h,t^v)" + wq);
            }
        }
        Check herm = hermitian_check(S.g, S.J, opt);
        if (!herm.passed) sb.fail("g_L not Hermitian: " + herm.witness);
        rep.sasaki = sb.result();

        Check si;
        si.name = "J_L integrable <=> horizontal bundle integrable";
        // N_{J_L} on the frame (H, V), stopping at the first nonzero value.
        bool nj = sq.passed;
        for (std::size_t a = 0; a < 2 * r && nj; ++a)
            for (std::size_t b = a + 1; b < 2 * r && nj; ++b)
                for (const Scalar& v : nijenhuis_apply(L, S.J, S.T.col(a), S.T.col(b)))
                    if (!zero_test(v, opt).is_zero()) {
                        nj = false;
                        break;
                    }
        bool hint = true;
        auto Tinv = inverse(S.T);
        for (std::size_t a = 0; a < r && hint; ++a)
            for (std::size_t b = a + 1; b < r && hint; ++b) {
                Section br = Tinv->apply(L.bracket(S.T.col(a), S.T.col(b)));
                for (std::size_t k = r; k < 2 * r; ++k)
                    if (!zero_test(br[k], opt).is_zero()) hint = false;
            }
        si.passed = nj == hint;
        si.note = std::string("N_{J_L} = 0: ") + (nj ? "yes" : "no") + ", H integrable: " + (hint ? "yes" : "no");
        if (!si.passed) si.witness = si.note;
        rep.sasaki_integrability = si;
    } else {
        rep.sasaki = skipped("Sasaki lift", "base has no metric");
        rep.sasaki_integrability = skipped("J_L integrable <=> horizontal bundle integrable", "base has no metric");
    }
    return rep;
}

Geometry prolong_geometry(const Geometry& base) { return Prolongation(base).geometry(); }

// ---------------------------------------------------------------- direct product

ProductAlgebroid direct_product(const Geometry& g1, const Geometry& g2) {
    const Algebroid &A1 = *g1.A, &A2 = *g2.A;
    ProductAlgebroid out;
    out.first = g1;
    out.r1 = A1.rank();
    out.r2 = A2.rank();

    std::set<std::string> taken(A1.chart().coords().begin(), A1.chart().coords().end());
    std::vector<std::string> coords2;
    std::map<std::string, Scalar> subs;
    for (const auto& c : A2.chart().coords()) {
        std::string name = c;
        while (taken.count(name)) name += "_2";
        taken.insert(name);
        coords2.push_back(name);
        if (name != c) {
            out.renamed[c] = name;
            subs.emplace(c, Scalar::coordinate(name));
        }
    }
    auto chart2 = std::make_shared<const Chart>(A2.chart().name(), coords2);
    Tensor3 C2(out.r2);
    for (std::size_t c = 0; c < out.r2; ++c)
        for (std::size_t a = 0; a < out.r2; ++a)
            for (std::size_t b = 0; b < out.r2; ++b) C2(c, a, b) = substitute(A2.C(c, a, b), subs);
    out.second.name = g2.name;
    out.second.A = std::make_shared<const Algebroid>(A2.name(), chart2, substituted(A2.anchor_matrix(), subs), C2,
                                                     A2.labels());
    if (g2.J) out.second.J = substituted(*g2.J, subs);
    if (g2.g) out.second.g = substituted(*g2.g, subs);

    std::vector<std::string> coords = A1.chart().coords();
    coords.insert(coords.end(), coords2.begin(), coords2.end());
    auto chart = std::make_shared<const Chart>(A1.chart().name() + "x" + A2.chart().name(), coords);
    const std::size_t r = out.r1 + out.r2;
    Tensor3 C(r);
    for (std::size_t c = 0; c < out.r1; ++c)
        for (std::size_t a = 0; a < out.r1; ++a)
            for (std::size_t b = 0; b < out.r1; ++b) C(c, a, b) = A1.C(c, a, b);
    for (std::size_t c = 0; c < out.r2; ++c)
        for (std::size_t a = 0; a < out.r2; ++a)
            for (std::size_t b = 0; b < out.r2; ++b) C(out.r1 + c, out.r1 + a, out.r1 + b) = C2(c, a, b);
    std::vector<std::string> labels;
    std::set<std::string> used;
    for (std::size_t a = 0; a < out.r1; ++a) {
        std::string l = a < A1.labels().size() ? A1.labels()[a] : "e" + std::to_string(a + 1);
        labels.push_back(l);
        used.insert(l);
    }
    for (std::size_t a = 0; a < out.r2; ++a) {
        std::string l = a < A2.labels().size() ? A2.labels()[a] : "e" + std::to_string(a + 1);
        while (used.count(l)) l += "_2";
        used.insert(l);
        labels.push_back(l);
    }
    out.geometry.name = "product(" + g1.name + "," + g2.name + ")";
    out.geometry.A = std::make_shared<const Algebroid>(out.geometry.name, chart,
                                                       block_diag(A1.anchor_matrix(), out.second.A->anchor_matrix()),
                                                       C, labels);
    if (g1.J && out.second.J) out.geometry.J = block_diag(*g1.J, *out.second.J);
    if (g1.g && out.second.g) out.geometry.g = block_diag(*g1.g, *out.second.g);
    return out;
}

ProductReport product_report(const ProductAlgebroid& P, const ZeroTestOptions& opt) {
    ProductReport rep;
    const Algebroid& E = *P.geometry.A;
    const std::size_t r = E.rank(), r1 = P.r1;
    const std::size_t n1 = P.first.A->dim();
    auto block = [&](std::size_t k) { return k < r1 ? 0 : 1; };
    rep.validation = validation_check("product is a Lie algebroid", E, opt);

    CheckBuilder bs("block anchor and vanishing cross structure functions", opt);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t i = 0; i < E.dim(); ++i)
            if (block(a) != (i < n1 ? 0 : 1)) bs.expect_zero(E.anchor(a, i), "rho^" + std::to_string(i + 1) + "_" + std::to_string(a + 1));
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b)
                if (block(a) != block(b) || block(c) != block(a))
                    bs.expect_zero(E.C(c, a, b), "C^" + std::to_string(c + 1) + "_" + std::to_string(a + 1) + std::to_string(b + 1));
    rep.block_structure = bs.result();

    CheckBuilder fb("factor injections preserve brackets", opt);
    const Geometry* factors[2] = {&P.first, &P.second};
    std::vector<Section> injected[2];
    for (int f = 0; f < 2; ++f) {
        const Algebroid& A = *factors[f]->A;
        const std::size_t off = f == 0 ? 0 : r1;
        std::vector<Section> secs;
        for (std::size_t a = 0; a < A.rank(); ++a) secs.push_back(A.frame(a));
        for (int k = 0; k < 2; ++k) secs.push_back(random_section(A, opt.seed, 200 + 10 * f + k));
        for (std::size_t i = 0; i < secs.size(); ++i) {
            injected[f].push_back(inject(secs[i], off, r));
            for (std::size_t j = i + 1; j < secs.size(); ++j)
                expect_sections(fb, E.bracket(inject(secs[i], off, r), inject(secs[j], off, r)),
                                inject(A.bracket(secs[i], secs[j]), off, r),
                                "factor " + std::to_string(f + 1) + " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }
    for (std::size_t i = 0; i < injected[0].size(); ++i)
        for (std::size_t j = 0; j < injected[1].size(); ++j)
            expect_sections(fb, E.bracket(injected[0][i], injected[1][j]), E.zero_section(),
                            "cross (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    rep.factor_brackets = fb.result();

    if (P.geometry.J) {
        rep.product_J = almost_complex_check(*P.geometry.J, opt);
        rep.product_J.name = "product J^2 = -id";
        if (P.geometry.g) {
            bool h1 = hermitian_check(*P.first.g, *P.first.J, opt).passed;
            bool h2 = hermitian_check(*P.second.g, *P.second.J, opt).passed;
            Check hp = hermitian_check(*P.geometry.g, *P.geometry.J, opt);
            Check h;
            h.name = "product metric Hermitian iff both factors are";
            h.passed = hp.passed == (h1 && h2);
            h.note = std::string("factors ") + (h1 ? "yes" : "no") + "/" + (h2 ? "yes" : "no") + ", product " + (hp.passed ? "yes" : "no");
            if (!h.passed) h.witness = h.note;
            rep.hermitian = h;
        } else {
            rep.hermitian = skipped("product metric Hermitian iff both factors are", "a factor has no metric");
        }
        CheckBuilder nb("N of the product is blockwise", opt);
        if (rep.product_J.passed) {
            NijenhuisResult N = nijenhuis(E, *P.geometry.J, opt);
            NijenhuisResult N1 = nijenhuis(*P.first.A, *P.first.J, opt);
            NijenhuisResult N2 = nijenhuis(*P.second.A, *P.second.J, opt);
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = a + 1; b < r; ++b) {
                        Scalar want;
                        if (block(a) == block(b) && block(b) == block(c))
                            want = block(a) == 0 ? N1.frame(c, a, b) : N2.frame(c - r1, a - r1, b - r1);
                        nb.expect_equal(N.frame(c, a, b), want,
                                        "N^" + std::to_string(c + 1) + "_" + std::to_string(a + 1) + std::to_string(b + 1));
                    }
        } else {
            nb.fail("product J is not almost complex");
        }
        rep.nijenhuis_blocks = nb.result();
    } else {
        rep.product_J = skipped("product J^2 = -id", "a factor has no J");
        rep.hermitian = skipped("product metric Hermitian iff both factors are", "a factor has no J");
        rep.nijenhuis_blocks = skipped("N of the product is blockwise", "a factor has no J");
    }
    return rep;
}

Geometry product_geometry(const Geometry& g1, const Geometry& g2) { return direct_product(g1, g2).geometry; }

// ---------------------------------------------------------------- projector restriction

ProjectorRestriction projector_restriction(const std::string& name, std::shared_ptr<const Chart> chart, const Matrix& Pi,
                                           const Matrix& ambient_anchor, std::optional<Matrix> J,
                                           std::optional<Matrix> g) {
    const std::size_t r = Pi.rows();
    if (Pi.cols() != r || ambient_anchor.rows() != r || ambient_anchor.cols() != chart->dim())
        throw std::invalid_argument("projector and ambient anchor have inconsistent shapes");
    Matrix res = Pi * Pi - Pi;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (!res(i, j).is_zero()) throw PreconditionError("projector is not idempotent at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    if (J && (J->rows() != r || J->cols() != r)) throw std::invalid_argument("J has the wrong size");

    // rho''(e_A) = rho'(Pi e_A); [e_A,e_B] = [Pi e_A, Pi e_B] with constant ambient frame.
    Matrix anchor = Pi.transpose() * ambient_anchor;
    auto tmp = std::make_shared<const Algebroid>(name, chart, anchor, Tensor3(r));
    Tensor3 C(r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            for (std::size_t d = 0; d < r; ++d) {
                Scalar v = tmp->rho(a, Pi(d, b)) - tmp->rho(b, Pi(d, a));
                C(d, a, b) = v;
                C(d, b, a) = -v;
            }
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < r; ++a) labels.push_back("e" + std::to_string(a + 1));
    ProjectorRestriction out;
    out.geometry.name = name;
    out.geometry.A = std::make_shared<const Algebroid>(name, chart, anchor, C, labels);
    out.geometry.J = J;
    out.geometry.g = std::move(g);
    out.Pi = Pi;
    out.ambient_anchor = ambient_anchor;
    out.ambient_J = std::move(J);
    return out;
}

ProjectorReport projector_report(const ProjectorRestriction& R, const ZeroTestOptions& opt, int points) {
    ProjectorReport rep;
    const Algebroid& E = *R.geometry.A;
    const Matrix& Pi = R.Pi;
    const std::size_t r = E.rank();

    CheckBuilder id("Pi^2 = Pi", opt);
    Matrix res = Pi * Pi - Pi;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) id.expect_zero(res(i, j), "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    rep.idempotent = id.result();
    rep.validation = validation_check("restriction is a Lie algebroid", E, opt);

    // Ambient bracket restricted to the chart, constant frame: [X,Y]' = rho''(X)(Y) - rho''(Y)(X).
    auto ambient = [&](const Section& X, const Section& Y) {
        Section out(r);
        for (std::size_t k = 0; k < r; ++k) out[k] = E.rho(X, Y[k]) - E.rho(Y, X[k]);
        return out;
    };
    std::vector<Section> secs;
    for (std::size_t a = 0; a < r; ++a) secs.push_back(Pi.col(a));
    // One function-coefficient section; brackets of dense Pi-images are expensive.
    {
        Section extra(r);
        const Scalar u = Scalar::coordinate(E.chart().coords().front());
        for (std::size_t k = 0; k < r; ++k) extra[k] = u * Pi(k, r - 2) + Pi(k, r - 1);
        secs.push_back(extra);
    }

    CheckBuilder fb("[s1,s2] = [Pi s1, Pi s2] on Pi-images", opt);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            expect_sections(fb, E.bracket(E.frame(a), E.frame(b)), ambient(Pi.col(a), Pi.col(b)),
                            "frame (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    for (std::size_t i = r; i < secs.size(); ++i)
        for (std::size_t j = 0; j < secs.size(); ++j)
            if (j != i) expect_sections(fb, E.bracket(secs[i], secs[j]), ambient(secs[i], secs[j]),
                                        "sections (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    rep.form_bracket = fb.result();

    CheckBuilder fl("flatness Pi([Pi s1, Pi s2]') = [Pi s1, Pi s2]", opt);
    std::vector<Scalar> residuals;
    for (std::size_t i = 0; i < secs.size(); ++i)
        for (std::size_t j = i + 1; j < secs.size(); ++j) {
            Section w = ambient(secs[i], secs[j]);
            Section d = Pi.apply(w) - w;
            residuals.insert(residuals.end(), d.begin(), d.end());
        }
    double worst = 0;
    int done = 0;
    for (int attempt = 0; done < points && attempt < 10 * points; ++attempt) {
        try {
            NumericPoint p = to_numeric(random_point(E.chart().coords(), opt.seed, 700 + attempt));
            double here = 0;
            for (const Scalar& s : residuals) here = std::max(here, std::abs(eval_numeric(s, p)));
            worst = std::max(worst, here);
            ++done;
        } catch (const PoleError&) {
        }
    }
    if (worst > opt.tol) fl.fail("max residual " + num_str(worst));
    fl.numeric();
    fl.note("numeric at " + std::to_string(done) + " points, tolerance " + num_str(opt.tol) +
            ", max residual " + num_str(worst));
    rep.flatness = fl.result();

    if (R.ambient_J) {
        const Matrix& J = *R.ambient_J;
        CheckBuilder cm("Pi J = J Pi", opt);
        Matrix d = Pi * J - J * Pi;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) cm.expect_zero(d(i, j), "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        rep.commutes = cm.result();
        CheckBuilder nb("restricted J integrable", opt);
        NijenhuisResult N = nijenhuis(E, J, opt);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c)
                    nb.expect_zero(N.frame(c, a, b), "N^" + std::to_string(c + 1) + "_" + std::to_string(a + 1) + std::to_string(b + 1));
        rep.integrable = nb.result();
    } else {
        rep.commutes = skipped("Pi J = J Pi", "no ambient J");
        rep.integrable = skipped("restricted J integrable", "no ambient J");
    }
    return rep;
}

const ProjectorRestriction& s3_projector() {
    static const ProjectorRestriction R = [] {
        auto chart = std::make_shared<const Chart>("s3_stereo", std::vector<std::string>{"u1", "u2", "u3"});
        std::vector<Scalar> u = {chart->coordinate(0), chart->coordinate(1), chart->coordinate(2)};
        Scalar s = Scalar(1) + u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        std::vector<Scalar> p = {Scalar(2) * u[0] / s, Scalar(2) * u[1] / s, Scalar(2) * u[2] / s, (s - Scalar(2)) / s};
        Matrix Pi = Matrix::identity(4);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) Pi(a, b) -= p[a] * p[b];
        // d p / d u^i has squared length 4/s^2, so e_A = (s^2/4) dp^A/du^i d/du^i on tangent vectors.
        Matrix anchor(4, 3);
        Scalar factor = s * s / Scalar(4);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t i = 0; i < 3; ++i) anchor(a, i) = factor * differentiate(p[a], chart->var(i));
        Matrix J(4, 4);
        J(1, 0) = Scalar(1);
        J(0, 1) = Scalar(-1);
        J(3, 2) = Scalar(1);
        J(2, 3) = Scalar(-1);
        return projector_restriction("s3_projector", chart, Pi, anchor, J, Matrix::identity(4));
    }();
    return R;
}

}  // namespace alg
