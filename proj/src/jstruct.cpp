#include "alg/jstruct.hpp"

#include <stdexcept>

namespace alg {

namespace {

std::string idx(std::initializer_list<std::size_t> ks) {
    std::string s = "(";
    bool first = true;
    for (std::size_t k : ks) {
        if (!first) s += ",";
        s += std::to_string(k + 1);
        first = false;
    }
    return s + ")";
}

std::string cidx(std::size_t mu, std::size_t m) {
    return mu < m ? std::to_string(mu + 1) : std::to_string(mu - m + 1) + "b";
}

void require_almost_complex(const Matrix& J) {
    Check c = almost_complex_check(J);
    if (!c.passed) throw PreconditionError("J^2 != -id: " + c.witness);
}

Check merge_validation(const std::string& name, const ValidationReport& rep) {
    Check out;
    out.name = name;
    for (const Check& c : rep.checks())
        if (!c.passed) {
            out.passed = false;
            out.witness = c.name + ": " + c.witness;
            break;
        }
    return out;
}

}  // namespace

Check almost_complex_check(const Matrix& J, const ZeroTestOptions& opt) {
    CheckBuilder cb("J^2 = -id", opt);
    if (J.rows() != J.cols() || J.rows() % 2 != 0) {
        cb.fail("J must be square of even size");
        return cb.result();
    }
    Matrix JJ = J * J;
    for (std::size_t r = 0; r < J.rows(); ++r)
        for (std::size_t c = 0; c < J.cols(); ++c)
            cb.expect_zero(JJ(r, c) + (r == c ? Scalar(1) : Scalar()), "J^2" + idx({r, c}));
    return cb.result();
}

Section nijenhuis_apply(const Algebroid& A, const Matrix& J, const Section& s1, const Section& s2) {
    Section J1 = J.apply(s1), J2 = J.apply(s2);
    return A.bracket(J1, J2) - J.apply(A.bracket(s1, J2)) - J.apply(A.bracket(J1, s2)) - A.bracket(s1, s2);
}

NijenhuisResult nijenhuis(const Algebroid& A, const Matrix& J, const ZeroTestOptions& opt) {
    require_almost_complex(J);
    const std::size_t r = A.rank();
    NijenhuisResult res{Tensor3(r), Tensor3(r), {}};
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b) {
            Section n = nijenhuis_apply(A, J, A.frame(a), A.frame(b));
            for (std::size_t c = 0; c < r; ++c) {
                res.frame(c, a, b) = n[c];
                res.frame(c, b, a) = -n[c];
            }
        }
    // Local coefficient formula, Jm(d,a) = J^d_a.
    auto Jm = [&](std::size_t up, std::size_t low) -> const Scalar& { return J(up, low); };
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c) {
                Scalar v = -A.C(c, a, b);
                for (std::size_t d = 0; d < r; ++d) {
                    v += A.rho(b, Jm(d, a)) * Jm(c, d);
                    v -= A.rho(a, Jm(d, b)) * Jm(c, d);
                    v += A.rho(d, Jm(c, b)) * Jm(d, a);
                    v -= A.rho(d, Jm(c, a)) * Jm(d, b);
                    for (std::size_t e = 0; e < r; ++e) {
                        if (!A.C(e, b, d).is_zero()) v += Jm(d, a) * Jm(c, e) * A.C(e, b, d);
                        if (!A.C(e, a, d).is_zero()) v -= Jm(d, b) * Jm(c, e) * A.C(e, a, d);
                        if (!A.C(c, d, e).is_zero()) v += Jm(e, b) * Jm(d, a) * A.C(c, d, e);
                    }
                }
                res.coefficients(c, a, b) = v;
            }
    CheckBuilder cb("nijenhuis: bracket formula = coefficient formula", opt);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c)
                cb.expect_equal(res.frame(c, a, b), res.coefficients(c, a, b), "N^" + idx({c}) + "_" + idx({a, b}));
    res.agreement = cb.result();
    return res;
}

ComplexFrame::ComplexFrame(AlgebroidPtr real, Matrix J) : real_(std::move(real)), J_(std::move(J)) {
    const std::size_t r = real_->rank();
    if (J_.rows() != r || J_.cols() != r) throw std::invalid_argument("J has the wrong size");
    require_almost_complex(J_);
    m_ = r / 2;
    for (std::size_t k = 0; k < r && chosen_.size() < m_; ++k) {
        std::vector<std::size_t> trial = chosen_;
        trial.push_back(k);
        Matrix M(r, 2 * trial.size());
        for (std::size_t t = 0; t < trial.size(); ++t)
            for (std::size_t row = 0; row < r; ++row) {
                M(row, t) = row == trial[t] ? Scalar(1) : Scalar();
                M(row, trial.size() + t) = J_(row, trial[t]);
            }
        if (structural_rank(M) == 2 * trial.size()) chosen_ = std::move(trial);
    }
    if (chosen_.size() != m_) throw std::logic_error("adapted frame selection failed");

    Q_ = Matrix(r, r);
    P_ = Matrix(r, r);
    const Scalar I = Scalar::imag_unit();
    for (std::size_t a = 0; a < m_; ++a)
        for (std::size_t row = 0; row < r; ++row) {
            Scalar u = row == chosen_[a] ? Scalar(1) : Scalar();
            const Scalar& ju = J_(row, chosen_[a]);
            Q_(row, a) = u;
            Q_(row, m_ + a) = ju;
            P_(row, a) = u - I * ju;
            P_(row, m_ + a) = u + I * ju;
        }
    auto qi = inverse(Q_);
    if (!qi) throw std::logic_error("adapted frame is singular");
    Qinv_ = *qi;
    // P = Q [[1, 1], [-i, i]] blockwise, so P^-1 = (1/2)[[1, i], [1, -i]] Q^-1.
    Matrix B(r, r);
    const Scalar half = Scalar::rational(1, 2);
    for (std::size_t a = 0; a < m_; ++a) {
        B(a, a) = half;
        B(a, m_ + a) = half * I;
        B(m_ + a, a) = half;
        B(m_ + a, m_ + a) = -half * I;
    }
    Pinv_ = B * Qinv_;

    Matrix anchor(r, real_->dim());
    for (std::size_t mu = 0; mu < r; ++mu)
        for (std::size_t a = 0; a < r; ++a) {
            if (P_(a, mu).is_zero()) continue;
            for (std::size_t i = 0; i < real_->dim(); ++i)
                if (!real_->anchor(a, i).is_zero()) anchor(mu, i) += P_(a, mu) * real_->anchor(a, i);
        }
    Tensor3 upper(r);
    for (std::size_t mu = 0; mu < r; ++mu)
        for (std::size_t nu = mu + 1; nu < r; ++nu) {
            Section br = Pinv_.apply(real_->bracket(P_.col(mu), P_.col(nu)));
            for (std::size_t l = 0; l < r; ++l) upper(l, mu, nu) = br[l];
        }
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < m_; ++a) labels.push_back("f" + std::to_string(a + 1));
    for (std::size_t a = 0; a < m_; ++a) labels.push_back("fb" + std::to_string(a + 1));
    F_ = Algebroid::make(real_->name() + "[complex frame]", real_->chart_ptr(), anchor,
                         Algebroid::antisymmetrize(upper), labels);
}

Matrix ComplexFrame::p10() const {
    const std::size_t r = J_.rows();
    return (Matrix::identity(r) - J_.scaled(Scalar::imag_unit())).scaled(Scalar::rational(1, 2));
}

Matrix ComplexFrame::p01() const {
    const std::size_t r = J_.rows();
    return (Matrix::identity(r) + J_.scaled(Scalar::imag_unit())).scaled(Scalar::rational(1, 2));
}

Check ComplexFrame::projector_check(const ZeroTestOptions& opt) const {
    CheckBuilder cb("projectors", opt);
    const std::size_t r = J_.rows();
    Matrix a = p10(), b = p01(), id = Matrix::identity(r);
    const std::pair<const char*, Matrix> res[] = {
        {"p10+p01-I", a + b - id}, {"p10^2-p10", a * a - a}, {"p01^2-p01", b * b - b},
        {"p10 p01", a * b},        {"p01 p10", b * a},
    };
    for (const auto& [what, M] : res)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) cb.expect_zero(M(i, j), std::string(what) + idx({i, j}));
    return cb.result();
}

Check ComplexFrame::eigen_check(const ZeroTestOptions& opt) const {
    CheckBuilder cb("J eigenframe", opt);
    const std::size_t r = J_.rows();
    for (std::size_t mu = 0; mu < r; ++mu) {
        Section f = P_.col(mu);
        Section Jf = J_.apply(f);
        Scalar ev = mu < m_ ? Scalar::imag_unit() : -Scalar::imag_unit();
        for (std::size_t k = 0; k < r; ++k) cb.expect_zero(Jf[k] - ev * f[k], "J f" + cidx(mu, m_));
    }
    return cb.result();
}

Check ComplexFrame::conjugation_check(const ZeroTestOptions& opt) const {
    CheckBuilder cb("conjugation symmetry", opt);
    const std::size_t r = J_.rows();
    for (std::size_t l = 0; l < r; ++l)
        for (std::size_t mu = 0; mu < r; ++mu)
            for (std::size_t nu = mu + 1; nu < r; ++nu)
                cb.expect_equal(conjugate(F_->C(l, mu, nu)), F_->C(bar(l), bar(mu), bar(nu)),
                                "C^" + cidx(l, m_) + "_" + cidx(mu, m_) + cidx(nu, m_));
    for (std::size_t mu = 0; mu < r; ++mu)
        for (std::size_t i = 0; i < F_->dim(); ++i)
            cb.expect_equal(conjugate(F_->anchor(mu, i)), F_->anchor(bar(mu), i), "rho_" + cidx(mu, m_));
    return cb.result();
}

std::map<Bidegree, EForm> bigrade(const EForm& w, std::size_t m) {
    std::map<Bidegree, EForm> out;
    for (const auto& [K, v] : w.components()) {
        std::size_t p = 0;
        for (std::size_t k : K)
            if (k < m) ++p;
        Bidegree bd{p, K.size() - p};
        auto it = out.find(bd);
        if (it == out.end()) it = out.emplace(bd, EForm(w.algebroid(), w.degree())).first;
        it->second.add(K, v);
    }
    return out;
}

DSplit d_split(const EForm& w, std::size_t m) {
    const AlgebroidPtr& A = w.algebroid();
    const std::size_t deg = w.degree() + 1;
    DSplit out{EForm(A, deg), EForm(A, deg), EForm(A, deg), EForm(A, deg)};
    auto parts = bigrade(w, m);
    if (parts.empty()) return out;
    if (parts.size() != 1) throw std::invalid_argument("d_split expects a form of pure type");
    const std::size_t p = parts.begin()->first.first;
    for (auto& [bd, piece] : bigrade(d(w), m)) {
        if (bd.first == p + 2) {
            out.dprime = piece;
        } else if (bd.first == p + 1) {
            out.d10 = piece;
        } else if (bd.first == p) {
            out.d01 = piece;
        } else {
            out.ddprime = piece;
        }
    }
    return out;
}

namespace {

void expect_no_leak(CheckBuilder& cb, const EForm& leak, const std::string& where, std::size_t m) {
    for (const auto& [K, v] : leak.components()) {
        std::string slots;
        for (std::size_t k : K) slots += (slots.empty() ? "" : ",") + cidx(k, m);
        cb.expect_zero(v, where + " on (" + slots + ")");
    }
}

}  // namespace

NNReport newlander_nirenberg_report(const ComplexFrame& F, const ZeroTestOptions& opt, std::size_t max_degree) {
    NNReport rep;
    const Algebroid& C = *F.complex();
    const std::size_t m = F.m();
    CheckBuilder c10("(i) E^{1,0} closed under bracket", opt);
    CheckBuilder c01("(ii) E^{0,1} closed under bracket", opt);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c) {
                c10.expect_zero(C.C(m + c, a, b), "C^" + cidx(m + c, m) + "_" + cidx(a, m) + cidx(b, m));
                c01.expect_zero(C.C(c, m + a, m + b), "C^" + cidx(c, m) + "_" + cidx(m + a, m) + cidx(m + b, m));
            }
    rep.closure10 = c10.result();
    rep.closure01 = c01.result();

    CheckBuilder cf("(iii) d of (1,0)- and (0,1)-forms", opt);
    for (std::size_t a = 0; a < 2 * m; ++a) {
        DSplit s = d_split(EForm::coframe(F.complex(), a), m);
        expect_no_leak(cf, s.dprime, "d f^" + cidx(a, m), m);
        expect_no_leak(cf, s.ddprime, "d f^" + cidx(a, m), m);
    }
    rep.coframe = cf.result();

    CheckBuilder bg("(iv) d preserves the bigrading up to (1,0)+(0,1)", opt);
    for (std::size_t p = 1; p <= std::min(max_degree, 2 * m); ++p)
        for (const MultiIndex& K : increasing_indices(2 * m, p)) {
            EForm w(F.complex(), p);
            w.set(K, Scalar(1));
            DSplit s = d_split(w, m);
            std::string name = "d f^";
            for (std::size_t k : K) name += (name.size() > 4 ? "^" : "") + cidx(k, m);
            expect_no_leak(bg, s.dprime, name, m);
            expect_no_leak(bg, s.ddprime, name, m);
        }
    bg.note("generating set: basis forms f^K of degree 1.." + std::to_string(std::min(max_degree, 2 * m)));
    rep.bigraded = bg.result();

    NijenhuisResult N = nijenhuis(*F.real(), F.J(), opt);
    CheckBuilder nb("(v) N = 0", opt);
    const std::size_t r = 2 * m;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c) nb.expect_zero(N.frame(c, a, b), "N^" + idx({c}) + "_" + idx({a, b}));
    rep.nijenhuis = nb.result();

    Check agree;
    agree.name = "statuses agree";
    bool v = rep.nijenhuis.passed;
    agree.passed = rep.closure10.passed == v && rep.closure01.passed == v && rep.coframe.passed == v &&
                   rep.bigraded.passed == v;
    if (!agree.passed) agree.witness = "statuses differ from N = 0 status " + std::string(v ? "true" : "false");
    rep.agreement = agree;
    return rep;
}

Check infinitesimal_automorphism_check(const Algebroid& A, const Matrix& J, const Section& s,
                                       const ZeroTestOptions& opt) {
    CheckBuilder cb("infinitesimal automorphism", opt);
    for (std::size_t b = 0; b < A.rank(); ++b) {
        Section e = A.frame(b);
        Section res = A.bracket(s, J.apply(e)) - J.apply(A.bracket(s, e));
        for (std::size_t c = 0; c < A.rank(); ++c) cb.expect_zero(res[c], "e" + std::to_string(b + 1) + " comp " + std::to_string(c + 1));
    }
    return cb.result();
}

MatchedPairReport matched_pair_check(const ComplexFrame& F, const ZeroTestOptions& opt) {
    if (!nijenhuis(*F.real(), F.J(), opt).vanishes()) throw PreconditionError("J is not integrable");
    const Algebroid& C = *F.complex();
    const std::size_t m = F.m(), r = 2 * m;
    MatchedPairReport rep;

    for (int half = 0; half < 2; ++half) {
        const std::size_t off = half == 0 ? 0 : m;
        Matrix anchor(m, C.dim());
        Tensor3 S(m);
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t i = 0; i < C.dim(); ++i) anchor(a, i) = C.anchor(off + a, i);
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t c = 0; c < m; ++c) S(c, a, b) = C.C(off + c, off + a, off + b);
        }
        Algebroid sub(C.name() + (half == 0 ? "[1,0]" : "[0,1]"), C.chart_ptr(), anchor, S);
        Check chk = merge_validation(half == 0 ? "E^{1,0} is a Lie algebroid" : "E^{0,1} is a Lie algebroid",
                                     sub.validate(opt));
        (half == 0 ? rep.sub10 : rep.sub01) = chk;
    }

    auto p10 = [&](Section s) {
        for (std::size_t k = m; k < r; ++k) s[k] = Scalar();
        return s;
    };
    auto p01 = [&](Section s) {
        for (std::size_t k = 0; k < m; ++k) s[k] = Scalar();
        return s;
    };
    // Both actions are p[x, y] with the projection onto the type of y.
    auto act10 = [&](const Section& t, const Section& s) { return p10(C.bracket(t, s)); };  // nabla_t s, s in E^{1,0}
    auto act01 = [&](const Section& s, const Section& t) { return p01(C.bracket(s, t)); };  // nabla_s t, t in E^{0,1}
    auto br10 = [&](const Section& a, const Section& b) { return p10(C.bracket(a, b)); };
    auto br01 = [&](const Section& a, const Section& b) { return p01(C.bracket(a, b)); };

    CheckBuilder mp1("anchor: [rho s, rho t] = rho(nabla_s t) - rho(nabla_t s)", opt);
    CheckBuilder mp2("E^{1,0} acts by derivations of the E^{0,1} bracket", opt);
    CheckBuilder mp3("E^{0,1} acts by derivations of the E^{1,0} bracket", opt);
    const Chart& chart = C.chart();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Section s = C.frame(a), t = C.frame(m + b);
            VectorField lhs = vf_bracket(chart, C.anchor_push(s), C.anchor_push(t));
            VectorField rhs = C.anchor_push(act01(s, t)) - C.anchor_push(act10(t, s));
            for (std::size_t i = 0; i < chart.dim(); ++i)
                mp1.expect_equal(lhs[i], rhs[i], "s=" + cidx(a, m) + " t=" + cidx(m + b, m) + " d/d" + chart.coords()[i]);
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b1 = 0; b1 < m; ++b1)
            for (std::size_t b2 = b1 + 1; b2 < m; ++b2) {
                Section s = C.frame(a), t1 = C.frame(m + b1), t2 = C.frame(m + b2);
                Section lhs = act01(s, br01(t1, t2));
                Section rhs = br01(act01(s, t1), t2) + br01(t1, act01(s, t2)) + act01(act10(t2, s), t1) -
                              act01(act10(t1, s), t2);
                for (std::size_t k = 0; k < r; ++k)
                    mp2.expect_equal(lhs[k], rhs[k], "s=" + cidx(a, m) + " t=" + cidx(m + b1, m) + cidx(m + b2, m));
                Section t = C.frame(m + a), s1 = C.frame(b1), s2 = C.frame(b2);
                Section lhs3 = act10(t, br10(s1, s2));
                Section rhs3 = br10(act10(t, s1), s2) + br10(s1, act10(t, s2)) + act10(act01(s2, t), s1) -
                               act10(act01(s1, t), s2);
                for (std::size_t k = 0; k < r; ++k)
                    mp3.expect_equal(lhs3[k], rhs3[k], "t=" + cidx(m + a, m) + " s=" + cidx(b1, m) + cidx(b2, m));
            }
    rep.anchor = mp1.result();
    rep.derivation01 = mp2.result();
    rep.derivation10 = mp3.result();

    CheckBuilder rec("matched-pair bracket = bracket of E_C", opt);
    for (std::size_t mu = 0; mu < r; ++mu)
        for (std::size_t nu = mu + 1; nu < r; ++nu) {
            Section x = C.frame(mu), y = C.frame(nu);
            Section s1 = p10(x), t1 = p01(x), s2 = p10(y), t2 = p01(y);
            Section got = br10(s1, s2) + act10(t1, s2) - act10(t2, s1) + br01(t1, t2) + act01(s1, t2) - act01(s2, t1);
            Section want = C.bracket(x, y);
            for (std::size_t k = 0; k < r; ++k) rec.expect_equal(got[k], want[k], "(" + cidx(mu, m) + "," + cidx(nu, m) + ")");
        }
    rep.reconstruction = rec.result();
    return rep;
}

}  // namespace alg
