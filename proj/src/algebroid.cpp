#include "alg/algebroid.hpp"

#include <random>
#include <stdexcept>

namespace alg {

Section operator+(const Section& a, const Section& b) {
    Section out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

Section operator-(const Section& a, const Section& b) {
    Section out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

Section operator*(const Scalar& f, const Section& s) {
    Section out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = f * s[k];
    return out;
}

bool is_zero(const Section& s) {
    for (const auto& x : s)
        if (!x.is_zero()) return false;
    return true;
}

std::string section_str(const Section& s, const std::string& basis) {
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string c = s[k].str();
        bool simple = s[k].num().size() == 1 && s[k].den().is_one();
        out += (simple ? c : "(" + c + ")") + "*" + basis + std::to_string(k + 1);
    }
    return out.empty() ? "0" : out;
}

Algebroid::Algebroid(std::string name, std::shared_ptr<const Chart> chart, Matrix anchor, Tensor3 C,
                     std::vector<std::string> labels)
    : name_(std::move(name)), chart_(std::move(chart)), rank_(anchor.rows()), anchor_(std::move(anchor)),
      C_(std::move(C)), labels_(std::move(labels)) {
    if (anchor_.cols() != chart_->dim()) throw std::invalid_argument("anchor has wrong number of columns");
    if (C_.dim(0) != rank_ || C_.dim(1) != rank_ || C_.dim(2) != rank_)
        throw std::invalid_argument("structure functions have wrong shape");
    if (labels_.empty())
        for (std::size_t a = 0; a < rank_; ++a) labels_.push_back("e" + std::to_string(a + 1));
}

Tensor3 Algebroid::antisymmetrize(const Tensor3& upper) {
    const std::size_t r = upper.dim(0);
    Tensor3 C(r);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b) {
                C(c, a, b) = upper(c, a, b);
                C(c, b, a) = -upper(c, a, b);
            }
    return C;
}

std::shared_ptr<const Algebroid> Algebroid::make(std::string name, std::shared_ptr<const Chart> chart, Matrix anchor,
                                                 Tensor3 C, std::vector<std::string> labels) {
    return std::make_shared<const Algebroid>(std::move(name), std::move(chart), std::move(anchor), std::move(C),
                                             std::move(labels));
}

Scalar Algebroid::rho(std::size_t a, const Scalar& f) const {
    if (f.is_constant()) return Scalar();
    Scalar out;
    for (std::size_t i = 0; i < dim(); ++i) {
        const Scalar& r = anchor_(a, i);
        if (r.is_zero()) continue;
        Scalar df = differentiate(f, chart_->var(i));
        if (!df.is_zero()) out += r * df;
    }
    return out;
}

Scalar Algebroid::rho(const Section& s, const Scalar& f) const {
    if (f.is_constant()) return Scalar();
    return vf_apply(*chart_, anchor_push(s), f);
}

VectorField Algebroid::anchor_push(const Section& s) const {
    VectorField X(dim());
    for (std::size_t a = 0; a < rank_; ++a) {
        if (s[a].is_zero()) continue;
        for (std::size_t i = 0; i < dim(); ++i)
            if (!anchor_(a, i).is_zero()) X[i] += s[a] * anchor_(a, i);
    }
    return X;
}

Section Algebroid::bracket(const Section& s1, const Section& s2) const {
    Section out(rank_);
    for (std::size_t a = 0; a < rank_; ++a) {
        if (s1[a].is_zero()) continue;
        for (std::size_t b = 0; b < rank_; ++b) {
            if (s2[b].is_zero()) continue;
            Scalar f = s1[a] * s2[b];
            for (std::size_t c = 0; c < rank_; ++c)
                if (!C_(c, a, b).is_zero()) out[c] += f * C_(c, a, b);
        }
    }
    VectorField X1 = anchor_push(s1);
    VectorField X2 = anchor_push(s2);
    for (std::size_t c = 0; c < rank_; ++c) {
        out[c] += vf_apply(*chart_, X1, s2[c]);
        out[c] -= vf_apply(*chart_, X2, s1[c]);
    }
    return out;
}

Section Algebroid::frame(std::size_t a) const {
    Section s(rank_);
    s.at(a) = Scalar(1);
    return s;
}

const ValidationReport& Algebroid::validation() const {
    std::call_once(validated_, [this] { validation_ = std::make_unique<ValidationReport>(validate({})); });
    return *validation_;
}

ValidationReport Algebroid::validate(const ZeroTestOptions& opt) const {
    ValidationReport rep;
    const std::size_t r = rank_;
    CheckBuilder anti("antisymmetry", opt);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a; b < r; ++b)
                anti.expect_zero(C_(c, a, b) + C_(c, b, a),
                                 "C^" + std::to_string(c + 1) + "_" + std::to_string(a + 1) + std::to_string(b + 1));
    rep.antisymmetry = anti.result();

    CheckBuilder anc("anchor morphism", opt);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b) {
            VectorField res(dim());
            bool nonzero = false;
            for (std::size_t i = 0; i < dim(); ++i) {
                Scalar v = rho(a, anchor_(b, i)) - rho(b, anchor_(a, i));
                for (std::size_t c = 0; c < r; ++c)
                    if (!C_(c, a, b).is_zero()) v -= anchor_(c, i) * C_(c, a, b);
                res[i] = -v;
                if (!anc.expect_zero(v, "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") d/d" +
                                            chart_->coords()[i]))
                    nonzero = true;
            }
            if (nonzero) rep.anchor_residuals.push_back({{a, b}, res});
        }
    rep.anchor = anc.result();

    CheckBuilder jac("jacobi", opt);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            for (std::size_t c = b + 1; c < r; ++c) {
                Section J = frame_jacobiator(*this, a, b, c);
                if (is_zero(J)) continue;
                std::string where = "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                                    std::to_string(c + 1) + ")";
                for (std::size_t d = 0; d < r; ++d) jac.expect_zero(J[d], where + " e" + std::to_string(d + 1));
                if (!is_zero(J)) rep.jacobi_residuals.push_back({{a, b, c}, J});
            }
    if (!rep.jacobi_residuals.empty()) {
        const auto& [idx, J] = rep.jacobi_residuals.front();
        jac.note("first jacobiator (" + std::to_string(idx[0] + 1) + "," + std::to_string(idx[1] + 1) + "," +
                 std::to_string(idx[2] + 1) + ") = " + section_str(J));
    }
    rep.jacobi = jac.result();

    std::vector<std::vector<std::complex<double>>> num(r, std::vector<std::complex<double>>(dim()));
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            NumericPoint p = to_numeric(random_point(chart_->coords(), opt.seed, 1000 + attempt));
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t i = 0; i < dim(); ++i) num[a][i] = eval_numeric(anchor_(a, i), p);
            break;
        } catch (const PoleError&) {
        }
    }
    rep.anchor_generic_rank = numeric_rank(num);
    rep.anchor_rank_deficient = rep.anchor_generic_rank < dim();
    return rep;
}

Scalar vf_apply(const Chart& chart, const VectorField& X, const Scalar& f) {
    if (f.is_constant()) return Scalar();
    Scalar out;
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        if (X[i].is_zero()) continue;
        Scalar df = differentiate(f, chart.var(i));
        if (!df.is_zero()) out += X[i] * df;
    }
    return out;
}

VectorField vf_bracket(const Chart& chart, const VectorField& X, const VectorField& Y) {
    VectorField out(chart.dim());
    for (std::size_t i = 0; i < chart.dim(); ++i) out[i] = vf_apply(chart, X, Y[i]) - vf_apply(chart, Y, X[i]);
    return out;
}

Section jacobiator(const Algebroid& A, const Section& s1, const Section& s2, const Section& s3) {
    return A.bracket(A.bracket(s1, s2), s3) + A.bracket(A.bracket(s2, s3), s1) + A.bracket(A.bracket(s3, s1), s2);
}

Section frame_jacobiator(const Algebroid& A, std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t r = A.rank();
    Section out(r);
    const std::array<std::array<std::size_t, 3>, 3> cyc{{{a, b, c}, {b, c, a}, {c, a, b}}};
    for (const auto& [x, y, z] : cyc)
        for (std::size_t d = 0; d < r; ++d) {
            Scalar v = -A.rho(z, A.C(d, x, y));
            for (std::size_t e = 0; e < r; ++e)
                if (!A.C(e, x, y).is_zero() && !A.C(d, e, z).is_zero()) v += A.C(e, x, y) * A.C(d, e, z);
            out[d] += v;
        }
    return out;
}

Section random_section(const Algebroid& A, std::uint64_t seed, int index, int degree, bool complex) {
    std::mt19937_64 rng(seed * 6364136223846793005ull + static_cast<std::uint64_t>(index) * 1442695040888963407ull);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, degree);
    std::uniform_int_distribution<std::size_t> nterms(1, 3);
    Section s(A.rank());
    for (auto& comp : s) {
        std::size_t t = nterms(rng);
        for (std::size_t k = 0; k < t; ++k) {
            Scalar term = complex ? Scalar(ComplexRational(coef(rng), coef(rng))) : Scalar(coef(rng));
            for (std::size_t i = 0; i < A.dim(); ++i) term *= A.chart().coordinate(i).pow(deg(rng));
            comp += term;
        }
    }
    return s;
}

}  // namespace alg
