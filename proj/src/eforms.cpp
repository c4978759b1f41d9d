#include "alg/eforms.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace alg {

int sort_sign(MultiIndex& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

std::vector<MultiIndex> increasing_indices(std::size_t r, std::size_t p) {
    std::vector<MultiIndex> out;
    if (p > r) return out;
    MultiIndex idx(p);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        std::size_t k = p;
        while (k > 0 && idx[k - 1] == r - p + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

EForm::EForm(AlgebroidPtr A, std::size_t degree) : A_(std::move(A)), degree_(degree) {}

EForm EForm::function(AlgebroidPtr A, const Scalar& f) {
    EForm w(std::move(A), 0);
    w.set({}, f);
    return w;
}

EForm EForm::coframe(AlgebroidPtr A, std::size_t a) {
    EForm w(std::move(A), 1);
    w.set({a}, Scalar(1));
    return w;
}

Scalar EForm::operator[](MultiIndex idx) const {
    int s = sort_sign(idx);
    if (s == 0) return Scalar();
    auto it = comps_.find(idx);
    if (it == comps_.end()) return Scalar();
    return s > 0 ? it->second : -it->second;
}

void EForm::set(MultiIndex idx, const Scalar& v) {
    if (idx.size() != degree_) throw std::invalid_argument("index length differs from form degree");
    int s = sort_sign(idx);
    if (s == 0) {
        if (!v.is_zero()) throw std::invalid_argument("nonzero value on a repeated index");
        return;
    }
    if (v.is_zero()) {
        comps_.erase(idx);
    } else {
        comps_[idx] = s > 0 ? v : -v;
    }
}

void EForm::add(MultiIndex idx, const Scalar& v) {
    if (v.is_zero()) return;
    int s = sort_sign(idx);
    if (s == 0) return;
    Scalar nv = comps_.count(idx) ? comps_[idx] + (s > 0 ? v : -v) : (s > 0 ? v : -v);
    if (nv.is_zero()) {
        comps_.erase(idx);
    } else {
        comps_[idx] = nv;
    }
}

EForm EForm::operator-() const {
    EForm w = *this;
    for (auto& [k, v] : w.comps_) v = -v;
    return w;
}

EForm operator+(const EForm& a, const EForm& b) {
    if (a.degree_ != b.degree_) throw std::invalid_argument("adding forms of different degree");
    EForm w = a;
    for (const auto& [k, v] : b.comps_) w.add(k, v);
    w.tagged_ = a.tagged_ || b.tagged_;
    return w;
}

EForm operator-(const EForm& a, const EForm& b) { return a + (-b); }

EForm operator*(const Scalar& f, const EForm& w) {
    EForm out(w.A_, w.degree_);
    if (f.is_zero()) return out;
    for (const auto& [k, v] : w.comps_) out.comps_[k] = f * v;
    out.tagged_ = w.tagged_;
    return out;
}

bool operator==(const EForm& a, const EForm& b) { return a.degree_ == b.degree_ && a.comps_ == b.comps_; }

std::string EForm::str(const std::string& basis) const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : comps_) {
        if (!out.empty()) out += " + ";
        std::string c = v.str();
        bool simple = v.num().size() == 1 && v.den().is_one();
        out += simple ? c : "(" + c + ")";
        for (std::size_t j = 0; j < k.size(); ++j) out += (j == 0 ? "*" : "^") + basis + std::to_string(k[j] + 1);
    }
    return out;
}

EForm wedge(const EForm& a, const EForm& b) {
    EForm out(a.algebroid(), a.degree() + b.degree());
    for (const auto& [I, x] : a.components())
        for (const auto& [J, y] : b.components()) {
            MultiIndex K = I;
            K.insert(K.end(), J.begin(), J.end());
            out.add(K, x * y);
        }
    if (a.from_invalid_algebroid() || b.from_invalid_algebroid()) out.tag_invalid();
    return out;
}

EForm d(const EForm& w) {
    const Algebroid& A = *w.algebroid();
    const std::size_t r = A.rank();
    const std::size_t p = w.degree();
    EForm out(w.algebroid(), p + 1);
    if (w.is_zero()) return out;
    for (const MultiIndex& K : increasing_indices(r, p + 1)) {
        Scalar v;
        for (std::size_t t = 0; t <= p; ++t) {
            MultiIndex rest;
            for (std::size_t j = 0; j <= p; ++j)
                if (j != t) rest.push_back(K[j]);
            Scalar term = A.rho(K[t], w[rest]);
            v += (t % 2 == 0) ? term : -term;
        }
        for (std::size_t t = 0; t <= p; ++t)
            for (std::size_t u = t + 1; u <= p; ++u) {
                MultiIndex rest;
                for (std::size_t j = 0; j <= p; ++j)
                    if (j != t && j != u) rest.push_back(K[j]);
                Scalar term;
                for (std::size_t c = 0; c < r; ++c) {
                    const Scalar& C = A.C(c, K[t], K[u]);
                    if (C.is_zero()) continue;
                    MultiIndex idx{c};
                    idx.insert(idx.end(), rest.begin(), rest.end());
                    Scalar wc = w[idx];
                    if (!wc.is_zero()) term += C * wc;
                }
                v += ((t + u) % 2 == 0) ? term : -term;
            }
        out.add(K, v);
    }
    if (w.from_invalid_algebroid() || !A.is_valid()) out.tag_invalid();
    return out;
}

namespace {

Scalar det_small(const std::vector<std::vector<Scalar>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Scalar(1);
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Matrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = m[i][j];
    return determinant(M);
}

}  // namespace

Scalar evaluate(const EForm& w, const std::vector<Section>& sections) {
    if (sections.size() != w.degree()) throw std::invalid_argument("wrong number of sections");
    Scalar out;
    for (const auto& [I, v] : w.components()) {
        std::vector<std::vector<Scalar>> m(I.size(), std::vector<Scalar>(I.size()));
        for (std::size_t k = 0; k < I.size(); ++k)
            for (std::size_t j = 0; j < I.size(); ++j) m[k][j] = sections[j][I[k]];
        out += v * det_small(m);
    }
    return out;
}

EForm pullback(const EForm& w, const Matrix& P, AlgebroidPtr target) {
    EForm out(target, w.degree());
    std::vector<Section> cols;
    for (std::size_t mu = 0; mu < P.cols(); ++mu) cols.push_back(P.col(mu));
    for (const MultiIndex& K : increasing_indices(P.cols(), w.degree())) {
        std::vector<Section> args;
        for (std::size_t k : K) args.push_back(cols[k]);
        out.add(K, evaluate(w, args));
    }
    return out;
}

EForm conjugate(const EForm& w) {
    EForm out(w.algebroid(), w.degree());
    for (const auto& [k, v] : w.components()) out.add(k, conjugate(v));
    return out;
}

EForm random_form(AlgebroidPtr A, std::size_t degree, std::uint64_t seed, int index, bool complex) {
    std::mt19937_64 rng(seed * 0xD1B54A32D192ED03ull + static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ull);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, 2);
    std::bernoulli_distribution keep(0.7);
    EForm w(A, degree);
    for (const MultiIndex& K : increasing_indices(A->rank(), degree)) {
        if (!keep(rng)) continue;
        Scalar v;
        for (int t = 0; t < 2; ++t) {
            Scalar term = complex ? Scalar(ComplexRational(coef(rng), coef(rng))) : Scalar(coef(rng));
            for (std::size_t i = 0; i < A->dim(); ++i) term *= A->chart().coordinate(i).pow(deg(rng));
            v += term;
        }
        w.add(K, v);
    }
    return w;
}

Check d_squared_check(const AlgebroidPtr& A, int count, const ZeroTestOptions& opt) {
    CheckBuilder cb("d(d w) = 0", opt);
    int done = 0;
    for (std::size_t p = 0; p + 2 <= A->rank(); ++p)
        for (int k = 0; k < count; ++k) {
            EForm w = random_form(A, p, opt.seed, static_cast<int>(p) * 1000 + k);
            EForm dd = d(d(w));
            ++done;
            for (const auto& [I, v] : dd.components()) {
                std::string idx;
                for (std::size_t i : I) idx += std::to_string(i + 1);
                if (!cb.expect_zero(v, "degree " + std::to_string(p) + " form #" + std::to_string(k + 1) + " [" + idx + "]"))
                    break;
            }
        }
    cb.note(std::to_string(done) + " random forms");
    return cb.result();
}

}  // namespace alg
