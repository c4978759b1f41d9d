#include "alg/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace alg {

// ---- Monomial ----

std::uint32_t Monomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& [v, e] : f_) d += e;
    return d;
}

std::uint32_t Monomial::exponent(VarId v) const {
    for (const auto& [w, e] : f_) {
        if (w == v) return e;
        if (w > v) break;
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<Factor> out;
    out.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
        if (f_[i].first == o.f_[j].first) {
            out.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
            ++i;
            ++j;
        } else if (f_[i].first < o.f_[j].first) {
            out.push_back(f_[i++]);
        } else {
            out.push_back(o.f_[j++]);
        }
    }
    while (i < f_.size()) out.push_back(f_[i++]);
    while (j < o.f_.size()) out.push_back(o.f_[j++]);
    return Monomial(std::move(out));
}

bool Monomial::divides(const Monomial& o) const {
    std::size_t j = 0;
    for (const auto& [v, e] : f_) {
        while (j < o.f_.size() && o.f_[j].first < v) ++j;
        if (j == o.f_.size() || o.f_[j].first != v || o.f_[j].second < e) return false;
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
    std::vector<Factor> out;
    std::size_t i = 0;
    for (const auto& [v, e] : o.f_) {
        while (i < f_.size() && f_[i].first < v) ++i;
        std::uint32_t sub = (i < f_.size() && f_[i].first == v) ? f_[i].second : 0;
        if (e > sub) out.emplace_back(v, e - sub);
    }
    return Monomial(std::move(out));
}

Monomial Monomial::without(VarId v) const {
    std::vector<Factor> out;
    out.reserve(f_.size());
    for (const auto& fe : f_)
        if (fe.first != v) out.push_back(fe);
    return Monomial(std::move(out));
}

Monomial Monomial::gcd(const Monomial& o) const {
    std::vector<Factor> out;
    std::size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
        if (f_[i].first == o.f_[j].first) {
            out.emplace_back(f_[i].first, std::min(f_[i].second, o.f_[j].second));
            ++i;
            ++j;
        } else if (f_[i].first < o.f_[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return Monomial(std::move(out));
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    const auto& x = a.f_;
    const auto& y = b.f_;
    std::size_t i = 0;
    while (i < x.size() && i < y.size()) {
        if (x[i].first != y[i].first) return x[i].first < y[i].first ? 1 : -1;
        if (x[i].second != y[i].second) return x[i].second > y[i].second ? 1 : -1;
        ++i;
    }
    if (i < x.size()) return 1;
    if (i < y.size()) return -1;
    return 0;
}

// ---- Poly ----

Poly::Poly(const ComplexRational& c) {
    if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

Poly Poly::var(VarId v, std::uint32_t e) {
    Poly p;
    p.terms_.push_back({Monomial::var(v, e), ComplexRational(1)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return Monomial::compare(a.m, b.m) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c += t.c;
        } else {
            if (!out.empty() && out.back().c.is_zero()) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().c.is_zero()) out.pop_back();
    terms_ = std::move(out);
}

ComplexRational Poly::constant_value() const {
    if (terms_.empty()) return ComplexRational(0);
    if (!terms_[0].m.is_one() || terms_.size() != 1) throw std::logic_error("polynomial is not constant");
    return terms_[0].c;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.c = -t.c;
    return p;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = Monomial::compare(a[i].m, b[j].m);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (subtract) out.back().c = -out.back().c;
        } else {
            ComplexRational s = subtract ? a[i].c - b[j].c : a[i].c + b[j].c;
            if (!s.is_zero()) out.push_back({a[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) {
        out.push_back(b[j++]);
        if (subtract) out.back().c = -out.back().c;
    }
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.size() == 1) return b.times_term(a.terms_[0].m, a.terms_[0].c);
    if (b.size() == 1) return a.times_term(b.terms_[0].m, b.terms_[0].c);
    std::vector<Term> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.push_back({x.m * y.m, x.c * y.c});
    return Poly::from_terms(std::move(prod));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
        if (!(a.terms_[k].m == b.terms_[k].m) || !(a.terms_[k].c == b.terms_[k].c)) return false;
    return true;
}

Poly Poly::scaled(const ComplexRational& c) const {
    if (c.is_zero()) return Poly();
    if (c.is_one()) return *this;
    Poly p = *this;
    for (auto& t : p.terms_) t.c *= c;
    return p;
}

Poly Poly::times_term(const Monomial& m, const ComplexRational& c) const {
    if (c.is_zero()) return Poly();
    Poly p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.m * m, t.c * c});
    return p;
}

Poly Poly::pow(unsigned e) const {
    Poly result(ComplexRational(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

std::uint32_t Poly::degree(VarId v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.exponent(v));
    return d;
}

std::uint32_t Poly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
}

std::vector<VarId> Poly::vars() const {
    std::vector<VarId> out;
    for (const auto& t : terms_)
        for (const auto& [v, e] : t.m.factors()) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Poly::has_var(VarId v) const {
    for (const auto& t : terms_)
        if (t.m.exponent(v) > 0) return true;
    return false;
}

std::vector<Poly> Poly::coefficients(VarId v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (const auto& t : terms_) buckets[t.m.exponent(v)].push_back({t.m.without(v), t.c});
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        Poly p;
        p.terms_ = std::move(b);  // removing one variable keeps the relative order
        out.push_back(std::move(p));
    }
    return out;
}

Poly Poly::from_coefficients(VarId v, const std::vector<Poly>& coeffs) {
    std::vector<Term> all;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        Monomial m = e == 0 ? Monomial() : Monomial::var(v, static_cast<std::uint32_t>(e));
        for (const auto& t : coeffs[e].terms_) all.push_back({t.m * m, t.c});
    }
    return from_terms(std::move(all));
}

Poly Poly::derivative(VarId v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        std::uint32_t e = t.m.exponent(v);
        if (e == 0) continue;
        std::vector<Monomial::Factor> f;
        for (const auto& fe : t.m.factors()) {
            if (fe.first != v) {
                f.push_back(fe);
            } else if (e > 1) {
                f.emplace_back(v, e - 1);
            }
        }
        out.push_back({Monomial(std::move(f)), t.c * ComplexRational(static_cast<long>(e))});
    }
    return from_terms(std::move(out));
}

Poly Poly::conj_coeffs() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.c = t.c.conj();
    return p;
}

Poly Poly::map_vars(const std::function<VarId(VarId)>& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::vector<Monomial::Factor> fs;
        for (const auto& [v, e] : t.m.factors()) fs.emplace_back(f(v), e);
        std::sort(fs.begin(), fs.end());
        std::vector<Monomial::Factor> merged;
        for (const auto& fe : fs) {
            if (!merged.empty() && merged.back().first == fe.first) {
                merged.back().second += fe.second;
            } else {
                merged.push_back(fe);
            }
        }
        out.push_back({Monomial(std::move(merged)), t.c});
    }
    return from_terms(std::move(out));
}

std::size_t Poly::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        for (const auto& [v, e] : t.m.factors()) h = h * 1000003u + v * 131u + e;
        h = h * 31u + t.c.hash();
    }
    return h;
}

// ---- division and gcd ----

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(ComplexRational(1) / b.constant_value());
    const Term& lb = b.lead();
    ComplexRational inv = ComplexRational(1) / lb.c;
    std::vector<Term> q;
    Poly r = a;
    while (!r.is_zero()) {
        const Term& lr = r.lead();
        if (!lb.m.divides(lr.m)) return std::nullopt;
        Monomial qm = lb.m.quotient_of(lr.m);
        ComplexRational qc = lr.c * inv;
        r -= b.times_term(qm, qc);
        q.push_back({std::move(qm), std::move(qc)});
    }
    return Poly::from_terms(std::move(q));
}

Poly make_monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(ComplexRational(1) / p.lead().c);
}

namespace {

using UPoly = std::vector<Poly>;  // coefficients by exponent, no trailing zeros

void trim(UPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly content(const UPoly& u) {
    Poly g;
    for (const auto& c : u) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? make_monic(c) : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

UPoly primitive(const UPoly& u) {
    Poly c = content(u);
    UPoly out;
    out.reserve(u.size());
    for (const auto& x : u) {
        if (c.is_one()) {
            out.push_back(x);
        } else {
            auto q = divide_exact(x, c);
            if (!q) throw std::logic_error("content does not divide coefficient");
            out.push_back(std::move(*q));
        }
    }
    if (!out.empty()) {
        ComplexRational s = ComplexRational(1) / out.back().lead().c;
        for (auto& x : out) x = x.scaled(s);
    }
    return out;
}

UPoly pseudo_remainder(UPoly r, const UPoly& b) {
    const std::size_t db = b.size() - 1;
    const Poly& lcb = b.back();
    while (!r.empty() && r.size() - 1 >= db) {
        std::size_t dr = r.size() - 1;
        Poly lcr = r.back();
        std::size_t shift = dr - db;
        for (auto& x : r) x = x * lcb;
        for (std::size_t k = 0; k <= db; ++k) r[k + shift] -= lcr * b[k];
        r.back() = Poly();
        trim(r);
    }
    return r;
}

using UVec = std::vector<ComplexRational>;

/// p with every variable except v replaced by the value in pt, as coefficients in v.
UVec univariate_image(const Poly& p, VarId v, const std::map<VarId, ComplexRational>& pt) {
    UVec out(p.degree(v) + 1);
    for (const auto& t : p.terms()) {
        ComplexRational c = t.c;
        std::uint32_t e = 0;
        for (const auto& [w, k] : t.m.factors()) {
            if (w == v) {
                e = k;
            } else {
                c *= pt.at(w).pow(k);
            }
        }
        out[e] += c;
    }
    return out;
}

void trim(UVec& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

std::size_t univariate_gcd_degree(UVec a, UVec b) {
    trim(a);
    trim(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ComplexRational inv = ComplexRational(1) / b.back();
        while (a.size() >= b.size()) {
            ComplexRational q = a.back() * inv;
            std::size_t shift = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= q * b[k];
            a.pop_back();
            trim(a);
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

/// Sufficient test for gcd(a, b) = 1. If h = gcd(a, b) involved a common variable v, its image at a point
/// where lc_v(a) does not vanish would keep its v-degree and divide both images.
bool provably_coprime(const Poly& a, const Poly& b, const std::vector<VarId>& common) {
    std::map<VarId, ComplexRational> pt;
    for (VarId v : a.vars()) pt.emplace(v, ComplexRational(static_cast<long>((v * 7919u + 13u) % 89u) + 2));
    for (VarId v : b.vars()) pt.emplace(v, ComplexRational(static_cast<long>((v * 7919u + 13u) % 89u) + 2));
    for (VarId v : common) {
        UVec ia = univariate_image(a, v, pt);
        UVec ib = univariate_image(b, v, pt);
        if (ia.back().is_zero()) return false;
        if (univariate_gcd_degree(std::move(ia), std::move(ib)) > 0) return false;
    }
    return true;
}

Poly monomial_gcd(const Term& t, const Poly& p) {
    Monomial g = t.m;
    for (const auto& s : p.terms()) {
        g = g.gcd(s.m);
        if (g.is_one()) break;
    }
    return Poly::from_terms({{g, ComplexRational(1)}});
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(ComplexRational(1));
    if (a == b) return make_monic(a);
    if (a.is_monomial()) return monomial_gcd(a.lead(), b);
    if (b.is_monomial()) return monomial_gcd(b.lead(), a);

    std::vector<VarId> va = a.vars();
    std::vector<VarId> vb = b.vars();
    for (VarId v : va) {
        if (!std::binary_search(vb.begin(), vb.end(), v)) {
            Poly g = make_monic(b);
            for (const auto& c : a.coefficients(v)) {
                if (c.is_zero()) continue;
                g = gcd(g, c);
                if (g.is_constant()) break;
            }
            return g;
        }
    }
    for (VarId v : vb) {
        if (!std::binary_search(va.begin(), va.end(), v)) return gcd(b, a);
    }

    if (provably_coprime(a, b, va)) return Poly(ComplexRational(1));

    if (b.total_degree() <= a.total_degree()) {
        if (divide_exact(a, b)) return make_monic(b);
    } else if (divide_exact(b, a)) {
        return make_monic(a);
    }

    VarId v = va.front();
    UPoly ua = a.coefficients(v);
    UPoly ub = b.coefficients(v);
    // Only the smaller operand is made primitive; the remainder sequence removes the rest of the content
    // up to v-free factors, which the final primitive part drops.
    if (a.size() < b.size()) std::swap(ua, ub);
    Poly gc = content(ub);
    for (const auto& c : ua) {
        if (gc.is_constant()) break;
        if (!c.is_zero()) gc = gcd(gc, c);
    }
    UPoly pa = std::move(ua);
    UPoly pb = primitive(ub);
    if (pa.size() < pb.size()) std::swap(pa, pb);
    while (true) {
        UPoly r = pseudo_remainder(pa, pb);
        if (r.empty()) break;
        if (r.size() == 1) return gc.is_zero() ? Poly(ComplexRational(1)) : make_monic(gc);
        pa = std::move(pb);
        pb = primitive(r);
    }
    return make_monic(gc * Poly::from_coefficients(v, primitive(pb)));
}

}  // namespace alg
