#include "alg/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <shared_mutex>
#include <unordered_map>

#include "alg/expr.hpp"

namespace alg {

// ---- variable registry ----

namespace {

struct Registry {
    std::shared_mutex mu;
    std::deque<VarInfo> vars;
    std::unordered_map<std::string, VarId> by_key;
};

Registry& registry() {
    static Registry r;
    return r;
}

VarId intern(const std::string& lookup, VarInfo info) {
    Registry& r = registry();
    {
        std::shared_lock lock(r.mu);
        auto it = r.by_key.find(lookup);
        if (it != r.by_key.end()) return it->second;
    }
    std::unique_lock lock(r.mu);
    auto it = r.by_key.find(lookup);
    if (it != r.by_key.end()) return it->second;
    auto id = static_cast<VarId>(r.vars.size());
    r.vars.push_back(std::move(info));
    r.by_key.emplace(lookup, id);
    return id;
}

}  // namespace

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Sqrt: return "sqrt";
    }
    return "?";
}

std::optional<Func> func_from_name(std::string_view name) {
    if (name == "sin") return Func::Sin;
    if (name == "cos") return Func::Cos;
    if (name == "exp") return Func::Exp;
    if (name == "log") return Func::Log;
    if (name == "sqrt") return Func::Sqrt;
    return std::nullopt;
}

const VarInfo& var_info(VarId v) {
    Registry& r = registry();
    std::shared_lock lock(r.mu);
    return r.vars.at(v);
}

const std::string& var_key(VarId v) { return var_info(v).key; }

VarId coordinate_var(std::string_view name) {
    std::string n(name);
    VarInfo info{VarInfo::Kind::Coordinate, n, Func::Sin, nullptr, n};
    return intern("c:" + n, std::move(info));
}

std::optional<VarId> find_coordinate_var(std::string_view name) {
    Registry& r = registry();
    std::shared_lock lock(r.mu);
    auto it = r.by_key.find("c:" + std::string(name));
    if (it == r.by_key.end()) return std::nullopt;
    return it->second;
}

// ---- canonical representation ----

struct Scalar::Rep {
    Poly num;
    Poly den;
    std::size_t hash;
};

namespace {

/// Printer order: higher total degree first, then lexicographic on variable keys.
int print_compare(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    auto keyed = [](const Monomial& m) {
        std::vector<std::pair<const std::string*, std::uint32_t>> out;
        for (const auto& [v, e] : m.factors()) out.emplace_back(&var_key(v), e);
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return *x.first < *y.first; });
        return out;
    };
    auto ka = keyed(a);
    auto kb = keyed(b);
    std::size_t i = 0;
    while (i < ka.size() && i < kb.size()) {
        if (*ka[i].first != *kb[i].first) return *ka[i].first < *kb[i].first ? 1 : -1;
        if (ka[i].second != kb[i].second) return ka[i].second > kb[i].second ? 1 : -1;
        ++i;
    }
    if (i < ka.size()) return 1;
    if (i < kb.size()) return -1;
    return 0;
}

const ComplexRational& print_leading_coeff(const Poly& p) {
    const Term* best = &p.terms().front();
    for (const auto& t : p.terms())
        if (print_compare(t.m, best->m) > 0) best = &t;
    return best->c;
}

}  // namespace

std::shared_ptr<const Scalar::Rep> Scalar::zero_rep() {
    static auto z = std::make_shared<const Rep>(Rep{Poly(), Poly(ComplexRational(1)), 0});
    return z;
}

Scalar::Scalar() : rep_(zero_rep()) {}

Scalar::Scalar(long n) : Scalar(ComplexRational(n)) {}

Scalar::Scalar(const ComplexRational& c) {
    if (c.is_zero()) {
        rep_ = zero_rep();
        return;
    }
    Poly num(c);
    Poly den(ComplexRational(1));
    std::size_t h = num.hash() * 7 + den.hash();
    rep_ = std::make_shared<const Rep>(Rep{std::move(num), std::move(den), h});
}

Scalar Scalar::coordinate(std::string_view name) {
    return make_reduced(Poly::var(coordinate_var(name)), Poly(ComplexRational(1)));
}

Scalar Scalar::imag_unit() { return Scalar(ComplexRational::imag_unit()); }

Scalar Scalar::rational(long num, long den) { return Scalar(ComplexRational::from_fraction(num, den)); }

Scalar Scalar::make_reduced(Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero("division by a structurally zero expression");
    if (num.is_zero()) return Scalar();
    if (den.is_constant()) {
        ComplexRational c = den.constant_value();
        num = num.scaled(ComplexRational(1) / c);
        den = Poly(ComplexRational(1));
    } else {
        ComplexRational c = print_leading_coeff(den);
        if (!c.is_one()) {
            ComplexRational inv = ComplexRational(1) / c;
            num = num.scaled(inv);
            den = den.scaled(inv);
        }
    }
    std::size_t h = num.hash() * 7 + den.hash();
    return Scalar(std::make_shared<const Rep>(Rep{std::move(num), std::move(den), h}));
}

Scalar Scalar::fraction(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZero("division by a structurally zero expression");
    if (num.is_zero() || den.is_constant()) return make_reduced(num, den);
    Poly g = gcd(num, den);
    if (g.is_constant()) return make_reduced(num, den);
    return make_reduced(*divide_exact(num, g), *divide_exact(den, g));
}

Scalar poly_scalar(const Poly& p) { return Scalar::fraction(p, Poly(ComplexRational(1))); }

const Poly& Scalar::num() const { return rep_->num; }
const Poly& Scalar::den() const { return rep_->den; }

std::optional<ComplexRational> Scalar::constant() const {
    if (!is_constant()) return std::nullopt;
    return num().constant_value() / den().constant_value();
}

std::vector<VarId> Scalar::vars() const {
    std::vector<VarId> a = num().vars();
    std::vector<VarId> b = den().vars();
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

bool Scalar::has_atoms() const {
    for (VarId v : vars())
        if (var_info(v).kind == VarInfo::Kind::Atom) return true;
    return false;
}

std::vector<std::string> Scalar::coordinates() const {
    std::set<std::string> out;
    for (VarId v : vars()) {
        const VarInfo& info = var_info(v);
        if (info.kind == VarInfo::Kind::Coordinate) {
            out.insert(info.name);
        } else {
            for (auto& c : info.arg->coordinates()) out.insert(c);
        }
    }
    return {out.begin(), out.end()};
}

Scalar Scalar::operator-() const {
    if (is_zero()) return *this;
    return make_reduced(-num(), den());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Poly& an = a.num();
    const Poly& ad = a.den();
    const Poly& bn = b.num();
    const Poly& bd = b.den();
    if (ad.is_one() && bd.is_one()) return Scalar::make_reduced(an + bn, ad);
    if (ad.is_one()) return Scalar::make_reduced(an * bd + bn, bd);
    if (bd.is_one()) return Scalar::make_reduced(an + bn * ad, ad);
    if (ad == bd) return Scalar::fraction(an + bn, ad);
    Poly g = gcd(ad, bd);
    if (g.is_constant()) return Scalar::make_reduced(an * bd + bn * ad, ad * bd);
    Poly ad1 = *divide_exact(ad, g);
    Poly bd1 = *divide_exact(bd, g);
    Poly t = an * bd1 + bn * ad1;
    if (t.is_zero()) return Scalar();
    Poly h = gcd(t, g);
    if (h.is_constant()) return Scalar::make_reduced(std::move(t), ad * bd1);
    return Scalar::make_reduced(*divide_exact(t, h), *divide_exact(ad, h) * bd1);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    const Poly& an = a.num();
    const Poly& ad = a.den();
    const Poly& bn = b.num();
    const Poly& bd = b.den();
    if (ad.is_one() && bd.is_one()) return Scalar::make_reduced(an * bn, ad);
    Poly g1 = bd.is_one() ? Poly(ComplexRational(1)) : gcd(an, bd);
    Poly g2 = ad.is_one() ? Poly(ComplexRational(1)) : gcd(bn, ad);
    Poly n1 = g1.is_constant() ? an : *divide_exact(an, g1);
    Poly d2 = g1.is_constant() ? bd : *divide_exact(bd, g1);
    Poly n2 = g2.is_constant() ? bn : *divide_exact(bn, g2);
    Poly d1 = g2.is_constant() ? ad : *divide_exact(ad, g2);
    return Scalar::make_reduced(n1 * n2, d1 * d2);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DivisionByZero("division by a structurally zero expression");
    Scalar inv = Scalar::make_reduced(b.den(), b.num());
    return a * inv;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.rep_ == b.rep_) return true;
    if (a.rep_->hash != b.rep_->hash) return false;
    return a.num() == b.num() && a.den() == b.den();
}

Scalar Scalar::pow(long e) const {
    if (e == 0) return Scalar(1);
    if (e < 0) return Scalar(1) / pow(-e);
    return make_reduced(num().pow(static_cast<unsigned>(e)), den().pow(static_cast<unsigned>(e)));
}

std::size_t Scalar::hash() const { return rep_->hash; }

std::string Scalar::str() const { return to_expr(*this).str(); }

Scalar Scalar::apply(Func f, const Scalar& arg) {
    if (auto c = arg.constant()) {
        if (c->is_zero()) {
            if (f == Func::Sin || f == Func::Sqrt) return Scalar();
            if (f == Func::Cos || f == Func::Exp) return Scalar(1);
        }
        if (c->is_one()) {
            if (f == Func::Log) return Scalar();
            if (f == Func::Sqrt) return Scalar(1);
        }
    }
    std::string key = std::string(func_name(f)) + "(" + arg.str() + ")";
    VarInfo info{VarInfo::Kind::Atom, func_name(f), f, std::make_shared<const Scalar>(arg), key};
    VarId v = intern("a:" + key, std::move(info));
    return make_reduced(Poly::var(v), Poly(ComplexRational(1)));
}

// ---- calculus and maps ----

namespace {

Scalar atom_derivative(const VarInfo& info, VarId coord) {
    const Scalar& u = *info.arg;
    Scalar du = differentiate(u, coord);
    if (du.is_zero()) return Scalar();
    switch (info.func) {
        case Func::Sin: return Scalar::apply(Func::Cos, u) * du;
        case Func::Cos: return -(Scalar::apply(Func::Sin, u) * du);
        case Func::Exp: return Scalar::apply(Func::Exp, u) * du;
        case Func::Log: return du / u;
        case Func::Sqrt: return du / (Scalar(2) * Scalar::apply(Func::Sqrt, u));
    }
    return Scalar();
}

}  // namespace

Scalar differentiate(const Scalar& s, VarId coord) {
    if (s.is_constant()) return Scalar();
    std::vector<VarId> vs = s.vars();
    bool atoms = false;
    for (VarId v : vs)
        if (var_info(v).kind == VarInfo::Kind::Atom) atoms = true;
    if (!atoms) {
        if (!std::binary_search(vs.begin(), vs.end(), coord)) return Scalar();
        Poly dn = s.num().derivative(coord);
        if (s.den().is_one()) return poly_scalar(dn);
        Poly dd = s.den().derivative(coord);
        return Scalar::fraction(dn * s.den() - s.num() * dd, s.den() * s.den());
    }
    auto dpoly = [&](const Poly& p) {
        Scalar out;
        for (VarId v : p.vars()) {
            const VarInfo& info = var_info(v);
            Scalar dv;
            if (info.kind == VarInfo::Kind::Coordinate) {
                if (v != coord) continue;
                dv = Scalar(1);
            } else {
                dv = atom_derivative(info, coord);
                if (dv.is_zero()) continue;
            }
            out += poly_scalar(p.derivative(v)) * dv;
        }
        return out;
    };
    Scalar dn = dpoly(s.num());
    if (s.den().is_one()) return dn;
    Scalar n = poly_scalar(s.num());
    Scalar d = poly_scalar(s.den());
    return (dn * d - n * dpoly(s.den())) / (d * d);
}

Scalar differentiate(const Scalar& s, std::string_view coord) {
    auto v = find_coordinate_var(coord);
    if (!v) return Scalar();
    return differentiate(s, *v);
}

namespace {

template <class F>
Scalar eval_poly_in_scalars(const Poly& p, F&& value_of) {
    Scalar out;
    for (const auto& t : p.terms()) {
        Scalar term(t.c);
        for (const auto& [v, e] : t.m.factors()) term *= value_of(v).pow(e);
        out += term;
    }
    return out;
}

}  // namespace

Scalar conjugate(const Scalar& s) {
    if (!s.has_atoms()) return Scalar::fraction(s.num().conj_coeffs(), s.den().conj_coeffs());
    std::unordered_map<VarId, Scalar> cache;
    auto value_of = [&](VarId v) -> Scalar {
        auto it = cache.find(v);
        if (it != cache.end()) return it->second;
        const VarInfo& info = var_info(v);
        Scalar r = info.kind == VarInfo::Kind::Coordinate
                       ? poly_scalar(Poly::var(v))
                       : Scalar::apply(info.func, conjugate(*info.arg));
        cache.emplace(v, r);
        return r;
    };
    return eval_poly_in_scalars(s.num().conj_coeffs(), value_of) /
           eval_poly_in_scalars(s.den().conj_coeffs(), value_of);
}

Scalar real_part(const Scalar& s) { return (s + conjugate(s)) / Scalar(2); }

Scalar imag_part(const Scalar& s) { return (s - conjugate(s)) / (Scalar(2) * Scalar::imag_unit()); }

Scalar substitute(const Scalar& s, const std::map<std::string, Scalar>& subs) {
    std::unordered_map<VarId, Scalar> cache;
    std::function<Scalar(VarId)> value_of = [&](VarId v) -> Scalar {
        auto it = cache.find(v);
        if (it != cache.end()) return it->second;
        const VarInfo& info = var_info(v);
        Scalar r;
        if (info.kind == VarInfo::Kind::Coordinate) {
            auto jt = subs.find(info.name);
            r = jt != subs.end() ? jt->second : poly_scalar(Poly::var(v));
        } else {
            r = Scalar::apply(info.func, substitute(*info.arg, subs));
        }
        cache.emplace(v, r);
        return r;
    };
    return eval_poly_in_scalars(s.num(), value_of) / eval_poly_in_scalars(s.den(), value_of);
}

// ---- evaluation ----

namespace {

ComplexRational eval_poly_exact(const Poly& p, const std::unordered_map<VarId, ComplexRational>& values) {
    ComplexRational out;
    for (const auto& t : p.terms()) {
        ComplexRational term = t.c;
        for (const auto& [v, e] : t.m.factors()) term *= values.at(v).pow(e);
        out += term;
    }
    return out;
}

std::complex<double> apply_numeric(Func f, std::complex<double> z) {
    switch (f) {
        case Func::Sin: return std::sin(z);
        case Func::Cos: return std::cos(z);
        case Func::Exp: return std::exp(z);
        case Func::Log: return std::log(z);
        case Func::Sqrt: return std::sqrt(z);
    }
    return {};
}

}  // namespace

std::optional<ComplexRational> eval_exact(const Scalar& s, const Point& p) {
    std::unordered_map<VarId, ComplexRational> values;
    for (VarId v : s.vars()) {
        const VarInfo& info = var_info(v);
        if (info.kind == VarInfo::Kind::Atom) return std::nullopt;
        auto it = p.find(info.name);
        if (it == p.end()) throw std::invalid_argument("point does not cover coordinate " + info.name);
        values.emplace(v, it->second);
    }
    ComplexRational d = eval_poly_exact(s.den(), values);
    if (d.is_zero()) throw PoleError("denominator vanishes at the evaluation point");
    return eval_poly_exact(s.num(), values) / d;
}

std::complex<double> eval_numeric(const Scalar& s, const NumericPoint& p) {
    std::unordered_map<VarId, std::complex<double>> values;
    for (VarId v : s.vars()) {
        const VarInfo& info = var_info(v);
        std::complex<double> val;
        if (info.kind == VarInfo::Kind::Coordinate) {
            auto it = p.find(info.name);
            if (it == p.end()) throw std::invalid_argument("point does not cover coordinate " + info.name);
            val = it->second;
        } else {
            val = apply_numeric(info.func, eval_numeric(*info.arg, p));
        }
        values.emplace(v, val);
    }
    auto ev = [&](const Poly& q) {
        std::complex<double> out;
        for (const auto& t : q.terms()) {
            std::complex<double> term = t.c.to_complex();
            for (const auto& [v, e] : t.m.factors()) term *= std::pow(values.at(v), static_cast<int>(e));
            out += term;
        }
        return out;
    };
    std::complex<double> d = ev(s.den());
    if (std::abs(d) == 0.0) throw PoleError("denominator vanishes at the evaluation point");
    return ev(s.num()) / d;
}

NumericPoint to_numeric(const Point& p) {
    NumericPoint out;
    for (const auto& [k, v] : p) out.emplace(k, v.to_complex());
    return out;
}

Point random_point(const std::vector<std::string>& coords, std::uint64_t seed, int index) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(index) * 0xBF58476D1CE4E5B9ull + 1);
    std::uniform_int_distribution<long> num(-97, 97);
    std::uniform_int_distribution<long> den(1, 97);
    std::uniform_int_distribution<int> sign(0, 1);
    Point p;
    for (const auto& c : coords) {
        long n = num(rng);
        long d = den(rng) * (sign(rng) ? -1 : 1);
        p.emplace(c, ComplexRational::from_fraction(n, d));
    }
    return p;
}

ZeroTest zero_test(const Scalar& s, const ZeroTestOptions& opt) {
    if (s.is_zero()) return {ZeroTest::Status::StructurallyZero, std::nullopt, {}, false};
    ZeroTest out{ZeroTest::Status::ProbablyNonzero, std::nullopt, {}, false};
    std::vector<std::string> coords = s.coordinates();
    const bool exact = !s.has_atoms();
    int evaluated = 0;
    for (int k = 0; evaluated < opt.samples && k < 4 * opt.samples + 16; ++k) {
        Point p = random_point(coords, opt.seed, k);
        try {
            std::complex<double> val;
            bool nonzero;
            if (exact) {
                ComplexRational v = *eval_exact(s, p);
                nonzero = !v.is_zero();
                val = v.to_complex();
            } else {
                val = eval_numeric(s, to_numeric(p));
                nonzero = std::abs(val) > opt.tol;
            }
            ++evaluated;
            if (nonzero) {
                out.witness = std::move(p);
                out.witness_value = val;
                return out;
            }
        } catch (const PoleError&) {
            continue;
        }
    }
    if (evaluated == 0) throw PoleError("every sample point is a pole of the expression");
    out.all_samples_zero = true;
    return out;
}

}  // namespace alg
