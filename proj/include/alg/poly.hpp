#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "alg/rational.hpp"

namespace alg {

using VarId = std::uint32_t;

/// Power product stored as (variable, exponent) pairs sorted by variable id.
class Monomial {
public:
    using Factor = std::pair<VarId, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors) : f_(std::move(factors)) {}
    static Monomial var(VarId v, std::uint32_t e = 1) { return Monomial({{v, e}}); }

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    std::uint32_t degree() const;
    std::uint32_t exponent(VarId v) const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// o / *this, assuming divides(o).
    Monomial quotient_of(const Monomial& o) const;
    Monomial without(VarId v) const;
    Monomial gcd(const Monomial& o) const;

    /// Lexicographic order with variable 0 most significant.
    static int compare(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

private:
    std::vector<Factor> f_;
};

struct Term {
    Monomial m;
    ComplexRational c;
};

/// Sparse multivariate polynomial over Q(i), terms in descending lex order.
class Poly {
public:
    Poly() = default;
    Poly(const ComplexRational& c);  // NOLINT(google-explicit-constructor)
    static Poly var(VarId v, std::uint32_t e = 1);
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c.is_one(); }
    bool is_monomial() const { return terms_.size() == 1; }
    ComplexRational constant_value() const;
    const Term& lead() const { return terms_.front(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly scaled(const ComplexRational& c) const;
    Poly times_term(const Monomial& m, const ComplexRational& c) const;
    Poly pow(unsigned e) const;

    std::uint32_t degree(VarId v) const;
    std::uint32_t total_degree() const;
    std::vector<VarId> vars() const;
    bool has_var(VarId v) const;
    /// Coefficients with respect to v, indexed by exponent.
    std::vector<Poly> coefficients(VarId v) const;
    static Poly from_coefficients(VarId v, const std::vector<Poly>& coeffs);
    Poly derivative(VarId v) const;
    Poly conj_coeffs() const;
    Poly map_vars(const std::function<VarId(VarId)>& f) const;

    std::size_t hash() const;

private:
    void normalize();
    std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Greatest common divisor, scaled so its lex-leading coefficient is 1.
Poly gcd(const Poly& a, const Poly& b);

/// Scales p so that its lex-leading coefficient is 1 (zero stays zero).
Poly make_monic(const Poly& p);

}  // namespace alg
