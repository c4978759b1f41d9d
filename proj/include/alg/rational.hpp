#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>

namespace alg {

/// Exact element of Q(i). Both parts are kept in lowest terms by GMP.
class ComplexRational {
public:
    ComplexRational() = default;
    ComplexRational(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
    ComplexRational(mpq_class re, mpq_class im = 0);
    static ComplexRational from_fraction(long num, long den);
    static ComplexRational imag_unit() { return ComplexRational(0, 1); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    ComplexRational conj() const { return {re_, -im_}; }
    ComplexRational operator-() const { return {-re_, -im_}; }

    ComplexRational& operator+=(const ComplexRational& o);
    ComplexRational& operator-=(const ComplexRational& o);
    ComplexRational& operator*=(const ComplexRational& o);
    ComplexRational& operator/=(const ComplexRational& o);

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    ComplexRational pow(long e) const;
    std::complex<double> to_complex() const;
    std::size_t hash() const;

    /// Text accepted back by the scalar grammar, e.g. "3/2", "-i", "(1+2*i)".
    std::string str() const;

private:
    mpq_class re_;
    mpq_class im_;
};

std::string rational_str(const mpq_class& q);

}  // namespace alg
