#include "alg/rational.hpp"

#include <functional>
#include <stdexcept>

namespace alg {

ComplexRational::ComplexRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

ComplexRational ComplexRational::from_fraction(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return ComplexRational(q);
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ /= o.re_;
        return *this;
    }
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

ComplexRational ComplexRational::pow(long e) const {
    if (e < 0) return ComplexRational(1) / pow(-e);
    ComplexRational result(1);
    ComplexRational base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::complex<double> ComplexRational::to_complex() const { return {re_.get_d(), im_.get_d()}; }

std::size_t ComplexRational::hash() const {
    std::hash<std::string> h;
    return h(re_.get_str()) * 31 + h(im_.get_str());
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string ComplexRational::str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string imag;
    if (im_ == 1) {
        imag = "i";
    } else if (im_ == -1) {
        imag = "-i";
    } else {
        imag = rational_str(im_) + "*i";
    }
    if (sgn(re_) == 0) return imag;
    std::string out = "(" + rational_str(re_);
    if (sgn(im_) > 0) out += "+";
    out += imag + ")";
    return out;
}

}  // namespace alg
