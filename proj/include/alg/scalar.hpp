#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alg/poly.hpp"
#include "alg/rational.hpp"

namespace alg {

enum class Func { Sin, Cos, Exp, Log, Sqrt };

const char* func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

class Scalar;

/// A variable of the polynomial layer: a chart coordinate or an opaque atom f(u).
struct VarInfo {
    enum class Kind { Coordinate, Atom } kind;
    std::string name;  // coordinate name
    Func func{};
    std::shared_ptr<const Scalar> arg;
    std::string key;  // ordering key used by the printer
};

const VarInfo& var_info(VarId v);
const std::string& var_key(VarId v);
VarId coordinate_var(std::string_view name);
std::optional<VarId> find_coordinate_var(std::string_view name);

class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Complex-valued function of real chart coordinates in canonical form
/// num/den: coprime, den scaled so that its printer-leading coefficient is 1.
class Scalar {
public:
    Scalar();
    Scalar(long n);                    // NOLINT(google-explicit-constructor)
    Scalar(const ComplexRational& c);  // NOLINT(google-explicit-constructor)
    static Scalar coordinate(std::string_view name);
    static Scalar imag_unit();
    static Scalar rational(long num, long den);
    static Scalar apply(Func f, const Scalar& arg);
    /// Builds num/den, cancelling common factors.
    static Scalar fraction(const Poly& num, const Poly& den);

    const Poly& num() const;
    const Poly& den() const;

    bool is_zero() const { return num().is_zero(); }
    bool is_one() const { return num().is_one() && den().is_one(); }
    bool is_constant() const { return num().is_constant() && den().is_constant(); }
    bool is_polynomial() const { return den().is_one(); }
    std::optional<ComplexRational> constant() const;
    bool has_atoms() const;
    /// Variables (coordinates and atoms) occurring in num or den.
    std::vector<VarId> vars() const;
    /// Coordinates reachable through the expression, including inside atoms.
    std::vector<std::string> coordinates() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(long e) const;
    std::size_t hash() const;
    std::string str() const;

private:
    struct Rep;
    explicit Scalar(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    static Scalar make_reduced(Poly num, Poly den);
    static std::shared_ptr<const Rep> zero_rep();
    std::shared_ptr<const Rep> rep_;
};

/// Polynomial in the variables of the registry, lifted to a Scalar.
Scalar poly_scalar(const Poly& p);

Scalar differentiate(const Scalar& s, VarId coord);
Scalar differentiate(const Scalar& s, std::string_view coord);
Scalar conjugate(const Scalar& s);
Scalar real_part(const Scalar& s);
Scalar imag_part(const Scalar& s);

/// Replaces coordinates by scalars; atoms are rebuilt around substituted arguments.
Scalar substitute(const Scalar& s, const std::map<std::string, Scalar>& subs);

using Point = std::map<std::string, ComplexRational>;
using NumericPoint = std::map<std::string, std::complex<double>>;

/// Exact value at a rational point; nullopt when the scalar contains atoms.
/// Throws PoleError when the denominator vanishes.
std::optional<ComplexRational> eval_exact(const Scalar& s, const Point& p);
std::complex<double> eval_numeric(const Scalar& s, const NumericPoint& p);
NumericPoint to_numeric(const Point& p);

struct ZeroTestOptions {
    std::uint64_t seed = 42;
    int samples = 8;
    double tol = 1e-9;
};

struct ZeroTest {
    enum class Status { StructurallyZero, ProbablyNonzero } status;
    /// Point where |value| > tol, when one was found.
    std::optional<Point> witness;
    std::complex<double> witness_value{};
    /// Nonzero canonical form whose every sample evaluated to ~0.
    bool all_samples_zero = false;
    bool is_zero() const { return status == Status::StructurallyZero; }
};

ZeroTest zero_test(const Scalar& s, const ZeroTestOptions& opt = {});

/// Random rational point with numerators/denominators in [-97, 97].
Point random_point(const std::vector<std::string>& coords, std::uint64_t seed, int index);

}  // namespace alg

template <>
struct std::hash<alg::Scalar> {
    std::size_t operator()(const alg::Scalar& s) const { return s.hash(); }
};
