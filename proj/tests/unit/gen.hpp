#pragma once

// Hand-rolled random generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "alg/expr.hpp"

namespace alg::testgen {

inline ComplexRational small_rational(std::mt19937_64& rng, bool complex = false) {
    std::uniform_int_distribution<long> n(-5, 5);
    std::uniform_int_distribution<long> d(1, 4);
    mpq_class re(n(rng), d(rng));
    re.canonicalize();
    if (!complex) return ComplexRational(re);
    mpq_class im(n(rng), d(rng));
    im.canonicalize();
    return ComplexRational(re, im);
}

/// Random tree over the given coordinates; atoms only when allow_atoms.
inline Expr random_expr(std::mt19937_64& rng, const std::vector<std::string>& coords, int depth,
                        bool allow_atoms = false, bool complex = false) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : (allow_atoms ? 8 : 7));
    int k = pick(rng);
    if (k == 0) return Expr::constant(small_rational(rng, complex));
    if (k == 1) {
        std::uniform_int_distribution<std::size_t> c(0, coords.size() - 1);
        return Expr::symbol(coords[c(rng)]);
    }
    auto sub = [&] { return random_expr(rng, coords, depth - 1, allow_atoms, complex); };
    switch (k) {
        case 2:
        case 3: return Expr::add({sub(), sub()});
        case 4:
        case 5: return Expr::mul({sub(), sub()});
        case 6: return Expr::div(sub(), sub());
        case 7: {
            std::uniform_int_distribution<long> e(0, 3);
            return Expr::pow(sub(), e(rng));
        }
        default: {
            std::uniform_int_distribution<int> f(0, 2);
            Func fs[] = {Func::Sin, Func::Exp, Func::Cos};
            return Expr::call(fs[f(rng)], sub());
        }
    }
}

/// Random polynomial with small coefficients.
inline Scalar random_poly(std::mt19937_64& rng, const std::vector<std::string>& coords, int terms, int max_deg,
                          bool complex = false) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    Scalar out;
    for (int t = 0; t < terms; ++t) {
        Scalar term(small_rational(rng, complex));
        for (const auto& c : coords) term *= Scalar::coordinate(c).pow(deg(rng));
        out += term;
    }
    return out;
}

}  // namespace alg::testgen
