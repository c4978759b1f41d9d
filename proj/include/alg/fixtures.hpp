#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alg/algebroid.hpp"

namespace alg {

/// An algebroid with optional almost complex structure J(b,a) = J^b_a and metric g(a,b).
struct Geometry {
    std::string name;
    AlgebroidPtr A;
    std::optional<Matrix> J;
    std::optional<Matrix> g;
};

/// Names of the built-in fixtures (without the parameterized prolong/product forms).
std::vector<std::string> fixture_names();

/// Builds a fixture from an expression such as `heis_j`, `prolong(flat_r2)` or `product(flat_r2,heis_j)`.
/// Throws std::invalid_argument for unknown names.
Geometry fixture(const std::string& expr);

/// True when `expr` parses as a fixture expression.
bool is_fixture_expr(const std::string& expr);

}  // namespace alg
