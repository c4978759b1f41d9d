#include "alg/fixtures.hpp"

#include <stdexcept>

#include "alg/constructions.hpp"
#include "alg/expr.hpp"

namespace alg {

namespace {

std::shared_ptr<const Chart> make_chart(const std::string& name, std::vector<std::string> coords) {
    return std::make_shared<const Chart>(name, std::move(coords));
}

/// Tangent algebroid of a chart: identity anchor, zero brackets.
AlgebroidPtr tangent(const std::string& name, const std::shared_ptr<const Chart>& chart) {
    const std::size_t n = chart->dim();
    std::vector<std::string> labels;
    for (const auto& c : chart->coords()) labels.push_back("d_" + c);
    return Algebroid::make(name, chart, Matrix::identity(n), Tensor3(n), labels);
}

/// J e_{2k} = e_{2k+1} on consecutive pairs (0-based).
Matrix standard_J(std::size_t r) {
    Matrix J(r, r);
    for (std::size_t k = 0; k + 1 < r; k += 2) {
        J(k + 1, k) = Scalar(1);
        J(k, k + 1) = Scalar(-1);
    }
    return J;
}

Geometry heisenberg(bool broken) {
    auto chart = make_chart("line", {"x"});
    Tensor3 upper(4);
    upper(2, 0, 1) = Scalar(1);  // [e1,e2] = e3
    if (broken) upper(0, 0, 2) = Scalar(1);  // [e1,e3] = e1
    Matrix J(4, 4);
    J(2, 0) = Scalar(1);  // J e1 = e3
    J(0, 2) = Scalar(-1);
    J(3, 1) = Scalar(1);  // J e2 = e4
    J(1, 3) = Scalar(-1);
    std::string name = broken ? "heis_broken" : "heis_j";
    return {name, Algebroid::make(name, chart, Matrix(4, 1), Algebroid::antisymmetrize(upper)), J,
            Matrix::identity(4)};
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

/// Splits "a,b" at the top-level comma.
std::pair<std::string, std::string> split_args(const std::string& s) {
    int depth = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '(') ++depth;
        if (s[k] == ')') --depth;
        if (s[k] == ',' && depth == 0) return {trim(s.substr(0, k)), trim(s.substr(k + 1))};
    }
    throw std::invalid_argument("expected two fixture arguments in '" + s + "'");
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"flat_r2", "flat_r4", "heis_j", "heis_broken", "warped_r4", "conformal_sphere_chart", "s3_projector"};
}

Geometry fixture(const std::string& expr0) {
    const std::string expr = trim(expr0);
    auto open = expr.find('(');
    if (open != std::string::npos) {
        if (expr.back() != ')') throw std::invalid_argument("malformed fixture expression '" + expr + "'");
        std::string head = trim(expr.substr(0, open));
        std::string inner = expr.substr(open + 1, expr.size() - open - 2);
        if (head == "prolong") return prolong_geometry(fixture(inner));
        if (head == "product") {
            auto [a, b] = split_args(inner);
            return product_geometry(fixture(a), fixture(b));
        }
        throw std::invalid_argument("unknown fixture constructor '" + head + "'");
    }
    if (expr == "flat_r2") {
        auto chart = make_chart("r2", {"x", "y"});
        return {expr, tangent(expr, chart), standard_J(2), Matrix::identity(2)};
    }
    if (expr == "flat_r4") {
        auto chart = make_chart("r4", {"x1", "x2", "x3", "x4"});
        return {expr, tangent(expr, chart), standard_J(4), Matrix::identity(4)};
    }
    if (expr == "heis_j") return heisenberg(false);
    if (expr == "heis_broken") return heisenberg(true);
    if (expr == "warped_r4") {
        auto chart = make_chart("r4", {"x1", "x2", "x3", "x4"});
        Scalar f = parse_scalar("1 + x3^2", *chart);
        Matrix g = Matrix::identity(4);
        g(0, 0) = f;
        g(1, 1) = f;
        return {expr, tangent(expr, chart), standard_J(4), g};
    }
    if (expr == "conformal_sphere_chart") {
        auto chart = make_chart("r2", {"x", "y"});
        Scalar lambda = parse_scalar("4/(1 + x^2 + y^2)^2", *chart);
        return {expr, tangent(expr, chart), standard_J(2), Matrix::identity(2).scaled(lambda)};
    }
    if (expr == "s3_projector") return s3_projector().geometry;
    throw std::invalid_argument("unknown fixture '" + expr + "'");
}

bool is_fixture_expr(const std::string& expr) {
    std::string e = trim(expr);
    auto open = e.find('(');
    std::string head = open == std::string::npos ? e : trim(e.substr(0, open));
    if (head == "prolong" || head == "product") return true;
    for (const auto& n : fixture_names())
        if (n == head) return true;
    return false;
}

}  // namespace alg
