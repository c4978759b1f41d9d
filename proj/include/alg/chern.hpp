#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alg/prodgeom.hpp"

namespace alg {

/// Square matrix of forms, entry (row, col).
using FormMatrix = std::vector<std::vector<EForm>>;

FormMatrix form_matmul(const FormMatrix& a, const FormMatrix& b);
EForm form_trace(const FormMatrix& a);

/// Blocks of the matrix of J R over an adapted frame (u_a, J u_a):
/// (J R)(s1,s2) u_a = R^b_a u_b + R^{b*}_a J u_b.
struct BlockCurvature {
    std::size_t m = 0;
    FormMatrix R, Rstar;
    /// [[R, -R*], [R*, R]]
    FormMatrix block() const;
};

/// Throws PreconditionError when D J != 0.
BlockCurvature block_curvature(const Connection& D, const Matrix& J, const Matrix& adapted,
                               const ZeroTestOptions& opt = {});

struct ChernOrder {
    int k = 1;
    std::optional<EForm> iphi_form;   // trace((i Phi)^k)
    std::optional<EForm> block_form;  // 1/2 trace(block^k)
    /// Constant c with trace((i Phi)^k) = c trace(block^k), or "none" when both vanish.
    std::string factor;
    Check equality;  // trace((i Phi)^k) = 1/2 trace(block^k)
    Check closed;    // d of both forms vanishes
    Check real;      // imaginary part of trace((i Phi)^k) vanishes
};

struct ChernReport {
    /// "levi-civita" when it is almost complex, otherwise "metric product".
    std::string connection;
    std::optional<BlockCurvature> blocks;
    /// Phi^b_a from the curvature of the connection restricted to E^{1,0} in the frame f_a = u_a - i J u_a.
    FormMatrix phi;
    Check almost_complex;  // D J = 0
    Check commutes;        // J R = R J, giving the block pattern
    Check preserved;       // R(s1,s2) maps E^{1,0} to itself
    Check iphi_blocks;     // Phi^b_a = R^{b*}_a - i R^b_a
    Check symmetry;        // R symmetric, R* skew, over an orthonormal adapted frame
    std::vector<ChernOrder> orders;
    std::vector<Check> checks() const;
};

/// Uses the Levi-Civita connection when it is almost complex, otherwise the metric product connection.
/// Throws PreconditionError without J and g, or for a non-Hermitian g; std::invalid_argument for k < 1.
ChernReport chern_report(const Geometry& G, const std::vector<int>& orders, const ZeroTestOptions& opt = {});

}  // namespace alg
