#pragma once

#include <map>

#include "alg/connections.hpp"
#include "alg/fixtures.hpp"

namespace alg {

/// Prolongation L^p(E) over the chart (x, y) with frame (X_1..X_r, V_1..V_r):
/// rho(X_a) = rho^i_a d/dx^i, rho(V_a) = d/dy^a, [X_a,X_b] = C^c_ab X_c, other frame brackets zero.
class Prolongation {
public:
    explicit Prolongation(const Geometry& base);

    const Geometry& base() const { return base_; }
    /// Lifted geometry: J^c and g^c when the base carries J and g.
    const Geometry& geometry() const { return lifted_; }
    const AlgebroidPtr& algebroid() const { return lifted_.A; }
    std::size_t base_rank() const { return r_; }
    const std::vector<std::string>& fiber_coords() const { return fiber_; }
    Scalar fiber(std::size_t a) const { return Scalar::coordinate(fiber_.at(a)); }

    Scalar vertical_lift(const Scalar& f) const { return f; }
    /// f^c = rho(e_c)(f) y^c
    Scalar complete_lift(const Scalar& f) const;
    Section vertical_lift(const Section& s) const;
    /// s^c = s^a X_a + (rho_c(s^a) - C^a_bc s^b) y^c V_a
    Section complete_lift(const Section& s) const;
    /// s^h = s^a (X_a - Gamma^b_ac y^c V_b)
    Section horizontal_lift(const Section& s, const Connection& D) const;

    /// J^c with J^c s^v = (Js)^v, J^c s^c = (Js)^c.
    Matrix complete_lift(const Matrix& J) const;
    /// g^c(s^c,t^c) = g(s,t)^c, g^c(s^v,t^c) = g(s,t)^v, g^c(s^v,t^v) = 0.
    Matrix complete_lift_metric(const Matrix& g) const;

private:
    Geometry base_;
    Geometry lifted_;
    std::size_t r_;
    std::vector<std::string> fiber_;
};

struct SasakiLift {
    Matrix T;   // columns H_1..H_r, V_1..V_r in the (X, V) frame
    Matrix J;   // J_L(H_a) = -V_a, J_L(V_a) = H_a
    Matrix g;   // g_L(H,H) = g_L(V,V) = g^v, g_L(H,V) = 0
};

/// Throws PreconditionError when the base has no J or g.
SasakiLift sasaki_lift(const Prolongation& P, const Connection& D);

struct ProlongationReport {
    Check validation;
    Check lift_laws;         // [s^v,t^v] = 0, [s^v,t^c] = [s,t]^v, [s^c,t^c] = [s,t]^c
    Check function_lifts;    // rho(s^v)(f^c) = (rho(s)f)^v, rho(s^c)(f^v) = (rho(s)f)^v
    Check lifted_J;          // (J^c)^2 = -id, J^c s^v = (Js)^v, J^c s^c = (Js)^c
    Check nijenhuis_lift;    // N_{J^c}(s^c,t^c) = N_J(s,t)^c
    Check hermitian_transfer;
    Check kahler_transfer;   // D^c_{s^c} t^c = (D_s t)^c and Kahler status of base and lift agree
    Check sasaki;            // J_L^2 = -id, J_L s^h = -s^v, J_L s^v = s^h, g_L Hermitian
    Check sasaki_integrability;  // N_{J_L} = 0 <=> horizontal bundle integrable
    std::vector<Check> checks() const {
        return {validation,      lift_laws,         function_lifts, lifted_J,
                nijenhuis_lift, hermitian_transfer, kahler_transfer, sasaki, sasaki_integrability};
    }
};

ProlongationReport prolongation_report(const Prolongation& P, const ZeroTestOptions& opt = {}, int random_sections = 2);

/// Direct product over the product chart. Clashing coordinates of the second factor get a "_2" suffix.
struct ProductAlgebroid {
    Geometry geometry;
    Geometry first, second;  // second is the renamed copy
    std::size_t r1 = 0, r2 = 0;
    std::map<std::string, std::string> renamed;
};

ProductAlgebroid direct_product(const Geometry& g1, const Geometry& g2);

struct ProductReport {
    Check validation;
    Check block_structure;    // block anchor, cross structure functions zero
    Check factor_brackets;    // injections preserve brackets
    Check product_J;          // J^2 = -id
    Check hermitian;          // product Hermitian when both factors are
    Check nijenhuis_blocks;   // N of the product is the pair of factor N's
    std::vector<Check> checks() const {
        return {validation, block_structure, factor_brackets, product_J, hermitian, nijenhuis_blocks};
    }
};

ProductReport product_report(const ProductAlgebroid& P, const ZeroTestOptions& opt = {});

/// Restriction of a trivial ambient algebroid (constant frame, zero frame brackets) to a chart.
/// ambient_anchor(A,i) gives the ambient frame vector e_A on the chart; only its Pi-image is used.
struct ProjectorRestriction {
    Geometry geometry;
    Matrix Pi;
    Matrix ambient_anchor;
    std::optional<Matrix> ambient_J;
};

/// Throws PreconditionError when Pi is not idempotent.
ProjectorRestriction projector_restriction(const std::string& name, std::shared_ptr<const Chart> chart, const Matrix& Pi,
                                           const Matrix& ambient_anchor, std::optional<Matrix> J = std::nullopt,
                                           std::optional<Matrix> g = std::nullopt);

struct ProjectorReport {
    Check idempotent;
    Check validation;
    Check form_bracket;   // [s1,s2] = [Pi s1, Pi s2] on random sections
    Check flatness;       // Pi([Pi s1, Pi s2]') = [Pi s1, Pi s2], numeric at sample points
    Check integrable;     // N_J = 0 on the restriction
    /// Pi J = J Pi. Informational: integrability is checked directly, so this is not part of checks().
    Check commutes;
    std::vector<Check> checks() const { return {idempotent, validation, form_bracket, flatness, integrable}; }
};

/// Flatness is evaluated numerically at `points` sample points with tolerance opt.tol.
ProjectorReport projector_report(const ProjectorRestriction& R, const ZeroTestOptions& opt = {}, int points = 10);

/// S^3 in R^4 in the stereographic chart (u1,u2,u3) from the north pole, Pi = I - p p^T,
/// canonical J of R^4 = C^2 and the Euclidean metric.
const ProjectorRestriction& s3_projector();

Geometry prolong_geometry(const Geometry& base);
Geometry product_geometry(const Geometry& g1, const Geometry& g2);

}  // namespace alg
