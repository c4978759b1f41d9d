#pragma once

#include <memory>
#include <mutex>

#include "alg/jstruct.hpp"

namespace alg {

/// Linear connection with nabla_{e_a} e_b = Gamma^c_ab e_c, stored as gamma(c,a,b).
/// Works over any frame an Algebroid describes, including complex frames.
class Connection {
public:
    Connection(AlgebroidPtr A, Tensor3 gamma);

    const AlgebroidPtr& algebroid() const { return A_; }
    std::size_t rank() const { return A_->rank(); }
    const Tensor3& gamma() const { return gamma_; }
    const Scalar& G(std::size_t c, std::size_t a, std::size_t b) const { return gamma_(c, a, b); }

    Section cov(const Section& s1, const Section& s2) const;
    /// T(c,a,b) = Gamma^c_ab - Gamma^c_ba - C^c_ab
    Tensor3 torsion() const;
    /// R(d,a,b,c) = R^d_{ab,c}, R(e_a,e_b)e_c = R^d_{ab,c} e_d. Computed once.
    const Tensor4& curvature() const;
    Section curvature_apply(const Section& s1, const Section& s2, const Section& s3) const;

private:
    AlgebroidPtr A_;
    Tensor3 gamma_;
    struct CurvatureCache {
        std::once_flag once;
        std::unique_ptr<Tensor4> R;
    };
    // Shared by copies, which carry the same coefficients.
    std::shared_ptr<CurvatureCache> cache_ = std::make_shared<CurvatureCache>();
};

/// Same connection expressed in the frame F_mu = P^a_mu e_a described by `target`.
Connection change_frame(const Connection& conn, const Matrix& P, const Matrix& Pinv, AlgebroidPtr target);

/// s1^T g s2 (bilinear, no conjugation).
Scalar pair(const Matrix& g, const Section& s1, const Section& s2);

/// Symmetry and structural nondegeneracy.
Check metric_check(const Matrix& g, const ZeroTestOptions& opt = {});

/// Koszul-formula coefficients. Throws PreconditionError for a singular or asymmetric metric.
Connection levi_civita(AlgebroidPtr A, const Matrix& g);

Check koszul_check(const Connection& D, const Matrix& g, const ZeroTestOptions& opt = {});
Check torsion_free_check(const Connection& D, const ZeroTestOptions& opt = {});
Check metric_compat_check(const Connection& D, const Matrix& g, const ZeroTestOptions& opt = {});
/// R(s1,s2)s3 + cyclic = 0, over the frame; holds for torsion-free connections.
Check first_bianchi_check(const Connection& D, const ZeroTestOptions& opt = {});
/// (nabla_{e_a} J) e_b = 0
Check almost_complex_connection_check(const Connection& D, const Matrix& J, const ZeroTestOptions& opt = {});
/// (nabla_{e_a} J) as a matrix for each a: DJ[a](c,b).
std::vector<Matrix> covariant_J(const Connection& D, const Matrix& J);

/// g(J e_a, J e_b) = g(e_a, e_b)
Check hermitian_check(const Matrix& g, const Matrix& J, const ZeroTestOptions& opt = {});
/// Phi(s1,s2) = g(s1, J s2)
EForm fundamental_form(AlgebroidPtr A, const Matrix& g, const Matrix& J);
/// Antisymmetry and J-invariance of Phi, from the matrix g J.
Check fundamental_form_check(const Matrix& g, const Matrix& J, const ZeroTestOptions& opt = {});

struct KahlerReport {
    Check hermitian;
    Check integrable;         // N = 0
    Check closed;             // d Phi = 0
    Check lc_almost_complex;  // D J = 0 for the Levi-Civita connection
    Check equivalence;        // D J = 0 <=> (N = 0 and d Phi = 0)
    Check identity;           // 2g((D_{s1}J)s2,s3) = dPhi(s1,Js2,Js3) - dPhi(s1,s2,s3) + g(N(s2,s3),Js1)
    EForm phi, dphi;
    bool kahler() const { return hermitian.passed && integrable.passed && closed.passed; }
    std::vector<Check> checks() const { return {hermitian, integrable, closed, lc_almost_complex, equivalence, identity}; }
};

KahlerReport kahler_report(AlgebroidPtr A, const Matrix& J, const Matrix& g, const ZeroTestOptions& opt = {});

/// g in the complex frame, G_F = P^T g P (complex bilinear).
Matrix complex_frame_metric(const ComplexFrame& F, const Matrix& g);

struct ComplexLeviCivita {
    Connection formula;      // the four coefficient families and their conjugates
    Connection transformed;  // real Levi-Civita moved to the complex frame
    Matrix G;                // G_F
    Check hermitian_frame;   // g(f_a,f_b) = g(fbar_a,fbar_b) = 0, g_{a bbar} = conj(g_{b abar})
    Check agreement;         // formula = transformed
    Check kahler_reduced;    // reduced coefficients, only when requested
    std::vector<Check> checks() const { return {hermitian_frame, agreement, kahler_reduced}; }
};

/// Throws PreconditionError when g is not Hermitian.
ComplexLeviCivita levi_civita_complex_frame(const ComplexFrame& F, const Matrix& g, bool kahler,
                                            const ZeroTestOptions& opt = {});

struct KahlerCurvature {
    Tensor4 R;               // curvature of the complex-frame connection
    Check unbarred_formula;  // R^d_{ab,c} display
    Check mixed_formula;     // R^{dbar}_{a bbar, cbar} display
    Check conjugation;       // R^{dbar}_{abar bbar,cbar} = conj R^d_{ab,c}, R^d_{a bbar,c} = -conj R^{dbar}_{b abar,cbar}
    Check outside_zero;      // components outside the listed families vanish
    std::vector<Check> checks() const { return {unbarred_formula, mixed_formula, conjugation, outside_zero}; }
};

/// D is a connection over the complex frame F.complex(), e.g. ComplexLeviCivita::transformed.
KahlerCurvature kahler_complex_curvature(const ComplexFrame& F, const Connection& D, const ZeroTestOptions& opt = {});

/// R4(s1,s2,s3,s4) = g(R(s3,s4)s2, s1)
Scalar riemann4(const Connection& D, const Matrix& g, const Section& s1, const Section& s2, const Section& s3,
                const Section& s4);
/// R4(s,Js,s,Js) / (g(s,s)g(Js,Js) - g(s,Js)^2). Throws PreconditionError for a degenerate plane.
Scalar holomorphic_sectional(const Connection& D, const Matrix& g, const Matrix& J, const Section& s);

/// Pointwise: the curvature matrix in an h-unitary frame of E_C is skew-Hermitian.
/// The unitary frame is built numerically by Gram-Schmidt at sample points.
Check curvature_skew_check(const Connection& D, const Matrix& g, const ComplexFrame& F, const ZeroTestOptions& opt = {},
                           int points = 4);

}  // namespace alg
