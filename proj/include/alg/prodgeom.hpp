#pragma once

#include <optional>

#include "alg/connections.hpp"
#include "alg/fixtures.hpp"

namespace alg {

/// D~ = D + 1/2 (DJ) J, a real connection preserving E^{1,0}, E^{0,1} and h.
Connection metric_product_connection(const Connection& D, const Matrix& J);

struct ProductConnectionReport {
    std::optional<Connection> Dt;
    Check two_forms;      // p01 D p01 + p10 D p10 = D + 1/2 (DJ) J
    Check parallel;       // D~ p10 = D~ p01 = D~ h = 0
    Check torsion_forms;  // projector torsion formula = 1/2((D_{s1}J)Js2 - (D_{s2}J)Js1) = torsion of D~
    Check local_torsion;  // complex-frame displays of T(f_a,f_b), T(f_a,fbar_b) and their conjugates
    std::vector<Check> checks() const { return {two_forms, parallel, torsion_forms, local_torsion}; }
};

struct SecondFundamentalReport {
    /// B(l,mu,nu): B(F_mu,F_nu) = B^l F_l over the complex frame.
    Tensor3 B;
    /// W(l,nu,mu): W_{F_nu} F_mu = W^l F_l.
    Tensor3 W;
    /// Mean curvature section, real-frame components (complex).
    Section H;
    /// h-dual 1-form k(s) = sum h(W_s u_k, u_k) over an orthonormal real frame.
    std::optional<EForm> k;
    Check two_forms;         // -1/2 (D_{p01 s1}J) J p01 s2 = p10 D_{p01 s1} p01 s2
    Check gauss_weingarten;  // decompositions of D_{p01 s1} p01 s2 and D_{p01 s1} p10 s2
    Check local_B;           // only B(fbar_a, fbar_b) = Gamma^d_{abar bbar} f_d survives
    Check weingarten_forms;  // 1/2 (D_{p01 s1}J) J p10 s2 = -p01 D_{p01 s1} p10 s2
    Check local_W;           // only W_{f_b} fbar_a = -Gamma^{dbar}_{abar b} fbar_d survives
    Check duality;           // h(W_{s3} s1, s2) = h(s3, B(s1,s2)), verbatim
    Check duality_metric;    // h(W_{s3} s1, s2) = h(s3, p10 D_{p10 conj(s1)} p01 s2), from D h = 0
    Check mean_zero;         // H = 0
    Check trace_frames;      // g-contraction agrees with the orthonormal-frame trace (numeric)
    Check k_dual;            // k(s) = h(s, H)
    bool vanishes() const { return B.is_zero(); }
    std::vector<Check> checks() const {
        return {two_forms,    gauss_weingarten, local_B,      weingarten_forms, local_W,
                duality,      duality_metric,   mean_zero,    trace_frames,     k_dual};
    }
};

struct IdentitySuite {
    Check im_re;           // Im B(s1,s2) = Re B(s1, J s2)
    Check nijenhuis_form;  // g(Re B(s1,s2),s3) = c [g(N(s1,s2),s3) + g(N(s2,Js3),Js1) - g(N(Js3,s1),Js2)]
    Check dphi_form;       // g(Re B(s1,s2),s3) = c [(D_{Js1}Phi)(s2,s3) + (D_{s1}Phi)(Js2,s3)]
    Check anti_invariant;  // B(Js1,Js2) = -B(s1,s2)
    Check nijenhuis_alt;   // N = c Re(B(s1,s2) - B(s2,s1))
    Check umbilical;       // g(p01 s1, p01 s2) = 0, so totally umbilical <=> totally geodesic, and then minimal
    Check b_iff_n;         // B = 0 <=> N = 0
    Check alt_closure;     // alt B on (0,1)-slots vanishes <=> E^{0,1} closed under the bracket
    /// Constants found for the three normalizations, "none" when both sides vanish.
    std::string nijenhuis_form_constant, dphi_form_constant, nijenhuis_alt_constant;
    std::vector<Check> checks() const {
        return {im_re, nijenhuis_form, dphi_form, anti_invariant, nijenhuis_alt, umbilical, b_iff_n, alt_closure};
    }
};

struct ProdGeomReport {
    ProductConnectionReport connection;
    SecondFundamentalReport second;
    IdentitySuite identities;
    bool integrable = false;
    std::vector<Check> checks() const;
};

/// Needs a Hermitian metric; throws PreconditionError otherwise.
ProdGeomReport prodgeom_report(const Geometry& G, const ZeroTestOptions& opt = {}, int points = 4);

}  // namespace alg
