#pragma once

#include <map>
#include <utility>
#include <vector>

#include "alg/eforms.hpp"

namespace alg {

/// J(b,a) = J^b_a, so J(e_a) = J^b_a e_b. Residual check of J^2 = -id.
Check almost_complex_check(const Matrix& J, const ZeroTestOptions& opt = {});

/// N(s1,s2) = [Js1,Js2] - J[s1,Js2] - J[Js1,s2] - [s1,s2].
Section nijenhuis_apply(const Algebroid& A, const Matrix& J, const Section& s1, const Section& s2);

struct NijenhuisResult {
    /// N(c,a,b) = N^c_ab from the bracket formula on frame pairs.
    Tensor3 frame;
    /// The same tensor from the local coefficient formula.
    Tensor3 coefficients;
    Check agreement;
    bool vanishes() const { return frame.is_zero(); }
};

/// Throws PreconditionError unless J^2 = -id.
NijenhuisResult nijenhuis(const Algebroid& A, const Matrix& J, const ZeroTestOptions& opt = {});

/// Frame f_1..f_m of E^{1,0} and conjugates f_{m+1}..f_{2m} of E^{0,1}, with f_a = u_a - i J u_a
/// for real frame vectors u_a picked greedily so that (u_a, J u_a) is a frame.
class ComplexFrame {
public:
    ComplexFrame(AlgebroidPtr real, Matrix J);

    const AlgebroidPtr& real() const { return real_; }
    /// Algebroid structure in the frame f: complex anchors and structure functions.
    const AlgebroidPtr& complex() const { return F_; }
    const Matrix& J() const { return J_; }
    std::size_t m() const { return m_; }
    std::size_t bar(std::size_t mu) const { return mu < m_ ? mu + m_ : mu - m_; }
    /// Real frame indices of u_1..u_m.
    const std::vector<std::size_t>& chosen() const { return chosen_; }
    /// Columns are f_mu in the real frame.
    const Matrix& P() const { return P_; }
    const Matrix& Pinv() const { return Pinv_; }
    /// Columns u_1..u_m, Ju_1..Ju_m in the real frame.
    const Matrix& adapted() const { return Q_; }
    const Matrix& adapted_inv() const { return Qinv_; }

    Section to_real(const Section& s) const { return P_.apply(s); }
    Section from_real(const Section& s) const { return Pinv_.apply(s); }

    /// p^{1,0} = (I - iJ)/2 and p^{0,1} = (I + iJ)/2 in the real frame.
    Matrix p10() const;
    Matrix p01() const;
    /// Projector algebra: sum, idempotence, annihilation.
    Check projector_check(const ZeroTestOptions& opt = {}) const;
    /// J f_a = i f_a, J fbar_a = -i fbar_a.
    Check eigen_check(const ZeroTestOptions& opt = {}) const;
    /// conj(C^l_{mu nu}) = C^{bar l}_{bar mu bar nu} and conj of anchors.
    Check conjugation_check(const ZeroTestOptions& opt = {}) const;

private:
    AlgebroidPtr real_;
    Matrix J_;
    std::size_t m_ = 0;
    std::vector<std::size_t> chosen_;
    Matrix P_, Pinv_, Q_, Qinv_;
    AlgebroidPtr F_;
};

using Bidegree = std::pair<std::size_t, std::size_t>;

/// Splits a form over a complex frame by the number of unbarred and barred slots.
std::map<Bidegree, EForm> bigrade(const EForm& w, std::size_t m);

struct DSplit {
    EForm dprime;   // (p+2, q-1)
    EForm d10;      // (p+1, q)
    EForm d01;      // (p, q+1)
    EForm ddprime;  // (p-1, q+2)
};

/// Pieces of d on a form of pure type (p,q) over a complex frame. Throws if w is not pure.
DSplit d_split(const EForm& w, std::size_t m);

struct NNReport {
    Check closure10;   // [E^{1,0}, E^{1,0}] in E^{1,0}
    Check closure01;   // [E^{0,1}, E^{0,1}] in E^{0,1}
    Check coframe;     // d on (1,0)- and (0,1)-coframes
    Check bigraded;    // d on (p,q)-forms has no (p+2,q-1) or (p-1,q+2) part
    Check nijenhuis;   // N = 0
    Check agreement;   // all five statuses coincide
    bool integrable() const { return nijenhuis.passed; }
    std::vector<Check> checks() const { return {closure10, closure01, coframe, bigraded, nijenhuis, agreement}; }
};

/// Forms of degree <= max_degree in the basis f^K are used as the generating set for the leakage test.
NNReport newlander_nirenberg_report(const ComplexFrame& F, const ZeroTestOptions& opt = {}, std::size_t max_degree = 3);

/// Residuals [s, J e_b] - J[s, e_b] over the frame.
Check infinitesimal_automorphism_check(const Algebroid& A, const Matrix& J, const Section& s,
                                       const ZeroTestOptions& opt = {});

struct MatchedPairReport {
    Check sub10;  // (E^{1,0}, rho^{1,0}, [,]^{1,0}) is a Lie algebroid
    Check sub01;
    Check anchor;        // rho intertwines the two actions with the bracket of vector fields
    Check derivation01;  // E^{1,0} acts on E^{0,1} by derivations of its bracket, up to the back action
    Check derivation10;
    /// Matched-pair bracket on E^{1,0} + E^{0,1} reproduces the bracket of E_C.
    Check reconstruction;
    std::vector<Check> checks() const { return {sub10, sub01, anchor, derivation01, derivation10, reconstruction}; }
};

/// Throws PreconditionError when J is not integrable.
MatchedPairReport matched_pair_check(const ComplexFrame& F, const ZeroTestOptions& opt = {});

}  // namespace alg
