#pragma once

#include <map>
#include <string>
#include <vector>

#include "alg/algebroid.hpp"

namespace alg {

using MultiIndex = std::vector<std::size_t>;

/// Sign of the permutation sorting idx, 0 when an index repeats.
int sort_sign(MultiIndex& idx);

/// E-valued exterior form, sum of w_I e^{i_1} ^ ... ^ e^{i_p} over increasing I.
/// With this convention (e^1 ^ e^2)(e_1, e_2) = 1.
class EForm {
public:
    EForm(AlgebroidPtr A, std::size_t degree);
    static EForm function(AlgebroidPtr A, const Scalar& f);
    static EForm coframe(AlgebroidPtr A, std::size_t a);

    std::size_t degree() const { return degree_; }
    const AlgebroidPtr& algebroid() const { return A_; }
    const std::map<MultiIndex, Scalar>& components() const { return comps_; }

    /// Component on an arbitrary index tuple (antisymmetric).
    Scalar operator[](MultiIndex idx) const;
    /// Sets the component for an arbitrary tuple; the sign is absorbed.
    void set(MultiIndex idx, const Scalar& v);
    void add(MultiIndex idx, const Scalar& v);

    bool is_zero() const { return comps_.empty(); }
    /// Computed from structure functions that fail the structure equations.
    bool from_invalid_algebroid() const { return tagged_; }
    void tag_invalid() { tagged_ = true; }

    EForm operator-() const;
    friend EForm operator+(const EForm& a, const EForm& b);
    friend EForm operator-(const EForm& a, const EForm& b);
    friend EForm operator*(const Scalar& f, const EForm& w);
    friend bool operator==(const EForm& a, const EForm& b);

    std::string str(const std::string& basis = "e") const;

private:
    AlgebroidPtr A_;
    std::size_t degree_;
    std::map<MultiIndex, Scalar> comps_;
    bool tagged_ = false;
};

EForm wedge(const EForm& a, const EForm& b);
/// Chevalley-Eilenberg differential of the algebroid.
EForm d(const EForm& w);
/// w(s_1, ..., s_p) for arbitrary sections.
Scalar evaluate(const EForm& w, const std::vector<Section>& sections);
/// Components in a new frame F_mu = P^a_mu e_a over the algebroid `target`.
EForm pullback(const EForm& w, const Matrix& P, AlgebroidPtr target);
EForm conjugate(const EForm& w);
EForm random_form(AlgebroidPtr A, std::size_t degree, std::uint64_t seed, int index, bool complex = false);
/// All increasing multi-indices of length p from {0..r-1}.
/// d(d w) = 0 on `count` random forms of each degree p with p + 2 <= rank.
Check d_squared_check(const AlgebroidPtr& A, int count, const ZeroTestOptions& opt = {});
std::vector<MultiIndex> increasing_indices(std::size_t r, std::size_t p);

}  // namespace alg
