#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "alg/chart.hpp"
#include "alg/check.hpp"
#include "alg/tensor.hpp"

namespace alg {

/// Components of a section in the frame of an algebroid.
using Section = std::vector<Scalar>;
/// Components of a vector field in chart coordinates.
using VectorField = std::vector<Scalar>;

Section operator+(const Section& a, const Section& b);
Section operator-(const Section& a, const Section& b);
Section operator*(const Scalar& f, const Section& s);
bool is_zero(const Section& s);
std::string section_str(const Section& s, const std::string& basis = "e");

struct ValidationReport {
    Check antisymmetry;
    Check anchor;
    Check jacobi;
    /// Nonzero anchor-morphism residuals rho([e_a,e_b]) - [rho e_a, rho e_b] for a<b.
    std::vector<std::pair<std::array<std::size_t, 2>, VectorField>> anchor_residuals;
    /// Nonzero jacobiators [[e_a,e_b],e_c] + cyclic for a<b<c.
    std::vector<std::pair<std::array<std::size_t, 3>, Section>> jacobi_residuals;
    std::size_t anchor_generic_rank = 0;
    /// Informational: generic rank of the anchor is below the chart dimension.
    bool anchor_rank_deficient = false;

    bool valid() const { return antisymmetry.passed && anchor.passed && jacobi.passed; }
    std::vector<Check> checks() const { return {antisymmetry, anchor, jacobi}; }
};

/// Vector bundle over a chart with a global frame e_1..e_r, anchor rho(e_a) = rho^i_a d_i and
/// structure functions [e_a, e_b] = C^c_ab e_c. Complex frames are represented the same way.
class Algebroid {
public:
    /// C is used as given; C(c,a,b) = C^c_ab, anchor(a,i) = rho^i_a.
    Algebroid(std::string name, std::shared_ptr<const Chart> chart, Matrix anchor, Tensor3 C,
              std::vector<std::string> labels = {});

    /// Fills C^c_ba = -C^c_ab from the entries with a<b; entries with a>=b are ignored.
    static Tensor3 antisymmetrize(const Tensor3& upper);
    static std::shared_ptr<const Algebroid> make(std::string name, std::shared_ptr<const Chart> chart, Matrix anchor,
                                                 Tensor3 C, std::vector<std::string> labels = {});

    const std::string& name() const { return name_; }
    const Chart& chart() const { return *chart_; }
    const std::shared_ptr<const Chart>& chart_ptr() const { return chart_; }
    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return chart_->dim(); }
    const std::vector<std::string>& labels() const { return labels_; }

    const Scalar& anchor(std::size_t a, std::size_t i) const { return anchor_(a, i); }
    const Matrix& anchor_matrix() const { return anchor_; }
    const Scalar& C(std::size_t c, std::size_t a, std::size_t b) const { return C_(c, a, b); }
    const Tensor3& structure() const { return C_; }

    /// rho(e_a)(f)
    Scalar rho(std::size_t a, const Scalar& f) const;
    /// rho(s)(f)
    Scalar rho(const Section& s, const Scalar& f) const;
    VectorField anchor_push(const Section& s) const;
    Section bracket(const Section& s1, const Section& s2) const;
    Section frame(std::size_t a) const;
    Section zero_section() const { return Section(rank_); }

    /// Structure equations, computed once and cached (thread-safe).
    const ValidationReport& validation() const;
    ValidationReport validate(const ZeroTestOptions& opt) const;
    bool is_valid() const { return validation().valid(); }

private:
    std::string name_;
    std::shared_ptr<const Chart> chart_;
    std::size_t rank_;
    Matrix anchor_;
    Tensor3 C_;
    std::vector<std::string> labels_;
    mutable std::once_flag validated_;
    mutable std::unique_ptr<ValidationReport> validation_;
};

using AlgebroidPtr = std::shared_ptr<const Algebroid>;

/// Directional derivative X(f) of a scalar along a vector field.
Scalar vf_apply(const Chart& chart, const VectorField& X, const Scalar& f);
VectorField vf_bracket(const Chart& chart, const VectorField& X, const VectorField& Y);

/// [[s1,s2],s3] + [[s2,s3],s1] + [[s3,s1],s2]
Section jacobiator(const Algebroid& A, const Section& s1, const Section& s2, const Section& s3);

/// Jacobiator of frame elements from the structure functions:
/// sum over cyclic (a,b,c) of C^e_ab C^d_ec - rho_c(C^d_ab).
Section frame_jacobiator(const Algebroid& A, std::size_t a, std::size_t b, std::size_t c);

/// Random section with polynomial components of bounded degree over the chart.
Section random_section(const Algebroid& A, std::uint64_t seed, int index, int degree = 2, bool complex = false);

}  // namespace alg
