#include "alg/chern.hpp"

#include <set>
#include <stdexcept>

namespace alg {

namespace {

void expect_forms(CheckBuilder& cb, const EForm& a, const EForm& b, const std::string& where) {
    std::set<MultiIndex> keys;
    for (const auto& [I, v] : a.components()) keys.insert(I);
    for (const auto& [I, v] : b.components()) keys.insert(I);
    for (const MultiIndex& I : keys) {
        std::string idx;
        for (std::size_t i : I) idx += std::to_string(i + 1);
        cb.expect_equal(a[I], b[I], where + " [" + idx + "]");
    }
}

FormMatrix zero_matrix(const AlgebroidPtr& A, std::size_t n, std::size_t degree) {
    return FormMatrix(n, std::vector<EForm>(n, EForm(A, degree)));
}

FormMatrix scaled(const Scalar& f, const FormMatrix& a) {
    FormMatrix out = a;
    for (auto& row : out)
        for (auto& w : row) w = f * w;
    return out;
}

FormMatrix power(const FormMatrix& a, int k) {
    FormMatrix out = a;
    for (int i = 1; i < k; ++i) out = form_matmul(out, a);
    return out;
}

EForm imaginary(const EForm& w) {
    EForm out(w.algebroid(), w.degree());
    for (const auto& [I, v] : w.components()) out.set(I, imag_part(v));
    return out;
}

std::string ij(std::size_t a, std::size_t b) { return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")"; }

}  // namespace

FormMatrix form_matmul(const FormMatrix& a, const FormMatrix& b) {
    const std::size_t n = a.size();
    const EForm& a0 = a.at(0).at(0);
    const EForm& b0 = b.at(0).at(0);
    FormMatrix out = zero_matrix(a0.algebroid(), n, a0.degree() + b0.degree());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) out[i][j] = out[i][j] + wedge(a[i][k], b[k][j]);
    return out;
}

EForm form_trace(const FormMatrix& a) {
    EForm out = a.at(0).at(0);
    for (std::size_t i = 1; i < a.size(); ++i) out = out + a[i][i];
    return out;
}

FormMatrix BlockCurvature::block() const {
    const AlgebroidPtr& A = R.at(0).at(0).algebroid();
    FormMatrix out = zero_matrix(A, 2 * m, 2);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t a = 0; a < m; ++a) {
            out[b][a] = R[b][a];
            out[b][m + a] = -Rstar[b][a];
            out[m + b][a] = Rstar[b][a];
            out[m + b][m + a] = R[b][a];
        }
    return out;
}

BlockCurvature block_curvature(const Connection& D, const Matrix& J, const Matrix& adapted, const ZeroTestOptions& opt) {
    Check ac = almost_complex_connection_check(D, J, opt);
    if (!ac.passed) throw PreconditionError("connection is not almost complex: " + ac.witness);
    const AlgebroidPtr& A = D.algebroid();
    const std::size_t r = D.rank();
    if (r % 2 != 0 || adapted.rows() != r || adapted.cols() != r) throw PreconditionError("adapted frame has the wrong shape");
    const std::size_t m = r / 2;
    for (std::size_t a = 0; a < m; ++a)
        if (!is_zero(J.apply(adapted.col(a)) - adapted.col(m + a)))
            throw PreconditionError("frame is not J-adapted at column " + std::to_string(a + 1));
    auto Qinv = inverse(adapted);
    if (!Qinv) throw PreconditionError("adapted frame is singular");
    const Tensor4& Rt = D.curvature();
    // Matrix of J R over the adapted frame: M = Q^{-1} J R Q, entries are 2-forms.
    const Matrix QJ = *Qinv * J;
    FormMatrix M = zero_matrix(A, r, 2);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            Matrix Rij(r, r);
            for (std::size_t d = 0; d < r; ++d)
                for (std::size_t c = 0; c < r; ++c) Rij(d, c) = Rt(d, i, j, c);
            if (Rij.is_zero()) continue;
            Matrix Mij = QJ * Rij * adapted;
            for (std::size_t p = 0; p < r; ++p)
                for (std::size_t q = 0; q < r; ++q)
                    if (!Mij(p, q).is_zero()) M[p][q].set({i, j}, Mij(p, q));
        }
    BlockCurvature out;
    out.m = m;
    out.R = zero_matrix(A, m, 2);
    out.Rstar = zero_matrix(A, m, 2);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t a = 0; a < m; ++a) {
            out.R[b][a] = M[b][a];
            out.Rstar[b][a] = M[m + b][a];
        }
    return out;
}

std::vector<Check> ChernReport::checks() const {
    std::vector<Check> out = {almost_complex, commutes, preserved, iphi_blocks, symmetry};
    for (const ChernOrder& o : orders) {
        out.push_back(o.equality);
        out.push_back(o.closed);
        out.push_back(o.real);
    }
    return out;
}

ChernReport chern_report(const Geometry& G, const std::vector<int>& orders, const ZeroTestOptions& opt) {
    for (int k : orders)
        if (k < 1) throw std::invalid_argument("Chern order must be at least 1");
    if (!G.J || !G.g) throw PreconditionError("Chern forms need J and g");
    const Matrix& J = *G.J;
    const Matrix& g = *G.g;
    Check hc = hermitian_check(g, J, opt);
    if (!hc.passed) throw PreconditionError("metric is not Hermitian: " + hc.witness);
    const AlgebroidPtr& A = G.A;
    const std::size_t r = A->rank();
    ComplexFrame F(A, J);
    const std::size_t m = F.m();

    ChernReport rep;
    Connection D = levi_civita(A, g);
    if (almost_complex_connection_check(D, J, opt).passed) {
        rep.connection = "levi-civita";
    } else {
        rep.connection = "metric product";
        D = metric_product_connection(D, J);
    }
    rep.almost_complex = almost_complex_connection_check(D, J, opt);
    if (!rep.almost_complex.passed) throw PreconditionError("no almost complex connection: " + rep.almost_complex.witness);

    const Tensor4& Rt = D.curvature();
    {
        CheckBuilder cb("J R = R J", opt);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                Matrix Rij(r, r);
                for (std::size_t d = 0; d < r; ++d)
                    for (std::size_t c = 0; c < r; ++c) Rij(d, c) = Rt(d, i, j, c);
                Matrix res = J * Rij - Rij * J;
                for (std::size_t d = 0; d < r; ++d)
                    for (std::size_t c = 0; c < r; ++c) cb.expect_zero(res(d, c), "R" + ij(i, j) + " entry " + ij(d, c));
            }
        rep.commutes = cb.result();
    }
    rep.blocks = block_curvature(D, J, F.adapted(), opt);
    const BlockCurvature& bc = *rep.blocks;

    // Curvature of the restriction to E^{1,0}: R(e_i,e_j) f_a = Phi^b_a(e_i,e_j) f_b.
    rep.phi = zero_matrix(A, m, 2);
    {
        CheckBuilder cb("curvature preserves E^{1,0}", opt);
        for (std::size_t a = 0; a < m; ++a) {
            Section fa = F.P().col(a);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i + 1; j < r; ++j) {
                    Section v(r);
                    for (std::size_t d = 0; d < r; ++d)
                        for (std::size_t c = 0; c < r; ++c)
                            if (!fa[c].is_zero() && !Rt(d, i, j, c).is_zero()) v[d] += Rt(d, i, j, c) * fa[c];
                    Section w = F.from_real(v);
                    for (std::size_t b = 0; b < m; ++b) {
                        if (!w[b].is_zero()) rep.phi[b][a].set({i, j}, w[b]);
                        cb.expect_zero(w[m + b], "R" + ij(i, j) + " f" + std::to_string(a + 1) + " barred component " +
                                                     std::to_string(b + 1));
                    }
                }
        }
        rep.preserved = cb.result();
    }
    {
        CheckBuilder cb("Phi^b_a = R^{b*}_a - i R^b_a", opt);
        const Scalar i = Scalar::imag_unit();
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t a = 0; a < m; ++a)
                expect_forms(cb, rep.phi[b][a], bc.Rstar[b][a] - i * bc.R[b][a], "Phi" + ij(b, a));
        rep.iphi_blocks = cb.result();
    }
    {
        CheckBuilder cb("R symmetric and R* skew over an orthonormal adapted frame", opt);
        Matrix GQ = F.adapted().transpose() * g * F.adapted();
        bool conformal = true;
        for (std::size_t p = 0; p < r && conformal; ++p)
            for (std::size_t q = 0; q < r && conformal; ++q)
                if (!zero_test(p == q ? GQ(p, q) - GQ(0, 0) : GQ(p, q), opt).is_zero()) conformal = false;
        if (conformal) {
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t a = b; a < m; ++a) {
                    expect_forms(cb, bc.R[b][a], bc.R[a][b], "R" + ij(b, a));
                    expect_forms(cb, bc.Rstar[b][a], -bc.Rstar[a][b], "R*" + ij(b, a));
                }
            cb.note("adapted frame is orthonormal up to a common factor");
        } else {
            cb.skip("adapted frame is not orthonormal up to a common factor");
        }
        rep.symmetry = cb.result();
    }

    const FormMatrix iphi = scaled(Scalar::imag_unit(), rep.phi);
    const FormMatrix block = bc.block();
    for (int k : orders) {
        ChernOrder o;
        o.k = k;
        const std::string tag = " (k=" + std::to_string(k) + ")";
        EForm ti = form_trace(power(iphi, k));
        EForm tb = form_trace(power(block, k));
        o.iphi_form = ti;
        o.block_form = Scalar::rational(1, 2) * tb;
        o.factor = "none";
        for (const auto& [I, v] : tb.components()) {
            Scalar c = ti[I] / v;
            o.factor = c.str();
            break;
        }
        CheckBuilder eq("trace((i Phi)^k) = 1/2 trace(block^k)" + tag, opt);
        expect_forms(eq, ti, *o.block_form, "difference");
        eq.note("factor " + o.factor);
        o.equality = eq.result();
        CheckBuilder cl("Chern forms d-closed" + tag, opt);
        expect_forms(cl, d(ti), EForm(A, 2 * k + 1), "d trace((i Phi)^k)");
        expect_forms(cl, d(tb), EForm(A, 2 * k + 1), "d trace(block^k)");
        o.closed = cl.result();
        CheckBuilder re("trace((i Phi)^k) real" + tag, opt);
        expect_forms(re, imaginary(ti), EForm(A, 2 * k), "imaginary part");
        o.real = re.result();
        rep.orders.push_back(std::move(o));
    }
    return rep;
}

}  // namespace alg
