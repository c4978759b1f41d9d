// One PASS/FAIL line per acceptance criterion. Exit status is 0 when every failing item is a
// documented known deviation and every known deviation still fails as recorded.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "alg/chern.hpp"
#include "alg/commands.hpp"
#include "alg/constructions.hpp"
#include "alg/document.hpp"
#include "alg/expr.hpp"
#include "alg/prodgeom.hpp"

using namespace alg;

namespace {

constexpr double kSuiteSeconds = 60.0;
constexpr double kNumericTol = 1e-9;
constexpr int kNumericPoints = 10;

struct Item {
    std::string label;
    bool ok;
    bool known_deviation = false;  // expected to fail; see the README section on known deviations
};

struct Criterion {
    int id;
    std::string title;
    std::function<std::vector<Item>()> run;
};

std::vector<std::string> valid_fixtures() {
    std::vector<std::string> out;
    for (const auto& n : fixture_names())
        if (n != "heis_broken") out.push_back(n);
    return out;
}

std::vector<std::string> hermitian_fixtures() {
    std::vector<std::string> out;
    for (const auto& n : valid_fixtures()) {
        Geometry G = fixture(n);
        if (G.J && G.g && hermitian_check(*G.g, *G.J).passed) out.push_back(n);
    }
    return out;
}

bool structural(const Check& c) { return c.passed && !c.numeric && !c.warning; }

bool all_structural(const std::vector<Check>& cs) {
    for (const Check& c : cs)
        if (!c.skipped && !structural(c)) return false;
    return true;
}

Section basis(std::size_t r, std::size_t a, long coeff = 1) {
    Section s(r);
    s[a] = Scalar(coeff);
    return s;
}

// Frame bracket from structure functions only, for sections with constant components and a zero anchor.
Section const_bracket(const Algebroid& A, const Section& u, const Section& v) {
    const std::size_t r = A.rank();
    Section out(r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c) out[c] += u[a] * v[b] * A.C(c, a, b);
    return out;
}

Section mul(const Matrix& J, const Section& s) {
    Section out(s.size());
    for (std::size_t b = 0; b < s.size(); ++b)
        for (std::size_t a = 0; a < s.size(); ++a) out[b] += J(b, a) * s[a];
    return out;
}

// N(s1,s2) = [Js1,Js2] - J[Js1,s2] - J[s1,Js2] - [s1,s2], expanded by hand.
Section brute_nijenhuis(const Algebroid& A, const Matrix& J, const Section& s1, const Section& s2) {
    const Section Js1 = mul(J, s1), Js2 = mul(J, s2);
    return const_bracket(A, Js1, Js2) - mul(J, const_bracket(A, Js1, s2)) - mul(J, const_bracket(A, s1, Js2)) -
           const_bracket(A, s1, s2);
}

bool sections_equal(const Section& a, const Section& b) { return is_zero(a - b); }

std::vector<Item> c1_structure() {
    std::vector<Item> items;
    for (const auto& n : valid_fixtures()) {
        Geometry G = fixture(n);
        items.push_back({n + " valid", G.A->validation().valid() && all_structural(G.A->validation().checks())});
    }
    Geometry B = fixture("heis_broken");
    const ValidationReport& v = B.A->validation();
    bool exact = v.jacobi_residuals.size() == 1 && v.jacobi_residuals[0].first == std::array<std::size_t, 3>{0, 1, 2} &&
                 sections_equal(v.jacobi_residuals[0].second, basis(B.A->rank(), 2, -1));
    items.push_back({"heis_broken invalid", !v.valid()});
    items.push_back({"heis_broken residual -e3 on (1,2,3)", exact});
    return items;
}

std::vector<Item> c2_d_squared() {
    std::vector<Item> items;
    for (const auto& n : valid_fixtures()) {
        Check c = d_squared_check(fixture(n).A, 20);
        items.push_back({n + " d^2 = 0", structural(c)});
    }
    Check b = d_squared_check(fixture("heis_broken").A, 20);
    items.push_back({"heis_broken witness " + b.witness, !b.passed && !b.witness.empty()});
    return items;
}

std::vector<Item> c3_nijenhuis() {
    std::vector<Item> items;
    for (const auto& n : fixture_names()) {
        Geometry G = fixture(n);
        if (!G.J) continue;
        items.push_back({n + " frame = coefficients", structural(nijenhuis(*G.A, *G.J).agreement)});
    }
    Geometry H = fixture("heis_j");
    const std::size_t r = H.A->rank();
    NijenhuisResult N = nijenhuis(*H.A, *H.J);
    Section computed(r);
    for (std::size_t c = 0; c < r; ++c) computed[c] = N.frame(c, 0, 1);
    const Section oracle = brute_nijenhuis(*H.A, *H.J, basis(r, 0), basis(r, 1));
    items.push_back({"heis_j N(e1,e2) = " + section_str(computed) + " matches brute force " + section_str(oracle),
                     sections_equal(computed, oracle) && sections_equal(oracle, basis(r, 2, -1))});
    items.push_back({"heis_j N(e1,e2) = -2e3 as quoted", sections_equal(computed, basis(r, 2, -2)), true});
    return items;
}

std::vector<Item> c4_newlander_nirenberg() {
    std::vector<Item> items;
    for (const auto& n : valid_fixtures()) {
        Geometry G = fixture(n);
        if (!G.J) continue;
        NNReport r = newlander_nirenberg_report(ComplexFrame(G.A, *G.J));
        const bool expect = n != "heis_j";
        bool statuses = true;
        for (const Check* c : {&r.closure10, &r.closure01, &r.coframe, &r.bigraded, &r.nijenhuis})
            statuses = statuses && c->passed == expect;
        items.push_back({n + (expect ? " integrable on all five" : " non-integrable on all five"),
                         statuses && r.agreement.passed});
    }
    return items;
}

Tensor3 koszul_oracle(const Algebroid& A, const Matrix& g) {
    const std::size_t r = A.rank();
    const Matrix ginv = *inverse(g);
    auto br = [&](std::size_t a, std::size_t b, std::size_t c) {
        Scalar s;
        for (std::size_t d = 0; d < r; ++d) s += A.C(d, a, b) * g(d, c);
        return s;
    };
    Tensor3 out(r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t e = 0; e < r; ++e) {
                Scalar s;
                for (std::size_t c = 0; c < r; ++c)
                    s += ginv(e, c) *
                         (A.rho(a, g(b, c)) + A.rho(b, g(a, c)) - A.rho(c, g(a, b)) + br(a, b, c) - br(a, c, b) -
                          br(b, c, a)) /
                         Scalar(2);
                out(e, a, b) = s;
            }
    return out;
}

std::vector<Item> c5_levi_civita() {
    std::vector<Item> items;
    for (const auto& n : valid_fixtures()) {
        Geometry G = fixture(n);
        if (!G.g) continue;
        Connection D = levi_civita(G.A, *G.g);
        items.push_back({n + " torsion-free, metric", structural(torsion_free_check(D)) &&
                                                          structural(metric_compat_check(D, *G.g)) &&
                                                          D.gamma() == koszul_oracle(*G.A, *G.g)});
    }
    Geometry W = fixture("warped_r4");
    Connection D = levi_civita(W.A, *W.g);
    const Scalar expected = parse_scalar("x3/(1 + x3^2)", W.A->chart());
    items.push_back({"warped_r4 Gamma^1_31 = x3/(1+x3^2)",
                     D.G(0, 2, 0) == expected && koszul_oracle(*W.A, *W.g)(0, 2, 0) == expected});
    for (const auto& n : hermitian_fixtures()) {
        Geometry G = fixture(n);
        ComplexFrame F(G.A, *G.J);
        const bool kahler = almost_complex_connection_check(levi_civita(G.A, *G.g), *G.J).passed;
        ComplexLeviCivita cl = levi_civita_complex_frame(F, *G.g, kahler);
        items.push_back({n + " complex-frame coefficients", all_structural(cl.checks()) &&
                                                                cl.formula.gamma() == cl.transformed.gamma()});
    }
    return items;
}

std::vector<Item> c6_kahler() {
    std::vector<Item> items;
    Geometry flat = fixture("flat_r2");
    items.push_back({"flat_r2 Kahler", kahler_report(flat.A, *flat.J, *flat.g).kahler()});

    Geometry w = fixture("warped_r4");
    KahlerReport kw = kahler_report(w.A, *w.J, *w.g);
    items.push_back({"warped_r4 Hermitian non-Kahler",
                     kw.hermitian.passed && kw.integrable.passed && !kw.closed.passed && !kw.kahler()});
    // e^3^e^1^e^2 = e^1^e^2^e^3 and f' = 2 x3.
    EForm quoted(w.A, 3), convention(w.A, 3);
    quoted.set({0, 1, 2}, parse_scalar("2*x3", w.A->chart()));
    // Phi(s1,s2) = g(s1,J s2) with J e1 = e2 gives Phi_12 = -f, as for flat_r2 where Phi = -e^1^e^2.
    convention.set({0, 1, 2}, parse_scalar("-2*x3", w.A->chart()));
    items.push_back({"warped_r4 d Phi = -f' e^1^e^2^e^3 from Phi(s1,s2) = g(s1,J s2)", kw.dphi == convention});
    items.push_back({"warped_r4 d Phi = +f' e^3^e^1^e^2 as quoted", kw.dphi == quoted, true});

    Geometry h = fixture("heis_j");
    items.push_back({"heis_j non-integrable", !kahler_report(h.A, *h.J, *h.g).integrable.passed});

    for (const auto& n : hermitian_fixtures()) {
        Geometry G = fixture(n);
        KahlerReport k = kahler_report(G.A, *G.J, *G.g);
        items.push_back({n + " LC almost complex <=> N = 0 and d Phi = 0",
                         k.equivalence.passed &&
                             k.lc_almost_complex.passed == (k.integrable.passed && k.closed.passed)});
    }
    return items;
}

// Gauss curvature of lambda (dx^2 + dy^2): -(1/(2 lambda)) Laplacian(log lambda), by central differences.
double gauss_fd(double x, double y) {
    auto loglam = [](double u, double v) { return std::log(4.0 / std::pow(1 + u * u + v * v, 2)); };
    // log lambda varies on the scale 1 + |x| + |y|; Richardson extrapolation removes the h^2 term.
    auto lap = [&](double h) {
        return (loglam(x + h, y) + loglam(x - h, y) + loglam(x, y + h) + loglam(x, y - h) - 4 * loglam(x, y)) / (h * h);
    };
    const double h = 1e-2 * (1 + std::abs(x) + std::abs(y));
    const double lap_est = (4 * lap(h / 2) - lap(h)) / 3;
    return -lap_est / (2 * 4.0 / std::pow(1 + x * x + y * y, 2));
}

std::vector<Item> c7_sectional() {
    Geometry G = fixture("conformal_sphere_chart");
    Connection D = levi_civita(G.A, *G.g);
    const Scalar K = holomorphic_sectional(D, *G.g, *G.J, G.A->frame(0));
    double worst = 0, worst_oracle = 0;
    for (int i = 0; i < kNumericPoints; ++i) {
        NumericPoint p = to_numeric(random_point(G.A->chart().coords(), 2024, i));
        const double v = eval_numeric(K, p).real();
        worst = std::max(worst, std::abs(v - 1.0));
        worst_oracle = std::max(worst_oracle, std::abs(v - gauss_fd(p["x"].real(), p["y"].real())));
    }
    std::ostringstream a, b;
    a << "K = +1 at " << kNumericPoints << " points, max |K - 1| = " << worst << " <= " << kNumericTol;
    // The finite-difference oracle carries O(h^2) truncation and cancellation error.
    b << "matches the finite-difference Gauss curvature, max deviation " << worst_oracle << " <= 1e-5";
    return {{"K symbolically constant", K == Scalar(1)}, {a.str(), worst <= kNumericTol}, {b.str(), worst_oracle <= 1e-5}};
}

std::vector<Item> c8_chern() {
    std::vector<Item> items;
    for (const auto& n : hermitian_fixtures()) {
        ChernReport r = chern_report(fixture(n), {1, 2});
        bool eq = true, closed = true;
        for (const ChernOrder& o : r.orders) {
            eq = eq && structural(o.equality);
            closed = closed && structural(o.closed);
        }
        items.push_back({n + " trace((i Phi)^k) = 1/2 trace(block^k), k = 1, 2; closed", eq && closed});
        if (n.rfind("flat", 0) == 0) {
            bool zero = true;
            for (const ChernOrder& o : r.orders) zero = zero && o.iphi_form->is_zero() && o.block_form->is_zero();
            items.push_back({n + " zero Chern forms", zero});
        }
    }
    return items;
}

std::vector<Item> c9_prodgeom() {
    std::vector<Item> items;
    std::string duality_failures;
    for (const auto& n : hermitian_fixtures()) {
        ProdGeomReport r = prodgeom_report(fixture(n));
        const bool integrable = nijenhuis(*fixture(n).A, *fixture(n).J).vanishes();
        items.push_back({n + " D~ p10 = D~ p01 = D~ h = 0", structural(r.connection.parallel)});
        items.push_back({n + " H = 0", r.second.mean_zero.passed && is_zero(r.second.H)});
        items.push_back({n + " B = 0 <=> N = 0", r.second.vanishes() == integrable});
        items.push_back({n + " h(W s3 s1, s2) = h(s3, p10 D p01) (metric form of the duality)",
                         r.second.duality_metric.passed});
        if (!r.second.duality.passed) duality_failures += " " + n;
        if (n == "heis_j") {
            items.push_back({"heis_j B nonzero", !r.second.vanishes()});
            items.push_back({"heis_j N = c Re(B(s1,s2) - B(s2,s1)), c = " + r.identities.nijenhuis_alt_constant,
                             r.identities.nijenhuis_alt.passed && r.identities.nijenhuis_alt_constant != "none"});
        }
        if (n == "warped_r4") items.push_back({"warped_r4 B = 0", r.second.vanishes()});
    }
    items.push_back({"duality h(W s3 s1, s2) = h(s3, B(s1,s2)) as stated fails on" + duality_failures,
                     duality_failures.empty(), true});
    return items;
}

std::vector<Item> c10_matched_pair() {
    std::vector<Item> items;
    for (const auto& n : valid_fixtures()) {
        Geometry G = fixture(n);
        if (!G.J || !nijenhuis(*G.A, *G.J).vanishes()) continue;
        MatchedPairReport r = matched_pair_check(ComplexFrame(G.A, *G.J));
        items.push_back({n + " matched-pair compatibility identities", all_structural(r.checks())});
    }
    return items;
}

std::vector<Item> c11_constructions() {
    std::vector<Item> items;
    for (const auto& n : valid_fixtures()) {
        ProlongationReport r = prolongation_report(Prolongation(fixture(n)));
        items.push_back({n + " prolongation valid, lift laws", structural(r.validation) && structural(r.lift_laws)});
        if (n == "flat_r2")
            items.push_back({"flat_r2 transfer: " + r.hermitian_transfer.note + "; " + r.kahler_transfer.note,
                             r.hermitian_transfer.passed && r.kahler_transfer.passed &&
                                 r.hermitian_transfer.note == "base Hermitian, lift Hermitian" &&
                                 r.kahler_transfer.note == "base Kahler, lift Kahler"});
    }
    ZeroTestOptions opt;
    opt.tol = kNumericTol;
    ProjectorReport p = projector_report(s3_projector(), opt, kNumericPoints);
    items.push_back({"s3_projector flatness at 10 points, tol 1e-9", p.flatness.passed && p.flatness.numeric});
    items.push_back({"s3_projector restricted J integrable", p.integrable.passed});
    return items;
}

std::vector<Item> c12_cli() {
    std::vector<Item> items;
    for (const auto& command : command_names()) {
        RunOptions opt;
        std::string target = command_needs_target(command) ? "flat_r2" : "";
        if (command == "product") opt.other = "heis_j";
        if (command == "restrict") opt.projector = ALG_DATA_DIR "/s3.proj";
        CommandResult r = run_command(command, target, opt);
        items.push_back({command + " exit 0, schema valid", r.exit_code == 0 && schema_errors(r.report).empty()});
    }
    bool round_trip = true;
    std::vector<std::string> names = fixture_names();
    names.push_back("prolong(heis_j)");
    names.push_back("product(flat_r2,warped_r4)");
    for (const auto& n : names) {
        Geometry G = fixture(n);
        const std::string text = emit_document(G);
        Geometry back = parse_document(text);
        round_trip = round_trip && structurally_equal(G, back) && emit_document(back) == text;
    }
    items.push_back({"load/emit round trip", round_trip});
    RunOptions seeded;
    seeded.zero.seed = 1234;
    bool same = true;
    for (const auto& command : {"validate", "nijenhuis", "kahler-report", "identity-suite", "chern", "sectional"})
        same = same &&
               run_command(command, "warped_r4", seeded).report.dump() == run_command(command, "warped_r4", seeded).report.dump();
    items.push_back({"fixed-seed determinism", same});
    return items;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "structure-equation gate", c1_structure},
        {2, "d^2 = 0", c2_d_squared},
        {3, "Nijenhuis double computation", c3_nijenhuis},
        {4, "Newlander-Nirenberg equivalence", c4_newlander_nirenberg},
        {5, "Levi-Civita certification", c5_levi_civita},
        {6, "Kahler trichotomy", c6_kahler},
        {7, "sectional curvature", c7_sectional},
        {8, "Chern forms", c8_chern},
        {9, "product geometry", c9_prodgeom},
        {10, "matched pair", c10_matched_pair},
        {11, "constructions", c11_constructions},
        {12, "CLI end-to-end", c12_cli},
    };
    bool unexpected = false;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Item> items;
        try {
            items = c.run();
        } catch (const std::exception& e) {
            items.push_back({std::string("exception: ") + e.what(), false});
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        items.push_back({"under 60 s", secs < kSuiteSeconds});
        bool pass = true;
        std::vector<std::string> lines;
        for (const Item& it : items) {
            pass = pass && it.ok;
            if (it.ok && it.known_deviation) {
                unexpected = true;
                lines.push_back("  known deviation no longer reproduces: " + it.label);
            } else if (!it.ok) {
                unexpected = unexpected || !it.known_deviation;
                lines.push_back(std::string("  ") + (it.known_deviation ? "known deviation: " : "failed: ") + it.label);
            } else {
                lines.push_back("  ok: " + it.label);
            }
        }
        std::printf("%s %2d %s (%zu items, %.2fs)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), items.size(), secs);
        for (const auto& l : lines) std::printf("%s\n", l.c_str());
        std::fflush(stdout);
    }
    return unexpected ? 1 : 0;
}
