#include "alg/commands.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "alg/chern.hpp"
#include "alg/document.hpp"
#include "alg/expr.hpp"

namespace alg {

using json = nlohmann::ordered_json;

namespace {

struct Ctx {
    const RunOptions& opt;
    json& report;
    std::vector<Check> checks;

    const ZeroTestOptions& zero() const { return opt.zero; }
    void add(const Check& c) { checks.push_back(c); }
    void add(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
    json& props() { return report["properties"]; }
    json& tensors() { return report["tensors"]; }
};

std::string check_status(const Check& c) {
    if (c.skipped) return "Skipped";
    if (c.passed) return c.numeric ? "NumericPass" : "StructurallyZero";
    return c.probably_nonzero ? "ProbablyNonzero" : "Fail";
}

json check_json(const Check& c, const ZeroTestOptions& opt) {
    json j;
    j["name"] = c.name;
    j["status"] = check_status(c);
    j["passed"] = c.passed;
    if (c.numeric && !c.skipped) j["tolerance"] = opt.tol;
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (c.warning) j["warning"] = true;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

json entry(std::vector<std::size_t> idx, const Scalar& v) {
    for (auto& i : idx) ++i;
    json j;
    j["index"] = idx;
    j["value"] = v.str();
    return j;
}

/// Components (c,a,b) with a < b; zero entries only when `all` is set.
json tensor3_skew(const Tensor3& T, bool all) {
    json out = json::array();
    for (std::size_t c = 0; c < T.dim(0); ++c)
        for (std::size_t a = 0; a < T.dim(1); ++a)
            for (std::size_t b = a + 1; b < T.dim(2); ++b)
                if (all || !T(c, a, b).is_zero()) out.push_back(entry({c, a, b}, T(c, a, b)));
    return out;
}

json tensor3_full(const Tensor3& T) {
    json out = json::array();
    for (std::size_t c = 0; c < T.dim(0); ++c)
        for (std::size_t a = 0; a < T.dim(1); ++a)
            for (std::size_t b = 0; b < T.dim(2); ++b)
                if (!T(c, a, b).is_zero()) out.push_back(entry({c, a, b}, T(c, a, b)));
    return out;
}

json curvature_json(const Tensor4& R) {
    json out = json::array();
    const std::size_t n = R.dim();
    for (std::size_t d = 0; d < n; ++d)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (!R(d, a, b, c).is_zero()) out.push_back(entry({d, a, b, c}, R(d, a, b, c)));
    return out;
}

json form_json(const EForm& w) {
    json out = json::array();
    for (const auto& [I, v] : w.components()) out.push_back(entry(I, v));
    return out;
}

json section_json(const Section& s) {
    json out = json::array();
    for (const Scalar& v : s) out.push_back(v.str());
    return out;
}

const Matrix& need_J(const Geometry& G) {
    if (!G.J) throw PreconditionError("'" + G.name + "' has no almost complex structure J");
    return *G.J;
}

const Matrix& need_g(const Geometry& G) {
    if (!G.g) throw PreconditionError("'" + G.name + "' has no metric");
    return *G.g;
}

Section parse_direction(const std::string& text, const Algebroid& A) {
    const std::size_t r = A.rank();
    if (text.empty()) return A.frame(0);
    if (text.size() > 1 && text[0] == 'e' && text.find_first_not_of("0123456789", 1) == std::string::npos) {
        std::size_t k = std::stoul(text.substr(1));
        if (k < 1 || k > r) throw std::invalid_argument("direction " + text + " outside the frame e1..e" + std::to_string(r));
        return A.frame(k - 1);
    }
    Section s;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k) {
        if (k < text.size() && text[k] == '(') ++depth;
        if (k < text.size() && text[k] == ')') --depth;
        if (k == text.size() || (text[k] == ',' && depth == 0)) {
            s.push_back(parse_scalar(std::string_view(text).substr(start, k - start), A.chart()));
            start = k + 1;
        }
    }
    if (s.size() != r)
        throw std::invalid_argument("direction needs " + std::to_string(r) + " components, found " + std::to_string(s.size()));
    return s;
}

// ---- commands ------------------------------------------------------------------------------

void cmd_validate(Ctx& c, const Geometry& G) {
    const Algebroid& A = *G.A;
    ValidationReport v = A.validate(c.zero());
    c.add(v.checks());
    c.add(d_squared_check(G.A, c.zero().samples, c.zero()));
    c.props()["rank"] = A.rank();
    c.props()["dimension"] = A.dim();
    c.props()["valid"] = v.valid();
    c.props()["anchor_generic_rank"] = v.anchor_generic_rank;
    c.props()["anchor_rank_deficient"] = v.anchor_rank_deficient;
    json jac = json::array();
    for (const auto& [abc, s] : v.jacobi_residuals) {
        json j;
        j["index"] = {abc[0] + 1, abc[1] + 1, abc[2] + 1};
        j["value"] = section_json(s);
        jac.push_back(j);
    }
    c.tensors()["jacobiator"] = jac;
    json anc = json::array();
    for (const auto& [ab, X] : v.anchor_residuals) {
        json j;
        j["index"] = {ab[0] + 1, ab[1] + 1};
        j["value"] = section_json(X);
        anc.push_back(j);
    }
    c.tensors()["anchor_residual"] = anc;
}

void cmd_nijenhuis(Ctx& c, const Geometry& G) {
    const Matrix& J = need_J(G);
    c.add(almost_complex_check(J, c.zero()));
    NijenhuisResult N = nijenhuis(*G.A, J, c.zero());
    c.add(N.agreement);
    c.props()["vanishes"] = N.vanishes();
    c.tensors()["N"] = tensor3_skew(N.frame, true);
}

void cmd_nn_report(Ctx& c, const Geometry& G) {
    ComplexFrame F(G.A, need_J(G));
    NNReport nn = newlander_nirenberg_report(F, c.zero());
    json st;
    for (const Check& k : {nn.closure10, nn.closure01, nn.coframe, nn.bigraded, nn.nijenhuis}) {
        json j;
        j["name"] = k.name;
        j["holds"] = k.passed;
        if (!k.witness.empty()) j["witness"] = k.witness;
        st.push_back(j);
    }
    c.props()["statuses"] = st;
    c.props()["integrable"] = nn.integrable();
    c.add(nn.agreement);
}

void cmd_matched_pair(Ctx& c, const Geometry& G) {
    ComplexFrame F(G.A, need_J(G));
    MatchedPairReport mp = matched_pair_check(F, c.zero());
    c.add(mp.checks());
}

void cmd_levi_civita(Ctx& c, const Geometry& G) {
    const Matrix& g = need_g(G);
    c.add(metric_check(g, c.zero()));
    Connection D = levi_civita(G.A, g);
    c.add(koszul_check(D, g, c.zero()));
    c.add(torsion_free_check(D, c.zero()));
    c.add(metric_compat_check(D, g, c.zero()));
    c.tensors()["Gamma"] = tensor3_full(D.gamma());
    if (c.opt.complex_frame) {
        const Matrix& J = need_J(G);
        ComplexFrame F(G.A, J);
        const bool kahler = almost_complex_connection_check(D, J, c.zero()).passed;
        ComplexLeviCivita cl = levi_civita_complex_frame(F, g, kahler, c.zero());
        c.add(cl.checks());
        c.props()["kahler_reduced"] = kahler;
        c.tensors()["Gamma_complex"] = tensor3_full(cl.formula.gamma());
    }
}

void cmd_curvature(Ctx& c, const Geometry& G) {
    const Matrix& g = need_g(G);
    Connection D = levi_civita(G.A, g);
    c.add(first_bianchi_check(D, c.zero()));
    c.tensors()["R"] = curvature_json(D.curvature());
    c.props()["flat"] = D.curvature().is_zero();
    if (G.J && hermitian_check(g, *G.J, c.zero()).passed) {
        ComplexFrame F(G.A, *G.J);
        c.add(curvature_skew_check(D, g, F, c.zero()));
        const bool kahler = almost_complex_connection_check(D, *G.J, c.zero()).passed;
        c.props()["kahler"] = kahler;
        if (kahler) {
            ComplexLeviCivita cl = levi_civita_complex_frame(F, g, true, c.zero());
            c.add(kahler_complex_curvature(F, cl.transformed, c.zero()).checks());
        }
    }
}

void cmd_sectional(Ctx& c, const Geometry& G) {
    const Matrix& g = need_g(G);
    const Matrix& J = need_J(G);
    const Algebroid& A = *G.A;
    Connection D = levi_civita(G.A, g);
    Section s = parse_direction(c.opt.direction, A);
    Scalar K = holomorphic_sectional(D, g, J, s);
    c.props()["direction"] = section_json(s);
    c.props()["K"] = K.str();
    c.props()["constant"] = K.is_constant();
    {
        // K depends only on the plane (s, Js): rescaling s by a nowhere-zero function leaves it unchanged.
        CheckBuilder cb("K invariant under rescaling the direction", c.zero());
        Scalar f = Scalar(2);
        for (std::size_t i = 0; i < A.dim(); ++i) f += A.chart().coordinate(i).pow(2);
        cb.expect_equal(holomorphic_sectional(D, g, J, f * s), K, "K(f s) - K(s)");
        c.add(cb.result());
    }
    {
        CheckBuilder cb("K at sample points", c.zero());
        cb.numeric();
        json values = json::array();
        int done = 0;
        for (int k = 0; done < c.zero().samples && k < 10 * c.zero().samples + 10; ++k) {
            Point p = random_point(A.chart().coords(), c.zero().seed, 700 + k);
            std::optional<ComplexRational> v;
            try {
                v = eval_exact(K, p);
            } catch (const PoleError&) {
                continue;
            }
            std::complex<double> z = v ? std::complex<double>(v->re().get_d(), v->im().get_d())
                                       : eval_numeric(K, to_numeric(p));
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
            if (std::abs(z.imag()) > c.zero().tol) cb.fail("imaginary part at " + point_str(p));
            values.push_back(z.real());
            ++done;
        }
        if (done == 0) cb.fail("every sample point is a pole");
        cb.note(std::to_string(done) + " points, tolerance " + num_str(c.zero().tol));
        c.props()["samples"] = values;
        c.add(cb.result());
    }
}

void cmd_kahler_report(Ctx& c, const Geometry& G) {
    KahlerReport k = kahler_report(G.A, need_J(G), need_g(G), c.zero());
    for (const Check& s : {k.hermitian, k.integrable, k.closed, k.lc_almost_complex}) {
        json j;
        j["name"] = s.name;
        j["holds"] = s.passed;
        if (!s.witness.empty()) j["witness"] = s.witness;
        c.props()["statuses"].push_back(j);
    }
    c.props()["kahler"] = k.kahler();
    c.props()["classification"] = !k.integrable.passed ? "non-integrable"
                                  : !k.hermitian.passed ? "not hermitian"
                                  : k.kahler()          ? "kahler"
                                                        : "hermitian non-kahler";
    c.add(k.equivalence);
    c.add(k.identity);
    c.tensors()["Phi"] = form_json(k.phi);
    c.tensors()["dPhi"] = form_json(k.dphi);
}

void cmd_chern(Ctx& c, const Geometry& G) {
    const std::string& src = c.opt.source;
    if (src != "iphi" && src != "block" && src != "both")
        throw std::invalid_argument("--source must be iphi, block or both");
    ChernReport rep = chern_report(G, c.opt.orders, c.zero());
    c.props()["connection"] = rep.connection;
    c.add({rep.almost_complex, rep.commutes, rep.preserved, rep.iphi_blocks, rep.symmetry});
    for (const ChernOrder& o : rep.orders) {
        const std::string k = std::to_string(o.k);
        c.add(o.closed);
        c.add(o.real);
        if (src == "both") c.add(o.equality);
        c.props()["factor_k" + k] = o.factor;
        if (src != "block") c.tensors()["trace_iphi_k" + k] = form_json(*o.iphi_form);
        if (src != "iphi") c.tensors()["half_trace_block_k" + k] = form_json(*o.block_form);
    }
}

void cmd_second_fundamental(Ctx& c, const Geometry& G) {
    ProdGeomReport r = prodgeom_report(G, c.zero());
    c.add(r.connection.checks());
    c.add(r.second.checks());
    c.props()["integrable"] = r.integrable;
    c.props()["B_vanishes"] = r.second.vanishes();
    c.props()["W_vanishes"] = r.second.W.is_zero();
    c.props()["H_vanishes"] = is_zero(r.second.H);
    c.tensors()["B"] = tensor3_full(r.second.B);
    c.tensors()["W"] = tensor3_full(r.second.W);
    c.tensors()["H"] = section_json(r.second.H);
    if (r.second.k) c.tensors()["k"] = form_json(*r.second.k);
}

void cmd_identity_suite(Ctx& c, const Geometry& G) {
    ProdGeomReport r = prodgeom_report(G, c.zero());
    c.add(r.identities.checks());
    c.props()["integrable"] = r.integrable;
    c.props()["B_vanishes"] = r.second.vanishes();
    c.props()["nijenhuis_form_constant"] = r.identities.nijenhuis_form_constant;
    c.props()["dphi_form_constant"] = r.identities.dphi_form_constant;
    c.props()["nijenhuis_alt_constant"] = r.identities.nijenhuis_alt_constant;
}

void cmd_prolong(Ctx& c, const Geometry& G) {
    Prolongation P(G);
    ProlongationReport r = prolongation_report(P, c.zero());
    c.add(r.checks());
    c.props()["rank"] = P.algebroid()->rank();
    c.report["document"] = emit_document(P.geometry());
}

void cmd_product(Ctx& c, const Geometry& G) {
    if (c.opt.other.empty()) throw std::invalid_argument("product needs a second target");
    ProductAlgebroid P = direct_product(G, resolve_target(c.opt.other));
    c.add(product_report(P, c.zero()).checks());
    c.props()["rank"] = P.geometry.A->rank();
    json ren;
    for (const auto& [from, to] : P.renamed) ren[from] = to;
    c.props()["renamed"] = ren;
    c.report["document"] = emit_document(P.geometry);
}

void cmd_restrict(Ctx& c) {
    if (c.opt.projector.empty()) throw std::invalid_argument("restrict needs --projector <file>");
    ProjectorRestriction R = load_projector(c.opt.projector);
    c.report["target"] = {{"kind", "projector"}, {"name", R.geometry.name}, {"path", c.opt.projector}};
    ProjectorReport r = projector_report(R, c.zero());
    c.add(r.checks());
    json comm = {{"holds", r.commutes.passed}};
    if (!r.commutes.witness.empty()) comm["witness"] = r.commutes.witness;
    c.props()["projector_commutes_with_J"] = comm;
    c.report["document"] = emit_document(R.geometry);
}

void cmd_fixtures(Ctx& c) {
    c.props()["fixtures"] = fixture_names();
    c.props()["parameterized"] = {"prolong(<fixture>)", "product(<fixture>,<fixture>)"};
}

void cmd_emit(Ctx& c, const Geometry& G) { c.report["document"] = emit_document(G); }

using Handler = std::function<void(Ctx&, const Geometry&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h = {
        {"validate", cmd_validate},
        {"nijenhuis", cmd_nijenhuis},
        {"nn-report", cmd_nn_report},
        {"matched-pair", cmd_matched_pair},
        {"levi-civita", cmd_levi_civita},
        {"curvature", cmd_curvature},
        {"sectional", cmd_sectional},
        {"kahler-report", cmd_kahler_report},
        {"chern", cmd_chern},
        {"second-fundamental", cmd_second_fundamental},
        {"identity-suite", cmd_identity_suite},
        {"prolong", cmd_prolong},
        {"product", cmd_product},
        {"restrict", [](Ctx& c, const Geometry&) { cmd_restrict(c); }},
        {"fixtures", [](Ctx& c, const Geometry&) { cmd_fixtures(c); }},
        {"emit", cmd_emit},
    };
    return h;
}

json error_json(const std::string& kind, const std::string& message) {
    json e;
    e["kind"] = kind;
    e["message"] = message;
    return e;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, h] : handlers()) out.push_back(n);
        return out;
    }();
    return names;
}

std::string command_summary(const std::string& command) {
    static const std::map<std::string, std::string> s = {
        {"validate", "structure equations and d(d w) = 0"},
        {"nijenhuis", "Nijenhuis tensor from the bracket and from local coefficients"},
        {"nn-report", "the five integrability tests and their agreement"},
        {"matched-pair", "matched pair of E^{1,0} and E^{0,1} (integrable J only)"},
        {"levi-civita", "Levi-Civita coefficients, torsion and metric compatibility"},
        {"curvature", "curvature tensor and first Bianchi identity"},
        {"sectional", "holomorphic sectional curvature along a section"},
        {"kahler-report", "Hermitian, integrable, closed and Kahler status"},
        {"chern", "Chern forms from i Phi and from the block curvature"},
        {"second-fundamental", "metric product connection, B, W, H and k"},
        {"identity-suite", "identities relating B, N and d Phi"},
        {"prolong", "prolongation with lifted J and metric"},
        {"product", "direct product with a second geometry"},
        {"restrict", "restriction of a trivial algebroid by a projector file"},
        {"fixtures", "list the built-in fixtures"},
        {"emit", "print a geometry as a document"},
    };
    auto it = s.find(command);
    return it == s.end() ? "" : it->second;
}

bool command_needs_target(const std::string& command) { return command != "fixtures" && command != "restrict"; }

CommandResult run_command(const std::string& command, const std::string& target, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    CommandResult res;
    json& rep = res.report;
    rep["schema_version"] = kSchemaVersion;
    rep["command"] = command;
    if (!command_needs_target(command) || target.empty()) {
        rep["target"] = {{"kind", "none"}};
    } else {
        std::error_code ec;
        const bool file = std::filesystem::is_regular_file(target, ec);
        rep["target"] = {{"kind", file ? "document" : "fixture"}, {"name", target}};
    }
    rep["options"] = {{"seed", opt.zero.seed}, {"samples", opt.zero.samples}, {"tol", opt.zero.tol}};
    rep["status"] = "ok";
    rep["exit_code"] = kExitOk;
    rep["checks"] = json::array();
    rep["properties"] = json::object();
    rep["tensors"] = json::object();

    Ctx ctx{opt, rep, {}};
    try {
        auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == command; });
        if (it == handlers().end()) throw std::invalid_argument("unknown command '" + command + "'");
        Geometry G;
        if (command_needs_target(command)) {
            if (target.empty()) throw std::invalid_argument(command + " needs a fixture name or document path");
            G = resolve_target(target);
            rep["target"]["name"] = rep["target"]["kind"] == "document" ? G.name : target;
            if (rep["target"]["kind"] == "document") rep["target"]["path"] = target;
        }
        it->second(ctx, G);
        for (const Check& c : ctx.checks) rep["checks"].push_back(check_json(c, opt.zero));
        if (!all_passed(ctx.checks)) {
            rep["status"] = "check_failed";
            res.exit_code = kExitCheckFailed;
        }
    } catch (const DocumentError& e) {
        rep["status"] = "input_invalid";
        res.exit_code = kExitInputInvalid;
        json err = error_json("document", e.what());
        err["file"] = e.file;
        err["line"] = e.line;
        err["column"] = e.column;
        rep["error"] = err;
    } catch (const PreconditionError& e) {
        rep["status"] = "precondition_unmet";
        res.exit_code = kExitPrecondition;
        rep["error"] = error_json("precondition", e.what());
    } catch (const std::exception& e) {
        rep["status"] = "input_invalid";
        res.exit_code = kExitInputInvalid;
        rep["error"] = error_json("input", e.what());
    }
    if (res.exit_code != kExitCheckFailed && res.exit_code != kExitOk) {
        rep["checks"] = json::array();
        rep["properties"] = json::object();
        rep["tensors"] = json::object();
        rep.erase("document");
    }
    rep["exit_code"] = res.exit_code;
    if (opt.timing)
        rep["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<std::string> schema_errors(const json& r) {
    std::vector<std::string> errs;
    auto need = [&](const json& obj, const std::string& key, json::value_t type, const std::string& where) {
        if (!obj.is_object() || !obj.contains(key)) {
            errs.push_back(where + key + " missing");
            return false;
        }
        const json& v = obj.at(key);
        const bool ok = type == json::value_t::number_integer
                            ? v.is_number_integer()
                            : (type == json::value_t::number_float ? v.is_number() : v.type() == type);
        if (!ok) errs.push_back(where + key + " has the wrong type");
        return ok;
    };
    using vt = json::value_t;
    if (!r.is_object()) return {"report is not an object"};
    if (need(r, "schema_version", vt::number_integer, "") && r["schema_version"] != kSchemaVersion)
        errs.push_back("schema_version is not " + std::to_string(kSchemaVersion));
    need(r, "command", vt::string, "");
    if (need(r, "target", vt::object, "")) need(r["target"], "kind", vt::string, "target.");
    if (need(r, "options", vt::object, "")) {
        need(r["options"], "seed", vt::number_integer, "options.");
        need(r["options"], "samples", vt::number_integer, "options.");
        need(r["options"], "tol", vt::number_float, "options.");
    }
    static const std::vector<std::string> statuses = {"ok", "check_failed", "input_invalid", "precondition_unmet"};
    if (need(r, "status", vt::string, "") &&
        std::find(statuses.begin(), statuses.end(), r["status"].get<std::string>()) == statuses.end())
        errs.push_back("status has an unknown value");
    need(r, "exit_code", vt::number_integer, "");
    static const std::vector<std::string> check_statuses = {"StructurallyZero", "NumericPass", "ProbablyNonzero", "Fail",
                                                            "Skipped"};
    if (need(r, "checks", vt::array, "")) {
        for (std::size_t i = 0; i < r["checks"].size(); ++i) {
            const json& c = r["checks"][i];
            const std::string w = "checks[" + std::to_string(i) + "].";
            need(c, "name", vt::string, w);
            need(c, "passed", vt::boolean, w);
            if (need(c, "status", vt::string, w)) {
                const std::string s = c["status"];
                if (std::find(check_statuses.begin(), check_statuses.end(), s) == check_statuses.end())
                    errs.push_back(w + "status has an unknown value");
                if (s == "NumericPass") need(c, "tolerance", vt::number_float, w);
                if ((s == "Fail" || s == "ProbablyNonzero")) need(c, "witness", vt::string, w);
            }
        }
    }
    need(r, "properties", vt::object, "");
    if (need(r, "tensors", vt::object, ""))
        for (const auto& [name, t] : r["tensors"].items())
            if (!t.is_array()) errs.push_back("tensors." + name + " is not an array");
    if (r.contains("document") && !r["document"].is_string()) errs.push_back("document is not a string");
    if (r.contains("error")) {
        need(r["error"], "kind", vt::string, "error.");
        need(r["error"], "message", vt::string, "error.");
    }
    if (r.contains("timing_ms") && !r["timing_ms"].is_number()) errs.push_back("timing_ms is not a number");
    return errs;
}

std::string render_text(const json& r, bool color) {
    auto paint = [&](const std::string& s, const char* code) { return color ? std::string("\033[") + code + "m" + s + "\033[0m" : s; };
    std::ostringstream os;
    os << r.value("command", "") << " " << r["target"].value("name", "") << ": ";
    const std::string status = r.value("status", "");
    os << (status == "ok" ? paint(status, "32") : paint(status, "31")) << "\n";
    if (r.contains("error")) os << "  " << r["error"].value("message", "") << "\n";
    for (const json& c : r["checks"]) {
        const std::string s = c["status"];
        const char* code = c["passed"].get<bool>() ? (s == "Skipped" ? "33" : "32") : "31";
        os << "  " << paint(s, code) << "  " << c["name"].get<std::string>();
        if (c.contains("witness")) os << "\n      " << c["witness"].get<std::string>();
        if (c.contains("note")) os << "\n      " << c["note"].get<std::string>();
        os << "\n";
    }
    for (const auto& [k, v] : r["properties"].items()) os << "  " << k << " = " << v.dump() << "\n";
    for (const auto& [k, v] : r["tensors"].items()) {
        for (const json& e : v) {
            os << "  " << k;
            if (e.is_object()) {
                os << e["index"].dump() << " = " << (e["value"].is_string() ? e["value"].get<std::string>() : e["value"].dump());
            } else {
                os << " " << e.dump();
            }
            os << "\n";
        }
    }
    if (r.contains("document")) os << "\n" << r["document"].get<std::string>();
    return os.str();
}

}  // namespace alg
