#include "alg/commands.hpp"
#include "doctest.h"

using namespace alg;
using nlohmann::ordered_json;

namespace {

CommandResult run(const std::string& command, const std::string& target, RunOptions opt = {}) {
    CommandResult r = run_command(command, target, opt);
    for (const auto& e : schema_errors(r.report)) FAIL_CHECK(command << " " << target << ": " << e);
    return r;
}

std::string status_of(const ordered_json& report, const std::string& check) {
    for (const auto& c : report["checks"])
        if (c["name"] == check) return c["status"];
    return "";
}

}  // namespace

TEST_CASE("every command succeeds on the flat plane") {
    for (const auto& command : command_names()) {
        CAPTURE(command);
        if (command == "restrict") continue;
        RunOptions opt;
        if (command == "product") opt.other = "flat_r2";
        CommandResult r = run(command, command_needs_target(command) ? "flat_r2" : "", opt);
        CHECK(r.exit_code == kExitOk);
        CHECK(r.report["status"] == "ok");
        CHECK(r.report["command"] == command);
        CHECK(r.report["schema_version"] == kSchemaVersion);
    }
}

TEST_CASE("exit codes") {
    // heis_j is not integrable.
    CommandResult nn = run("nijenhuis", "heis_j");
    CHECK(nn.exit_code == kExitOk);
    CHECK(nn.report["properties"]["vanishes"] == false);
    CHECK(run("validate", "heis_broken").exit_code == kExitCheckFailed);
    CHECK(run("validate", "no_such_fixture").exit_code == kExitInputInvalid);
    CHECK(run("no-such-command", "flat_r2").exit_code == kExitInputInvalid);
    CommandResult mp = run("matched-pair", "heis_j");
    CHECK(mp.exit_code == kExitPrecondition);
    CHECK(mp.report["status"] == "precondition_unmet");
    CHECK(mp.report["checks"].empty());
    CHECK(mp.report["error"]["kind"] == "precondition");
    RunOptions bad;
    bad.source = "neither";
    CHECK(run("chern", "flat_r2", bad).exit_code == kExitInputInvalid);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    RunOptions opt;
    opt.zero.seed = 7;
    for (const auto& command : {"validate", "kahler-report", "identity-suite", "chern"}) {
        CAPTURE(command);
        CHECK(run(command, "warped_r4", opt).report.dump() == run(command, "warped_r4", opt).report.dump());
    }
}

TEST_CASE("Nijenhuis tensor of heis_j") {
    CommandResult r = run("nijenhuis", "heis_j");
    bool found = false;
    for (const auto& entry : r.report["tensors"]["N"])
        if (entry["index"] == ordered_json::array({3, 1, 2})) {
            CHECK(entry["value"] == "-1");
            found = true;
        }
    CHECK(found);
}

TEST_CASE("identity suite constants") {
    CommandResult r = run("identity-suite", "heis_j");
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report["properties"].dump().find("-1/16") != std::string::npos);
}

TEST_CASE("kahler report classification") {
    CHECK(run("kahler-report", "conformal_sphere_chart").report["properties"]["classification"] == "kahler");
    CHECK(run("kahler-report", "warped_r4").report["properties"]["classification"] == "hermitian non-kahler");
    CHECK(run("kahler-report", "heis_j").report["properties"]["classification"] == "non-integrable");
}

TEST_CASE("chern on the sphere chart") {
    RunOptions opt;
    opt.orders = {1, 2};
    CommandResult r = run("chern", "conformal_sphere_chart", opt);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report["properties"]["factor_k1"] == "1/2");
}

TEST_CASE("sectional curvature with a custom direction") {
    RunOptions opt;
    opt.direction = "1,1";
    CommandResult r = run("sectional", "conformal_sphere_chart", opt);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report["properties"]["K"] == "1");
    opt.direction = "e9";
    CHECK(run("sectional", "conformal_sphere_chart", opt).exit_code == kExitInputInvalid);
}

TEST_CASE("emitted documents re-enter as targets") {
    CommandResult r = run("prolong", "flat_r2");
    CHECK(r.report["document"].is_string());
}

TEST_CASE("schema validator catches malformed reports") {
    ordered_json bad = run("validate", "flat_r2").report;
    bad.erase("status");
    CHECK_FALSE(schema_errors(bad).empty());
    ordered_json wrong = run("validate", "flat_r2").report;
    wrong["checks"][0]["status"] = "maybe";
    CHECK_FALSE(schema_errors(wrong).empty());
}

TEST_CASE("text rendering mentions every check") {
    ordered_json rep = run("validate", "heis_broken").report;
    const std::string text = render_text(rep, false);
    for (const auto& c : rep["checks"]) CHECK(text.find(c["name"].get<std::string>()) != std::string::npos);
    CHECK(text.find("\x1b[") == std::string::npos);
    CHECK(render_text(rep, true).find("\x1b[") != std::string::npos);
}
