#include <filesystem>
#include <fstream>

#include "alg/document.hpp"
#include "doctest.h"

using namespace alg;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_document(text, "t.alg");
    } catch (const DocumentError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("emit then parse reproduces every fixture") {
    std::vector<std::string> names = fixture_names();
    names.push_back("prolong(flat_r2)");
    names.push_back("product(flat_r2,heis_j)");
    for (const auto& name : names) {
        CAPTURE(name);
        Geometry G = fixture(name);
        const std::string text = emit_document(G);
        Geometry back = parse_document(text);
        CHECK(structurally_equal(G, back));
        CHECK(emit_document(back) == text);
    }
}

TEST_CASE("a hand-written document") {
    const std::string text = R"(# Heisenberg with the standard J
name = mine
[chart]
name = line
coords = x
rank = 4
[bracket]
1 2 3 = 1
[J]
0, 0, -1, 0
0, 0, 0, -1
1, 0, 0, 0
0, 1, 0, 0
[metric]
1, 0, 0, 0
0, 1, 0, 0
0, 0, 1, 0
0, 0, 0, 1
)";
    Geometry G = parse_document(text);
    CHECK(G.name == "mine");
    CHECK(structurally_equal(G, fixture("heis_j")));
    // Antisymmetry is filled in.
    CHECK(G.A->C(2, 1, 0) == Scalar(-1));
}

TEST_CASE("import keeps the fixture's parts unless replaced") {
    Geometry G = parse_document("import = warped_r4\n[metric]\n2,0,0,0\n0,2,0,0\n0,0,2,0\n0,0,0,2\n");
    Geometry W = fixture("warped_r4");
    CHECK(G.A->C(0, 0, 2) == W.A->C(0, 0, 2));
    CHECK(*G.J == *W.J);
    CHECK((*G.g)(0, 0) == Scalar(2));
    Geometry plain = parse_document("import = heis_j\n");
    CHECK(structurally_equal(plain, fixture("heis_j")));
}

TEST_CASE("errors carry file, line and column") {
    const std::string base = "[chart]\ncoords = x\nrank = 2\n[anchor]\n1\n0\n[bracket]\n1 2 1 = x +* 2\n";
    const std::string msg = error_of(base);
    CHECK(msg.rfind("t.alg:8:", 0) == 0);
    CHECK(error_of("[chart]\ncoords = x\nrank = 2\n[anchor]\n1, 2\n0\n").rfind("t.alg:5:", 0) == 0);
    CHECK(error_of("[chart]\ncoords = x\nrank = 2\n[bracket]\n2 1 1 = 1\n").rfind("t.alg:5:", 0) == 0);
    CHECK(error_of("[chart]\ncoords = x\nrank = 2\n[bogus]\n").rfind("t.alg:4:", 0) == 0);
    CHECK(error_of("[chart]\ncoords = x\nrank = 2\n[anchor]\ny\n0\n").rfind("t.alg:5:1:", 0) == 0);
    CHECK(error_of("[chart]\ncoords = x\n") != "");
    CHECK(error_of("[chart]\ncoords = x\nrank = 2\n[J]\n0,-1\n1,0\n[metric]\n1,0\n") != "");
}

TEST_CASE("projector documents round trip") {
    const ProjectorRestriction& R = s3_projector();
    const std::string text = emit_projector(R);
    ProjectorRestriction back = parse_projector(text);
    CHECK(back.Pi == R.Pi);
    CHECK(back.ambient_anchor == R.ambient_anchor);
    CHECK(structurally_equal(back.geometry, R.geometry));
}

TEST_CASE("targets resolve to files or fixtures") {
    const auto path = std::filesystem::temp_directory_path() / "alg_test_target.alg";
    {
        std::ofstream out(path);
        out << emit_document(fixture("flat_r4"));
    }
    CHECK(structurally_equal(resolve_target(path.string()), fixture("flat_r4")));
    CHECK(structurally_equal(resolve_target("flat_r4"), fixture("flat_r4")));
    CHECK_THROWS(resolve_target("no_such_fixture"));
    std::filesystem::remove(path);
}
