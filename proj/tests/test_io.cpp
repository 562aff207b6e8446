#include <catch2/catch_amalgamated.hpp>

#include "spshadow/builtins.hpp"
#include "spshadow/pencil_json.hpp"
#include "spshadow/sdp.hpp"
#include "spshadow/svg.hpp"
#include "test_util.hpp"

using namespace spshadow;
using testutil::Rng;

TEST_CASE("pencil json round-trips builtins") {
    for (const char* name : {"elliptope", "example322", "square", "hexagon_gouveia", "hexagon_fs"}) {
        SymPencil P = builtin_pencil(name);
        SymPencil Q = parse_pencil(emit_pencil(P));
        CHECK(Q.n == P.n);
        CHECK(Q.d == P.d);
        CHECK(Q.p == P.p);
        CHECK(Q.A == P.A);
        CHECK(Q.B == P.B);
        CHECK(Q.C == P.C);
    }
}

TEST_CASE("pencil json round-trips randomized documents") {
    Rng rng(81);
    for (int trial = 0; trial < 100; ++trial) {
        int n = static_cast<int>(rng.range(1, 4));
        int d = static_cast<int>(rng.range(1, 3));
        int p = static_cast<int>(rng.range(0, 3));
        auto sym = [&]() {
            QMatrix m = qmatrix_zero(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Rational v = rng.rational(9, 10);
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
                }
            return m;
        };
        std::vector<QMatrix> A, B;
        for (int i = 0; i < d; ++i) A.push_back(sym());
        for (int j = 0; j < p; ++j) B.push_back(sym());
        SymPencil P(n, d, p, A, B, sym());
        SymPencil Q = parse_pencil(emit_pencil(P));
        CHECK(Q.A == P.A);
        CHECK(Q.B == P.B);
        CHECK(Q.C == P.C);
    }
}

TEST_CASE("pencil json error reporting") {
    // asymmetric matrix names the offending entries
    try {
        parse_pencil(R"({"n":2,"d":1,"p":0,
                         "A":[[[0,1],[2,0]]],
                         "B":[],
                         "C":[[1,0],[0,1]]})");
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("A1") != std::string::npos);
        CHECK(msg.find("(0,1)") != std::string::npos);
    }

    CHECK_THROWS_WITH(parse_pencil(R"({"n":1,"d":1,"p":0,"A":[[["x"]]],"B":[],"C":[[0]]})"),
                      Catch::Matchers::ContainsSubstring("A1 entry (0,0)"));
    CHECK_THROWS_WITH(parse_pencil(R"({"n":1,"d":1,"p":0,"A":[[[1]]],"B":[]})"),
                      Catch::Matchers::ContainsSubstring("missing field \"C\""));
    CHECK_THROWS_WITH(parse_pencil(R"({"n":1,"d":1,"p":0,"A":[[["1/0"]]],"B":[],"C":[[0]]})"),
                      Catch::Matchers::ContainsSubstring("denominator"));
    CHECK_THROWS_AS(parse_pencil("not json at all"), std::invalid_argument);
}

TEST_CASE("rational literals never pass through floats") {
    SymPencil P = parse_pencil(R"({"n":1,"d":1,"p":0,"A":[[["-7/10"]]],"B":[],"C":[[2]]})");
    CHECK(P.A[0][0][0] == Rational(-7, 10));
    CHECK(P.C[0][0] == Rational(2));
    // emit keeps integers as integers and fractions as text
    std::string text = emit_pencil(P, -1);
    CHECK(text.find("\"-7/10\"") != std::string::npos);
    CHECK(text.find("2") != std::string::npos);
}

TEST_CASE("svg renderer draws the square boundary where it belongs") {
    auto pts = boundary_scan(square_pencil(), 64);
    SvgScene scene;
    scene.xmin = -1.5;
    scene.xmax = 1.5;
    scene.ymin = -1.5;
    scene.ymax = 1.5;
    std::vector<std::array<double, 2>> region;
    for (const auto& s : pts) {
        REQUIRE(s.ok);
        region.push_back({s.point[0], s.point[1]});
        CHECK(std::abs(std::max(std::abs(s.point[0]), std::abs(s.point[1])) - 1.0) < 1e-3);
    }
    scene.regions.push_back(region);
    std::string svg = render_curves(scene);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("svg renderer traces the quartic through the origin") {
    auto r = make_xy_ring(2, 0);
    SvgScene scene;
    scene.xmin = -1.2;
    scene.xmax = 0.2;
    scene.ymin = -1.2;
    scene.ymax = 0.2;
    scene.grid = 64;
    scene.curves.push_back(
        {Polynomial::parse(r,
                           "100*x1^4 + 240*x1^3*x2 + 344*x1^2*x2^2 + 240*x1*x2^3 + 144*x2^4 + "
                           "140*x1^3 + 368*x1^2*x2 + 380*x1*x2^2 + 168*x2^3 + 49*x1^2 + "
                           "140*x1*x2 + 49*x2^2"),
         "quartic"});
    std::string svg = render_curves(scene);
    auto path_pos = svg.find("<path");
    REQUIRE(path_pos != std::string::npos);
    auto d_pos = svg.find("d=\"", path_pos);
    REQUIRE(d_pos != std::string::npos);
    CHECK(svg[d_pos + 3] == 'M');  // a nonempty curve layer
}

TEST_CASE("svg renderer emits a valid empty scene and is deterministic") {
    SvgScene scene;
    std::string a = render_curves(scene);
    std::string b = render_curves(scene);
    CHECK(a == b);
    CHECK(a.find("<svg") == 0);
    CHECK(a.find("<rect") != std::string::npos);

    scene.grid = 8;
    CHECK_THROWS_AS(render_curves(scene), std::invalid_argument);
    scene.grid = 64;
    scene.xmax = scene.xmin;
    CHECK_THROWS_AS(render_curves(scene), std::invalid_argument);
}
