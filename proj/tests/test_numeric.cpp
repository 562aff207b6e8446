#include <catch2/catch_amalgamated.hpp>

#include "spshadow/builtins.hpp"
#include "spshadow/sdp.hpp"
#include "spshadow/degrees.hpp"
#include "test_util.hpp"

using namespace spshadow;
using testutil::Rng;

namespace {

FloatSymMatrix random_sym(Rng& rng, int n, double scale = 2.0) {
    FloatSymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set_sym(i, j, rng.real(-scale, scale));
    return m;
}

double det_float(const FloatSymMatrix& m) {
    const int n = m.size();
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    double det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) >
                std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)]))
                piv = i;
        if (a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)] == 0) return 0;
        if (piv != k) {
            std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(k)]);
            det = -det;
        }
        det *= a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        for (int i = k + 1; i < n; ++i) {
            double f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] /
                       a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
            for (int j = k; j < n; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        }
    }
    return det;
}

}  // namespace

TEST_CASE("jacobi eigen basics") {
    FloatSymMatrix id(4);
    for (int i = 0; i < 4; ++i) id.raw(i, i) = 1;
    auto e = jacobi_eigen(id);
    for (double v : e.values) CHECK(v == Catch::Approx(1.0));

    FloatSymMatrix d(3);
    d.raw(0, 0) = 3;
    d.raw(1, 1) = 1;
    d.raw(2, 2) = 2;
    auto e2 = jacobi_eigen(d);
    CHECK(e2.values == std::vector<double>{3, 2, 1});

    CHECK_THROWS_AS(jacobi_eigen(id, 0.0), std::invalid_argument);
}

TEST_CASE("jacobi eigen satisfies trace and determinant identities") {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        FloatSymMatrix m = random_sym(rng, 5);
        auto e = jacobi_eigen(m);
        double sum = 0, prod = 1;
        for (double v : e.values) {
            sum += v;
            prod *= v;
        }
        CHECK(std::abs(sum - m.trace()) <= 1e-8 * (1 + std::abs(m.trace())));
        double det = det_float(m);
        CHECK(std::abs(prod - det) <= 1e-8 * (1 + std::abs(det)));
    }
}

TEST_CASE("jacobi eigen orthogonality and reconstruction") {
    Rng rng(72);
    for (int trial = 0; trial < 100; ++trial) {
        int n = static_cast<int>(rng.range(2, 6));
        FloatSymMatrix m = random_sym(rng, n);
        auto e = jacobi_eigen(m);
        // Q^T Q = I
        double worst_orth = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double dot = 0;
                for (int i = 0; i < n; ++i)
                    dot += e.vectors[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                           e.vectors[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)];
                worst_orth = std::max(worst_orth, std::abs(dot - (a == b ? 1.0 : 0.0)));
            }
        CHECK(worst_orth < 1e-9);
        // Q Lambda Q^T = M
        double worst_rec = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k)
                    s += e.values[static_cast<std::size_t>(k)] *
                         e.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                         e.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                worst_rec = std::max(worst_rec, std::abs(s - m(i, j)));
            }
        CHECK(worst_rec <= 1e-8 * (1 + m.frobenius_norm()));
    }
}

TEST_CASE("psd projection basics") {
    FloatSymMatrix d(2);
    d.raw(0, 0) = 1;
    d.raw(1, 1) = -1;
    auto p = psd_project(d);
    CHECK(p(0, 0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(p(1, 1) == Catch::Approx(0.0).margin(1e-12));

    // PSD input is a fixed point
    Rng rng(73);
    FloatSymMatrix m = random_sym(rng, 3);
    FloatSymMatrix psd = psd_project(m);
    CHECK((psd_project(psd) - psd).frobenius_norm() < 1e-10);
}

TEST_CASE("psd projection beats a local grid search") {
    Rng rng(74);
    for (int trial = 0; trial < 5; ++trial) {
        FloatSymMatrix m = random_sym(rng, 3);
        FloatSymMatrix p = psd_project(m);
        double best = (p - m).frobenius_norm();
        // perturb the projection on a small grid; nothing PSD should be closer
        for (int a = 0; a < 40; ++a) {
            FloatSymMatrix q = p;
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) q.set_sym(i, j, q(i, j) + rng.real(-0.05, 0.05));
            auto e = jacobi_eigen(q);
            if (e.values.back() < 0) continue;  // left the cone
            CHECK((q - m).frobenius_norm() >= best - 1e-6);
        }
    }
}

TEST_CASE("psd projection is idempotent and non-expansive") {
    Rng rng(75);
    for (int trial = 0; trial < 100; ++trial) {
        int n = static_cast<int>(rng.range(2, 5));
        FloatSymMatrix a = random_sym(rng, n);
        FloatSymMatrix b = random_sym(rng, n);
        FloatSymMatrix pa = psd_project(a), pb = psd_project(b);
        CHECK((psd_project(pa) - pa).frobenius_norm() < 1e-9);
        CHECK((pa - pb).frobenius_norm() <= (a - b).frobenius_norm() + 1e-9);
    }
}

TEST_CASE("membership examples") {
    auto ell = elliptope_pencil();
    CHECK(is_member(ell, {1, 1, 1}).feasible);
    auto out = is_member(ell, {1, 1, -1});
    CHECK_FALSE(out.feasible);
    CHECK(out.final_gap > 1e-3);
    CHECK(is_member(hexagon_gouveia_pencil(), {0, 0}).feasible);
    CHECK_THROWS_AS(is_member(ell, {1, 1}), std::invalid_argument);
}

TEST_CASE("membership is monotone along rays from the origin") {
    Rng rng(76);
    for (const char* name : {"elliptope", "square", "hexagon_gouveia", "hexagon_fs"}) {
        SymPencil P = builtin_pencil(name);
        REQUIRE(is_member(P, std::vector<double>(static_cast<std::size_t>(P.d), 0.0)).feasible);
        for (int ray = 0; ray < 20; ++ray) {
            std::vector<double> x;
            for (int i = 0; i < P.d; ++i) x.push_back(rng.real(-1.5, 1.5));
            if (!is_member(P, x).feasible) continue;
            double theta = rng.real(0.0, 1.0);
            std::vector<double> xs;
            for (double v : x) xs.push_back(theta * v);
            CHECK(is_member(P, xs).feasible);
        }
    }
}

TEST_CASE("support function at known vertices") {
    auto hex = hexagon_gouveia_pencil();
    CHECK(support_function(hex, {1, 0}).value == Catch::Approx(1.0).margin(1e-6));
    CHECK(support_function(hex, {0, 1}).value == Catch::Approx(1.0).margin(1e-6));
    auto sq = support_function(square_pencil(), {1, 1});
    CHECK(sq.value == Catch::Approx(2.0).margin(1e-6));
    CHECK(std::abs(sq.argmax[0] - 1) < 1e-5);
    CHECK(std::abs(sq.argmax[1] - 1) < 1e-5);
    auto fs = support_function(hexagon_fs_pencil(), {0, 1});
    CHECK(fs.value == Catch::Approx(std::sqrt(0.75)).margin(1e-6));
    CHECK_THROWS_AS(support_function(square_pencil(), {0, 0}), std::invalid_argument);
}

TEST_CASE("support function is sublinear on builtin shadows") {
    Rng rng(77);
    for (const char* name : {"example322", "square", "hexagon_gouveia", "hexagon_fs"}) {
        SymPencil P = builtin_pencil(name);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> c1{rng.real(-1, 1), rng.real(-1, 1)};
            std::vector<double> c2{rng.real(-1, 1), rng.real(-1, 1)};
            if (std::abs(c1[0]) + std::abs(c1[1]) < 0.1 || std::abs(c2[0]) + std::abs(c2[1]) < 0.1)
                continue;
            std::vector<double> sum{c1[0] + c2[0], c1[1] + c2[1]};
            if (std::abs(sum[0]) + std::abs(sum[1]) < 0.1) continue;
            double h1 = support_function(P, c1).value;
            double h2 = support_function(P, c2).value;
            double hs = support_function(P, sum).value;
            CHECK(hs <= h1 + h2 + 1e-6);
        }
    }
}

TEST_CASE("boundary scan rank ranges", "[slow]") {
    // mixed 3x3 pencil: only the two Pataki ranks appear and the
    // classification is sharply separated
    auto pts = boundary_scan(example322_pencil(), 64);
    for (const auto& s : pts) {
        REQUIRE(s.ok);
        CHECK((s.rank == 1 || s.rank == 2));
        CHECK(s.rank_gap > 1e3);
    }

    // square: every boundary point sits on the unit square
    for (const auto& s : boundary_scan(square_pencil(), 64)) {
        REQUIRE(s.ok);
        CHECK(std::abs(std::max(std::abs(s.point[0]), std::abs(s.point[1])) - 1.0) < 1e-5);
    }

    // seeded pencils: observed ranks stay in the Pataki range
    struct Case {
        int n, d, p;
        std::uint64_t seed;
    };
    for (const Case& c : {Case{3, 2, 1, 11}, Case{3, 2, 2, 12}, Case{4, 2, 3, 1}}) {
        auto P = seeded_pencil(c.n, c.d, c.p, c.seed);
        auto range = pataki_range(c.n, c.p).ranks;
        for (const auto& s : boundary_scan(P, 32)) {
            if (!s.ok) continue;  // unbounded directions are reported, not hidden
            bool in_range = false;
            for (int r : range) in_range = in_range || r == s.rank;
            INFO("n=" << c.n << " p=" << c.p << " angle=" << s.angle << " rank=" << s.rank);
            CHECK(in_range);
        }
    }
}

TEST_CASE("hexagon scan points satisfy the degree-18 invariant curve", "[slow]") {
    auto r = make_xy_ring(2, 0);
    auto pp = [&](const char* s) { return Polynomial::parse(r, s); };
    Polynomial curve = canonical_normalize(
        pp("x2^2") * pp("3*x1^2 - x2^2").pow(2) * pp("2*x1 - 1") * pp("2*x1 + 1") *
        pp("4*x2^2 - 3") * pp("x1^2 - 3*x2^2 - 2*x1 + 1") * pp("x1^2 - 3*x2^2 + 2*x1 + 1") *
        pp("3*x1^2 - x2^2 - 6*x1 + 3") * pp("3*x1^2 - x2^2 + 6*x1 + 3"));
    Rational maxc(0);
    for (const auto& t : curve.terms())
        if (t.coeff.abs() > maxc) maxc = t.coeff.abs();
    double scale = maxc.to_double();
    for (const auto& s : boundary_scan(hexagon_fs_pencil(), 360)) {
        REQUIRE(s.ok);
        CHECK(std::abs(curve.evaluate_float(s.point)) / scale < 1e-5);
    }
}

TEST_CASE("scan requires planar shadows") {
    CHECK_THROWS_AS(boundary_scan(elliptope_pencil(), 8), std::invalid_argument);
}

TEST_CASE("unbounded directions raise a numerical error") {
    // S = { x : x >= 0 } is unbounded upward
    QMatrix a{{Rational(1)}};
    QMatrix c{{Rational(0)}};
    SymPencil P(1, 1, 0, {a}, {}, c);
    CHECK_THROWS_AS(support_function(P, {1.0}), NumericError);
}
