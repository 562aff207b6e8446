#include <catch2/catch_amalgamated.hpp>

#include "spshadow/branch.hpp"
#include "spshadow/builtins.hpp"

using namespace spshadow;

namespace {

Polynomial pp(const RingPtr& r, const std::string& s) { return Polynomial::parse(r, s); }

RingPtr xring() { return make_xy_ring(2, 0); }

const char* kQuartic1 =
    "100*x1^4 + 240*x1^3*x2 + 344*x1^2*x2^2 + 240*x1*x2^3 + 144*x2^4 + 140*x1^3 + 368*x1^2*x2 + "
    "380*x1*x2^2 + 168*x2^3 + 49*x1^2 + 140*x1*x2 + 49*x2^2";

Polynomial quartic2_expanded() {
    auto r = xring();
    return canonical_normalize(pp(r, "2*x2 - 3") * pp(r, "22*x2 + 17") *
                               pp(r, "20*x1 + 2*x2 + 17") * pp(r, "20*x1 + 22*x2 - 3"));
}

Polynomial six_lines_squared() {
    auto r = xring();
    Polynomial one = Polynomial::constant(r, Rational(1));
    Polynomial x1 = Polynomial::variable(r, 0), x2 = Polynomial::variable(r, 1);
    return canonical_normalize((x1 - one).pow(2) * (x1 + one).pow(2) * (x2 - one).pow(2) *
                               (x2 + one).pow(2) * (x1 - x2).pow(2) * (x1 + x2).pow(2));
}

Polynomial hexagon_curve18() {
    auto r = xring();
    return canonical_normalize(pp(r, "x2^2") * pp(r, "3*x1^2 - x2^2").pow(2) * pp(r, "2*x1 - 1") *
                               pp(r, "2*x1 + 1") * pp(r, "4*x2^2 - 3") *
                               pp(r, "x1^2 - 3*x2^2 - 2*x1 + 1") *
                               pp(r, "x1^2 - 3*x2^2 + 2*x1 + 1") *
                               pp(r, "3*x1^2 - x2^2 - 6*x1 + 3") *
                               pp(r, "3*x1^2 - x2^2 + 6*x1 + 3"));
}

}  // namespace

TEST_CASE("rank-1 branch locus of the mixed 3x3 pencil", "[slow]") {
    auto c = rank_branch_locus(example322_pencil(), 1, false, true);
    REQUIRE(c.principal());
    CHECK(c.poly().to_text() == kQuartic1);
    CHECK(c.degree == 4);
    REQUIRE(c.expected.degree.has_value());
    CHECK(*c.expected.degree == 4);
}

TEST_CASE("rank-2 branch locus needs the saturation", "[slow]") {
    auto c = rank_branch_locus(example322_pencil(), 2, true, true);
    REQUIRE(c.principal());
    CHECK(c.poly() == quartic2_expanded());
    CHECK(c.degree == 4);
    REQUIRE(c.expected.degree.has_value());
    CHECK(*c.expected.degree == 4);
}

TEST_CASE("square pencil: resultant path yields the perfect square") {
    auto c = rank_branch_locus(square_pencil(), 3, false, false, BranchMethod::Resultant);
    REQUIRE(c.principal());
    CHECK(c.degree == 12);
    CHECK(c.poly() == six_lines_squared());
    CHECK(squarefree_part(c.poly()).total_degree() == 6);

    auto reduced = rank_branch_locus(square_pencil(), 3, false, true, BranchMethod::Resultant);
    CHECK(reduced.degree == 6);
}

TEST_CASE("perturbed square family: squarefree degree 12, specializes at 0", "[slow]") {
    auto fam = family_pencil({"square_A_eps", Rational(1, 50)});
    auto c = rank_branch_locus(fam, 3, false, false, BranchMethod::Resultant);
    REQUIRE(c.principal());
    CHECK(c.degree == 12);
    for (int v = 0; v < 2; ++v)
        CHECK(multivariate_gcd(c.poly(), c.poly().derivative(v)).is_constant());
    auto at_zero = family_pencil({"square_A_eps", Rational(0)});
    auto c0 = rank_branch_locus(at_zero, 3, false, false, BranchMethod::Resultant);
    CHECK(c0.poly() == six_lines_squared());
}

TEST_CASE("projected cubic pencil gives a sextic by either method") {
    auto P = elliptope_projection_321();
    auto g = rank_branch_locus(P, 2, false, true, BranchMethod::Groebner);
    auto r = rank_branch_locus(P, 2, false, true, BranchMethod::Resultant);
    REQUIRE(g.principal());
    REQUIRE(r.principal());
    CHECK(g.degree == 6);
    CHECK(r.degree == 6);
    CHECK(g.poly() == r.poly());
    REQUIRE(g.expected.degree.has_value());
    CHECK(*g.expected.degree == 6);
}

TEST_CASE("corank-1 branch degree is independent of the shadow dimension") {
    for (int d = 1; d <= 3; ++d) {
        auto P = degree_independence_pencil(d);
        auto c = rank_branch_locus(P, 2, false, true);
        REQUIRE(c.principal());
        INFO("d = " << d);
        CHECK(c.degree == 6);
    }
}

TEST_CASE("method validation") {
    CHECK_THROWS_AS(rank_branch_locus(example322_pencil(), 2, false, true, BranchMethod::Resultant),
                    std::invalid_argument);  // p = 2: no single variable to eliminate
    CHECK_THROWS_AS(rank_branch_locus(square_pencil(), 3, true, true, BranchMethod::Resultant),
                    std::invalid_argument);  // saturation is a Groebner-path option
    CHECK_THROWS_AS(rank_branch_locus(square_pencil(), 0, false, true), std::invalid_argument);
    CHECK_THROWS_AS(rank_branch_locus(square_pencil(), 4, false, true), std::invalid_argument);
}

TEST_CASE("p = 0 top rank recovers the determinant") {
    auto c = rank_branch_locus(elliptope_pencil(), 2, false, true);
    REQUIRE(c.principal());
    auto r = c.poly().ring();
    CHECK(c.poly() == canonical_normalize(pp(r, "2*x1*x2*x3 - x1^2 - x2^2 - x3^2 + 1")));
    CHECK(c.degree == 3);
}

TEST_CASE("non-principal elimination ideals are surfaced, not hidden") {
    // rank-1 locus of the cubic symmetroid pencil: a curve in 3-space, its
    // ideal is not principal and no variables are projected away
    auto c = rank_branch_locus(elliptope_pencil(), 1, false, true);
    CHECK_FALSE(c.principal());
    CHECK_FALSE(c.elimination_ideal().is_zero_ideal());
    CHECK(c.elimination_ideal().generators().size() >= 2);
}

TEST_CASE("heavy Jacobian-minor pipelines sit behind the long-running flag") {
    CHECK_THROWS_AS(rank_branch_locus(hexagon_fs_pencil(), 2, false, true), LongRunningRequired);
    try {
        rank_branch_locus(hexagon_fs_pencil(), 2, false, true);
    } catch (const BudgetExceeded& e) {
        CHECK(std::string(e.what()).find("long-running") != std::string::npos);
    }
}

TEST_CASE("verify_factorization") {
    auto r = xring();
    // the six squared lines against the square-pencil resultant
    auto c = rank_branch_locus(square_pencil(), 3, false, false, BranchMethod::Resultant);
    Polynomial one = Polynomial::constant(r, Rational(1));
    Polynomial x1 = Polynomial::variable(r, 0), x2 = Polynomial::variable(r, 1);
    std::vector<std::pair<Polynomial, unsigned>> lines{
        {x1 - one, 2}, {x1 + one, 2}, {x2 - one, 2}, {x2 + one, 2}, {x1 - x2, 2}, {x1 + x2, 2}};
    CHECK(verify_factorization(c.poly(), lines).status == FactorCheckStatus::Equal);

    // nine factors of the degree-18 hexagon curve
    std::vector<std::pair<Polynomial, unsigned>> nine{
        {pp(r, "x2"), 2},
        {pp(r, "3*x1^2 - x2^2"), 2},
        {pp(r, "2*x1 - 1"), 1},
        {pp(r, "2*x1 + 1"), 1},
        {pp(r, "4*x2^2 - 3"), 1},
        {pp(r, "x1^2 - 3*x2^2 - 2*x1 + 1"), 1},
        {pp(r, "x1^2 - 3*x2^2 + 2*x1 + 1"), 1},
        {pp(r, "3*x1^2 - x2^2 - 6*x1 + 3"), 1},
        {pp(r, "3*x1^2 - x2^2 + 6*x1 + 3"), 1}};
    Polynomial curve = hexagon_curve18();
    CHECK(curve.total_degree() == 18);
    CHECK(verify_factorization(curve, nine).status == FactorCheckStatus::Equal);

    // proper divisor reports the exact cofactor
    auto check = verify_factorization(pp(r, "x1^2 - x2^2"), {{pp(r, "x1 - x2"), 1}});
    REQUIRE(check.status == FactorCheckStatus::ProperDivisor);
    CHECK(*check.cofactor == pp(r, "x1 + x2"));

    CHECK(verify_factorization(pp(r, "x1^2 + 1"), {{pp(r, "x1 + 2"), 1}}).status ==
          FactorCheckStatus::Fail);
}

TEST_CASE("degree-18 hexagon curve vanishes at the stated vertices") {
    Polynomial curve = hexagon_curve18();
    CHECK(curve.evaluate({Rational(1), Rational(0)}) == Rational(0));
    CHECK(curve.evaluate({Rational(-1), Rational(0)}) == Rational(0));
    double s3 = std::sqrt(3.0) / 2;
    for (double sx : {0.5, -0.5})
        for (double sy : {s3, -s3}) CHECK(std::abs(curve.evaluate_float({sx, sy})) < 1e-9);
}

TEST_CASE("builtin pencils and families") {
    CHECK_THROWS_AS(builtin_pencil("nope"), std::invalid_argument);
    CHECK_THROWS_AS(family_pencil({"nope", Rational(0)}), std::invalid_argument);
    // parameter 0 reproduces the unperturbed pencils matrix-for-matrix
    for (const char* name : {"square_A_eps", "hexagon_H_eps", "hexagon_fs_eps"}) {
        SymPencil fam = family_pencil({name, Rational(0)});
        SymPencil base = builtin_pencil(name == std::string("square_A_eps") ? "square"
                                        : name == std::string("hexagon_H_eps") ? "hexagon_gouveia"
                                                                                : "hexagon_fs");
        CHECK(fam.A == base.A);
        CHECK(fam.B == base.B);
        CHECK(fam.C == base.C);
    }
    // weighted entries of the second hexagon pencil
    auto M = assemble(hexagon_fs_pencil());
    auto r = M.ring();
    CHECK(M.at(1, 1) == pp(r, "1/2*y1 + 1/2"));
    CHECK(M.at(2, 2) == pp(r, "-1/2*y1 + 1/2"));
    CHECK(M.at(1, 2) == pp(r, "1/2*y2"));
    CHECK(M.at(2, 3) == pp(r, "-y2"));
    CHECK(M.at(0, 3) == pp(r, "y3"));
    CHECK(M.at(1, 3) == pp(r, "y1"));
}

TEST_CASE("boundary report on the mixed 3x3 pencil", "[slow]") {
    auto entries = boundary_report(example322_pencil());
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].rank == 1);
    REQUIRE(entries[0].curve.has_value());
    CHECK(entries[0].curve->poly().to_text() == kQuartic1);
    CHECK(*entries[0].expected.degree == 4);
    CHECK(entries[1].rank == 2);
    REQUIRE(entries[1].curve.has_value());
    CHECK(entries[1].curve->poly() == quartic2_expanded());
    CHECK(*entries[1].expected.degree == 4);
}

TEST_CASE("boundary report on the square and projected-cubic pencils") {
    BoundaryReportOptions raw;
    raw.reduce = false;
    auto sq = boundary_report(square_pencil(), raw);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].rank == 3);
    CHECK(sq[0].curve->degree == 12);
    auto sq_reduced = boundary_report(square_pencil());
    CHECK(sq_reduced[0].curve->degree == 6);

    auto proj = boundary_report(elliptope_projection_321());
    REQUIRE(proj.size() == 1);
    CHECK(proj[0].rank == 2);
    CHECK(proj[0].curve->degree == 6);
}

TEST_CASE("boundary report records skips instead of dropping ranks") {
    BoundaryReportOptions tiny;
    tiny.gb.max_pairs = 1;
    auto entries = boundary_report(example322_pencil(), tiny);
    REQUIRE(entries.size() == 2);
    for (const auto& e : entries) {
        CHECK_FALSE(e.curve.has_value());
        CHECK_FALSE(e.skip_reason.empty());
    }
}

TEST_CASE("spec-shaped overload matches the options form") {
    auto a = rank_branch_locus(square_pencil(), 3, false, true, BranchMethod::Auto);
    BranchOptions o;
    o.saturate_lower = false;
    o.reduce = true;
    auto b = rank_branch_locus(square_pencil(), 3, o);
    CHECK(a.poly() == b.poly());
}
